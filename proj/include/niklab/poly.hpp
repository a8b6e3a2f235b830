#pragma once

#include <Eigen/Core>

#include <complex>

#include "niklab/basis.hpp"

namespace niklab {

// Grid evaluation. Values are returned flattened lexicographically in the
// grid multi-index (axis 1 slowest, axis d fastest), matching the
// coefficient layout convention.
//
// When M >= 2n+1 per axis a fast transform path is used (zero-padded FFT in
// one dimension, axis-separable matrix contraction otherwise); for coarser
// grids evaluation falls back to direct summation. Both paths agree to
// ~1e-10 max-abs; the *_direct variants expose plain summation for use as an
// independent reference.
Eigen::ArrayXd evaluate_real(const TrigPoly& poly, const GridSpec& grid);
Eigen::ArrayXcd evaluate_complex(const TrigPoly& poly, const GridSpec& grid);
Eigen::ArrayXd evaluate_real_direct(const TrigPoly& poly, const GridSpec& grid);
Eigen::ArrayXcd evaluate_complex_direct(const TrigPoly& poly, const GridSpec& grid);

// |T(x_j)| on the grid, for any basis kind.
Eigen::ArrayXd evaluate_abs(const TrigPoly& poly, const GridSpec& grid);

// Single-point evaluation (recurrence-based, O(N)); x has one angle per axis.
double evaluate_point(const TrigPoly& poly, const Eigen::VectorXd& x);
std::complex<double> evaluate_point_complex(const TrigPoly& poly,
                                            const Eigen::VectorXd& x);
double abs_at_point(const TrigPoly& poly, const Eigen::VectorXd& x);

// Sum of |phi_i(x)|^2 over the basis, computed term by term. Equals N
// identically for all three kinds; kept as an explicit sum so that the
// identity stays testable.
double christoffel_m(const BasisSpec& basis, const Eigen::VectorXd& x);

// D_n(x) = 1 + 2 sum_{k<=n} cos kx = sin((n+1/2)x) / sin(x/2). Uses the
// closed ratio, with the cosine series as fallback when |sin(x/2)| < 1e-8.
double dirichlet_kernel(int n, double x);

// Fejer kernel F_n as a Real1d polynomial: constant coefficient 1, cos k
// coefficient sqrt(2)(1 - k/(n+1)), sin coefficients 0. Nonnegative with
// unit mean; F_n(0) = n+1.
TrigPoly fejer_poly(int n);

}  // namespace niklab
