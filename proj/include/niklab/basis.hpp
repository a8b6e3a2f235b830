#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>

namespace niklab {

// Orthonormal trigonometric bases on the torus T^d with respect to the
// normalized Lebesgue measure dx / (2*pi)^d.
//
//  Real1d              d = 1, {1, sqrt(2) cos kx, sqrt(2) sin kx : 1 <= k <= n}
//  RealTensor          d-fold tensor product of the Real1d system
//  ComplexExponential  {exp(i k.x) : |k|_inf <= n}
//
// All three have dimension N = (2n+1)^d.
enum class BasisKind { Real1d, RealTensor, ComplexExponential };

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

struct BasisSpec {
  int dimension = 1;
  int degree = 0;
  BasisKind kind = BasisKind::Real1d;
};

// Throws std::invalid_argument on d < 1, n < 0, or Real1d with d != 1.
void validate(const BasisSpec& basis);

// N = (2n+1)^d.
std::int64_t basis_size(const BasisSpec& basis);

// ComplexExponential polynomials take complex values; the real kinds do not.
inline bool is_complex(const BasisSpec& basis) {
  return basis.kind == BasisKind::ComplexExponential;
}

// A trigonometric polynomial: a coefficient vector over a fixed basis.
//
// Coefficient order (fixed, used by all serialization):
//  Real1d       index 0 is the constant, index 2k-1 the cos k coefficient,
//               index 2k the sin k coefficient, k = 1..n.
//  RealTensor   lexicographic in the per-axis indices (axis 1 slowest,
//               axis d fastest), each axis ordered as in Real1d.
//  ComplexExponential  lexicographic in the frequency multi-index
//               (k_1,...,k_d), axis 1 slowest, each k_a ascending from -n
//               to n. Coefficients are real scalars attached to exp(i k.x).
//
// Immutable after construction; treat instances as values.
struct TrigPoly {
  BasisSpec basis;
  Eigen::VectorXd coeffs;
};

// Throws std::invalid_argument if coeffs.size() != basis_size(basis).
TrigPoly make_poly(const BasisSpec& basis, const Eigen::VectorXd& coeffs);

// Equispaced product grid: x_j = offset + 2*pi*j/M per axis, j = 0..M-1.
struct GridSpec {
  int dimension = 1;
  int points_per_axis = 1;
  double offset = 0.0;
};

// Throws std::invalid_argument on d < 1, M < 1, or offset outside [0, 2*pi/M).
void validate(const GridSpec& grid);

// M^d, with overflow check.
std::int64_t grid_size(const GridSpec& grid);

// The M axis points offset + 2*pi*j/M.
Eigen::VectorXd grid_axis_points(const GridSpec& grid);

}  // namespace niklab
