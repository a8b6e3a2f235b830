#pragma once

#include <cstddef>
#include <string>

#include "niklab/basis.hpp"

namespace niklab {

// Lebesgue exponent: a finite p >= 1 or the sup norm. Stored as a double
// with +infinity marking the sup norm.
class NormSpec {
 public:
  explicit NormSpec(double p);
  static NormSpec sup();

  double p() const { return p_; }
  bool is_sup() const;
  // True for even integer p >= 4 (p = 2 dispatches to Parseval first).
  bool is_even_integer() const;

  friend bool operator==(const NormSpec& a, const NormSpec& b) {
    return a.p_ == b.p_;
  }

 private:
  double p_;
};

std::string to_string(const NormSpec& spec);

struct QuadConfig {
  int oversample = 16;
  double rel_tol = 1e-9;
  int max_doublings = 6;
};

void validate(const QuadConfig& cfg);

enum class NormMethod { Parseval, ExactRectangle, AdaptiveRectangle, GridMaxRefined };

std::string to_string(NormMethod method);

struct NormValue {
  double value = 0.0;
  double error_estimate = 0.0;
  NormMethod method = NormMethod::Parseval;
};

// Euclidean norm of the coefficient vector; equals the L2 norm for every
// basis kind here since all three are orthonormal.
double norm_l2_parseval(const TrigPoly& poly);

// Grid maximum of |T| on max(oversample*(2n+1), 64) points per axis,
// polished by golden-section search along each axis (local tolerance 1e-12).
// error_estimate reports the gain of the polish over the raw grid maximum.
NormValue sup_norm(const TrigPoly& poly, const QuadConfig& cfg = {});

// L_p norm for the normalized measure on T^d.
//   p = 2            Parseval, error 0
//   p even integer   rectangle rule on p*n+1 points per axis (exact), error 0
//   other finite p   rectangle rule from oversample*(2n+1) points per axis,
//                    doubling until the successive relative change drops
//                    below rel_tol or max_doublings is spent; the last
//                    change is reported as error_estimate (a value still
//                    above rel_tol is the convergence warning, not an error)
//   p = infinity     sup_norm
NormValue norm(const TrigPoly& poly, const NormSpec& spec,
               const QuadConfig& cfg = {});

// Plain rectangle-rule L_p value at a fixed resolution; the building block
// of the exact and adaptive paths, exposed for cross-checks.
double lp_norm_rectangle(const TrigPoly& poly, double p, int points_per_axis);

// Deterministic blocked pairwise reduction. Exact for 2^k identical values,
// which keeps norms of constant polynomials free of rounding.
double pairwise_sum(const double* data, std::ptrdiff_t count);

}  // namespace niklab
