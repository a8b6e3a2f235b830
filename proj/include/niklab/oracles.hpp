#pragma once

#include <cstdint>
#include <optional>

namespace niklab {

// A closed-form quantity, optionally with its natural log. Gamma-function
// ratios are computed in log space throughout; value = exp(log_scale) may
// overflow to infinity, in which case only log_scale is meaningful.
struct OracleValue {
  double value = 0.0;
  std::optional<double> log_scale;
};

// C(q) = pi^(-1/(2q)) * 2^(1/2) * Gamma((q+1)/2)^(1/q), the q-th absolute
// moment of a standard normal variate raised to 1/q. Requires finite q >= 1.
double c_q(double q);

// (sqrt 2)^(-l) * Gamma((k-l+N)/2) / Gamma((k+N)/2) for l < k+N. Multiplying
// the k-th moment of a norm by this factor converts it into the mixed
// moment with an l-th power of the L2 norm in the denominator.
OracleValue moment_ratio_factor(int k, int l, std::int64_t n);

// (sqrt 2)^k * Gamma((k-l+N)/2) / Gamma((N-l)/2) for l < N; the analogous
// factor for reciprocal moments.
OracleValue recip_moment_factor(int k, int l, std::int64_t n);

// k-th moment of the chi distribution with N degrees of freedom:
// 2^(k/2) * Gamma((N+k)/2) / Gamma(N/2), for k > -N.
OracleValue chi_moment(std::int64_t n, double k);

// E ||f||_q^q = C(q)^q * N^(q/2) for the real orthonormal kinds, whose
// pointwise basis square-sum is identically N.
double expected_qq_norm(double q, std::int64_t n);

// Two-sided standard normal tail at t > 0: Mills-ratio bounds and the
// erfc-exact value. lower <= exact <= upper holds for t > 1.
struct GaussianTail {
  double lower = 0.0;
  double upper = 0.0;
  double exact = 0.0;
};

GaussianTail gaussian_tail(double t);

// Gamma(x+1) e^x / (sqrt(2 pi) x^(x+1/2)); tends to 1 as x grows.
double stirling_ratio_check(double x);

}  // namespace niklab
