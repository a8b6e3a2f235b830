#include "niklab/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace niklab {

namespace {

OracleValue from_log(double log_scale) {
  return OracleValue{std::exp(log_scale), log_scale};
}

}  // namespace

double c_q(double q) {
  if (std::isnan(q) || std::isinf(q) || q < 1.0)
    throw std::domain_error("c_q requires finite q >= 1");
  const double log_value = -std::log(std::numbers::pi) / (2.0 * q) +
                           0.5 * std::log(2.0) +
                           std::lgamma((q + 1.0) / 2.0) / q;
  return std::exp(log_value);
}

OracleValue moment_ratio_factor(int k, int l, std::int64_t n) {
  if (k < 1 || l < 1) throw std::domain_error("moments need k, l >= 1");
  if (n < 1) throw std::domain_error("basis size must be >= 1");
  if (l >= k + n)
    throw std::domain_error("moment_ratio_factor requires l < k + N");
  const double log_scale = -0.5 * l * std::log(2.0) +
                           std::lgamma(0.5 * (k - l + n)) -
                           std::lgamma(0.5 * (k + n));
  return from_log(log_scale);
}

OracleValue recip_moment_factor(int k, int l, std::int64_t n) {
  if (k < 0 || l < 1) throw std::domain_error("moments need k >= 0, l >= 1");
  if (n < 1) throw std::domain_error("basis size must be >= 1");
  if (l >= n) throw std::domain_error("recip_moment_factor requires l < N");
  const double log_scale = 0.5 * k * std::log(2.0) +
                           std::lgamma(0.5 * (k - l + n)) -
                           std::lgamma(0.5 * (n - l));
  return from_log(log_scale);
}

OracleValue chi_moment(std::int64_t n, double k) {
  if (n < 1) throw std::domain_error("basis size must be >= 1");
  if (std::isnan(k) || k <= -static_cast<double>(n))
    throw std::domain_error("chi_moment requires k > -N");
  const double log_scale = 0.5 * k * std::log(2.0) +
                           std::lgamma(0.5 * (n + k)) -
                           std::lgamma(0.5 * n);
  return from_log(log_scale);
}

double expected_qq_norm(double q, std::int64_t n) {
  if (std::isnan(q) || std::isinf(q) || q < 1.0)
    throw std::domain_error("expected_qq_norm requires finite q >= 1");
  if (n < 1) throw std::domain_error("basis size must be >= 1");
  // C(q)^q * N^(q/2), assembled in log space.
  const double log_value = -0.5 * std::log(std::numbers::pi) +
                           0.5 * q * std::log(2.0) +
                           std::lgamma((q + 1.0) / 2.0) +
                           0.5 * q * std::log(static_cast<double>(n));
  return std::exp(log_value);
}

GaussianTail gaussian_tail(double t) {
  if (!(t > 0.0)) throw std::domain_error("gaussian_tail requires t > 0");
  const double density_scale =
      std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * t * t);
  GaussianTail tail;
  tail.lower = density_scale * (1.0 / t - 1.0 / (t * t * t));
  tail.upper = density_scale / t;
  tail.exact = std::erfc(t / std::numbers::sqrt2);
  return tail;
}

double stirling_ratio_check(double x) {
  if (!(x > 0.0)) throw std::domain_error("stirling ratio requires x > 0");
  const double log_value = std::lgamma(x + 1.0) + x -
                           0.5 * std::log(2.0 * std::numbers::pi) -
                           (x + 0.5) * std::log(x);
  return std::exp(log_value);
}

}  // namespace niklab
