#include "niklab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "niklab/poly.hpp"

namespace niklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pairwise_block(const double* data, std::ptrdiff_t count) {
  // Balanced in-place halving; exact when count is a power of two and all
  // entries are equal.
  double buf[64];
  std::copy(data, data + count, buf);
  std::ptrdiff_t len = count;
  while (len > 1) {
    const std::ptrdiff_t half = len / 2;
    for (std::ptrdiff_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (len % 2 != 0) {
      buf[half] = buf[len - 1];
      len = half + 1;
    } else {
      len = half;
    }
  }
  return buf[0];
}

// |v|^p elementwise with multiply chains for small integer p.
Eigen::ArrayXd abs_pow(const Eigen::ArrayXd& a, double p) {
  if (p == 1.0) return a.abs();
  if (p == 2.0) return a.square();
  if (p == 3.0) return a.abs().cube();
  if (p == 4.0) return a.square().square();
  if (p == std::floor(p) && p > 0.0 && p <= 16.0) {
    auto n = static_cast<int>(p);
    Eigen::ArrayXd acc = Eigen::ArrayXd::Ones(a.size());
    Eigen::ArrayXd base = a.abs();
    while (n > 0) {
      if (n & 1) acc *= base;
      n >>= 1;
      if (n > 0) base = base.square();
    }
    return acc;
  }
  return a.abs().pow(p);
}

std::int64_t decode_axis(std::int64_t flat, int axis, int dims, int m) {
  // Lexicographic layout: axis 0 slowest, axis dims-1 fastest.
  std::int64_t rem = flat;
  for (int a = dims - 1; a > axis; --a) rem /= m;
  return rem % m;
}

constexpr std::int64_t kMaxQuadPoints = std::int64_t{1} << 25;

std::int64_t quad_points(int dims, std::int64_t m) {
  std::int64_t n = 1;
  for (int a = 0; a < dims; ++a) {
    if (n > kMaxQuadPoints / m) return kMaxQuadPoints + 1;
    n *= m;
  }
  return n;
}

struct GoldenResult {
  double arg = 0.0;
  double value = -kInf;
};

// Golden-section maximization of f over [lo, hi] to |hi-lo| <= tol.
template <typename F>
GoldenResult golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  GoldenResult best;
  auto consider = [&best](double x, double v) {
    if (v > best.value) best = {x, v};
  };
  consider(x1, f1);
  consider(x2, f2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    }
  }
  return best;
}

}  // namespace

NormSpec::NormSpec(double p) : p_(p) {
  if (std::isnan(p_) || p_ < 1.0)
    throw std::domain_error("norm exponent must satisfy p >= 1");
}

NormSpec NormSpec::sup() { return NormSpec(kInf); }

bool NormSpec::is_sup() const { return std::isinf(p_); }

bool NormSpec::is_even_integer() const {
  if (is_sup()) return false;
  const double r = std::round(p_);
  return p_ == r && std::fmod(r, 2.0) == 0.0;
}

std::string to_string(const NormSpec& spec) {
  if (spec.is_sup()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", spec.p());
  return buf;
}

void validate(const QuadConfig& cfg) {
  if (cfg.oversample < 1)
    throw std::invalid_argument("quadrature oversample must be >= 1");
  if (!(cfg.rel_tol > 0.0))
    throw std::invalid_argument("quadrature rel_tol must be positive");
  if (cfg.max_doublings < 0)
    throw std::invalid_argument("quadrature max_doublings must be >= 0");
}

std::string to_string(NormMethod method) {
  switch (method) {
    case NormMethod::Parseval: return "parseval";
    case NormMethod::ExactRectangle: return "exact-rectangle";
    case NormMethod::AdaptiveRectangle: return "adaptive-rectangle";
    case NormMethod::GridMaxRefined: return "grid-max-refined";
  }
  throw std::logic_error("unreachable norm method");
}

double pairwise_sum(const double* data, std::ptrdiff_t count) {
  if (count <= 0) return 0.0;
  if (count <= 64) return pairwise_block(data, count);
  const std::ptrdiff_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

double norm_l2_parseval(const TrigPoly& poly) {
  validate(poly.basis);
  return poly.coeffs.norm();
}

double lp_norm_rectangle(const TrigPoly& poly, double p, int points_per_axis) {
  if (!(p >= 1.0) || std::isinf(p))
    throw std::domain_error("rectangle rule needs a finite exponent p >= 1");
  const GridSpec grid{poly.basis.dimension, points_per_axis, 0.0};
  const std::int64_t points = grid_size(grid);
  if (points > kMaxQuadPoints)
    throw std::length_error("quadrature grid too large");
  const Eigen::ArrayXd powered = abs_pow(evaluate_abs(poly, grid), p);
  const double mean = pairwise_sum(powered.data(), powered.size()) /
                      static_cast<double>(points);
  if (p == 1.0) return mean;
  if (p == 2.0) return std::sqrt(mean);
  return std::pow(mean, 1.0 / p);
}

NormValue sup_norm(const TrigPoly& poly, const QuadConfig& cfg) {
  validate(poly.basis);
  validate(cfg);
  const int d = poly.basis.dimension;
  const int m = std::max(cfg.oversample * (2 * poly.basis.degree + 1), 64);
  const GridSpec grid{d, m, 0.0};
  const Eigen::ArrayXd vals = evaluate_abs(poly, grid);
  Eigen::Index argmax = 0;
  const double grid_max = vals.maxCoeff(&argmax);

  Eigen::VectorXd x(d);
  for (int a = 0; a < d; ++a)
    x[a] = 2.0 * std::numbers::pi * decode_axis(argmax, a, d, m) / m;

  const double h = 2.0 * std::numbers::pi / m;
  double best = grid_max;
  for (int a = 0; a < d; ++a) {
    auto along_axis = [&](double t) {
      Eigen::VectorXd y = x;
      y[a] = t;
      return abs_at_point(poly, y);
    };
    const GoldenResult r = golden_max(along_axis, x[a] - h, x[a] + h, 1e-12);
    if (r.value > best) {
      best = r.value;
      x[a] = r.arg;
    }
  }
  return NormValue{best, best - grid_max, NormMethod::GridMaxRefined};
}

NormValue norm(const TrigPoly& poly, const NormSpec& spec,
               const QuadConfig& cfg) {
  validate(poly.basis);
  validate(cfg);
  if (spec.is_sup()) return sup_norm(poly, cfg);
  const double p = spec.p();
  if (p == 2.0)
    return NormValue{norm_l2_parseval(poly), 0.0, NormMethod::Parseval};
  const int n = poly.basis.degree;
  if (spec.is_even_integer() && p < 1e6) {
    // |T|^p is a trigonometric polynomial of per-axis degree p*n, so the
    // rectangle rule with p*n+1 points per axis integrates it exactly.
    // Grids beyond the point budget fall through to the adaptive rule.
    const std::int64_t m = static_cast<std::int64_t>(p) * n + 1;
    if (quad_points(poly.basis.dimension, m) <= kMaxQuadPoints)
      return NormValue{lp_norm_rectangle(poly, p, static_cast<int>(m)), 0.0,
                       NormMethod::ExactRectangle};
  }
  int m = cfg.oversample * (2 * n + 1);
  double value = lp_norm_rectangle(poly, p, m);
  double change = kInf;
  for (int j = 0; j < cfg.max_doublings; ++j) {
    // Stop early rather than fail when a doubling would blow the point
    // budget; the unmet tolerance stays visible in error_estimate.
    if (quad_points(poly.basis.dimension, std::int64_t{2} * m) > kMaxQuadPoints)
      break;
    m *= 2;
    const double refined = lp_norm_rectangle(poly, p, m);
    change = std::abs(refined - value) /
             std::max(std::abs(refined), std::numeric_limits<double>::min());
    value = refined;
    if (change < cfg.rel_tol) break;
  }
  return NormValue{value, change, NormMethod::AdaptiveRectangle};
}

}  // namespace niklab
