#include "niklab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "niklab/poly.hpp"

namespace niklab {

namespace {

void check_ascending(const std::vector<int>& values, const char* what) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0)
      throw std::domain_error(std::string(what) + " must be non-negative");
    if (i > 0 && values[i] <= values[i - 1])
      throw std::domain_error(std::string(what) + " must be strictly ascending");
  }
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::int64_t>::max() / base) return -1;
    out *= base;
  }
  return out;
}

}  // namespace

double Normalizer::operator()(double n) const {
  switch (kind) {
    case Kind::One: return 1.0;
    case Kind::SqrtLogN:
    case Kind::InvSqrtLogN: {
      if (n < 2.0)
        throw std::domain_error("log normalizer needs N >= 2");
      const double root = std::sqrt(std::log(n));
      return kind == Kind::SqrtLogN ? root : 1.0 / root;
    }
    case Kind::NPow: return std::pow(n, alpha);
    case Kind::NLogNPow:
      if (n < 2.0)
        throw std::domain_error("log normalizer needs N >= 2");
      return std::pow(n * std::log(n), alpha);
  }
  throw std::logic_error("unreachable normalizer kind");
}

std::string to_string(const Normalizer& normalizer) {
  char buf[64];
  switch (normalizer.kind) {
    case Normalizer::Kind::One: return "one";
    case Normalizer::Kind::SqrtLogN: return "sqrt_log_N";
    case Normalizer::Kind::InvSqrtLogN: return "inv_sqrt_log_N";
    case Normalizer::Kind::NPow:
      std::snprintf(buf, sizeof(buf), "N_pow(%.17g)", normalizer.alpha);
      return buf;
    case Normalizer::Kind::NLogNPow:
      std::snprintf(buf, sizeof(buf), "N_log_N_pow(%.17g)", normalizer.alpha);
      return buf;
  }
  throw std::logic_error("unreachable normalizer kind");
}

void validate(const SweepPlan& plan) {
  if (plan.degrees.size() < 3)
    throw std::domain_error("sweep needs >= 3 degrees for a rate fit");
  check_ascending(plan.degrees, "degrees");
  if (plan.dimensions.empty())
    throw std::domain_error("sweep needs at least one dimension");
  for (int d : plan.dimensions)
    if (d < 1) throw std::domain_error("dimensions must be >= 1");
  check_ascending(plan.dimensions, "dimensions");
  if (plan.samples < 2) throw std::domain_error("sweep needs >= 2 samples");
  validate(plan.quad);
  if (!(plan.sigma > 0.0)) throw std::domain_error("sigma must be positive");
}

BasisSpec sweep_basis(const SweepPlan& plan, int dimension, int degree) {
  BasisKind kind = plan.basis.value_or(
      dimension == 1 ? BasisKind::Real1d : BasisKind::RealTensor);
  return BasisSpec{dimension, degree, kind};
}

SlopeReport fit_loglog(const std::vector<double>& x,
                       const std::vector<double>& y) {
  SlopeReport report;
  if (x.size() != y.size() || x.size() < 3) return report;
  const auto count = static_cast<double>(x.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
  }
  if (sxx == 0.0) return report;
  report.slope = sxy / sxx;
  report.intercept = mean_y - report.slope * mean_x;
  double ss_res = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double fitted = report.intercept + report.slope * x[i];
    ss_res += (y[i] - fitted) * (y[i] - fitted);
  }
  report.rms_residual = std::sqrt(ss_res / count);
  report.valid = true;
  return report;
}

SweepResult run_sweep(const SweepPlan& plan, int workers) {
  validate(plan);
  SweepResult result;
  result.plan = plan;
  for (int d : plan.dimensions) {
    for (int n : plan.degrees) {
      EstimatorTask task;
      task.basis = sweep_basis(plan, d, n);
      task.random = RandomSpec{plan.law, plan.sigma, plan.seed};
      task.statistic = plan.statistic;
      task.samples = plan.samples;
      task.quad = plan.quad;
      SweepRow row;
      row.dimension = d;
      row.degree = n;
      row.size = basis_size(task.basis);
      try {
        row.estimate = run_estimator(task, workers);
      } catch (const std::exception& e) {
        char ctx[64];
        std::snprintf(ctx, sizeof(ctx), "sweep point (d=%d, n=%d): ", d, n);
        throw std::runtime_error(ctx + std::string(e.what()));
      }
      row.normalized_mean =
          row.estimate.mean / plan.normalizer(static_cast<double>(row.size));
      result.rows.push_back(row);
    }
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     return a.size < b.size;
                   });

  result.band.min_normalized = std::numeric_limits<double>::infinity();
  result.band.max_normalized = -std::numeric_limits<double>::infinity();
  std::vector<double> log_n, log_mean;
  bool log_ok = true;
  for (const SweepRow& row : result.rows) {
    result.band.min_normalized =
        std::min(result.band.min_normalized, row.normalized_mean);
    result.band.max_normalized =
        std::max(result.band.max_normalized, row.normalized_mean);
    if (row.estimate.mean > 0.0) {
      log_n.push_back(std::log(static_cast<double>(row.size)));
      log_mean.push_back(std::log(row.estimate.mean));
    } else {
      log_ok = false;
    }
  }
  result.band.ratio = result.band.min_normalized > 0.0
                          ? result.band.max_normalized / result.band.min_normalized
                          : std::numeric_limits<double>::infinity();
  if (log_ok) result.slope = fit_loglog(log_n, log_mean);
  return result;
}

ProbeResult worst_case_probe(const NormSpec& p, const NormSpec& q,
                             const std::vector<int>& degrees,
                             const QuadConfig& quad) {
  if (degrees.empty()) throw std::domain_error("probe needs degrees");
  check_ascending(degrees, "degrees");
  validate(quad);
  ProbeResult result{p, q, {}, {}};
  std::vector<double> log_n, log_factor;
  for (int n : degrees) {
    const TrigPoly kernel = fejer_poly(n);
    const double denom = norm(kernel, p, quad).value;
    const double numer = norm(kernel, q, quad).value;
    ProbeRow row{n, 2 * static_cast<std::int64_t>(n) + 1, numer / denom};
    result.rows.push_back(row);
    if (row.factor > 0.0) {
      log_n.push_back(std::log(static_cast<double>(row.size)));
      log_factor.push_back(std::log(row.factor));
    }
  }
  result.slope = fit_loglog(log_n, log_factor);
  return result;
}

std::vector<std::pair<int, int>> matched_factorizations(std::int64_t n_target) {
  if (n_target < 1) throw std::domain_error("target size must be >= 1");
  std::vector<std::pair<int, int>> out;
  for (int d = 1; d <= 62; ++d) {
    const double root = std::pow(static_cast<double>(n_target), 1.0 / d);
    const auto guess = static_cast<std::int64_t>(std::llround(root));
    for (std::int64_t per_axis = std::max<std::int64_t>(guess - 1, 1);
         per_axis <= guess + 1; ++per_axis) {
      if (per_axis % 2 == 0) continue;
      if (per_axis == 1 && d > 1) continue;  // 1^d duplicates d = 1
      if (ipow(per_axis, d) == n_target) {
        out.emplace_back(d, static_cast<int>((per_axis - 1) / 2));
        break;
      }
    }
    if (ipow(3, d + 1) > n_target && ipow(3, d + 1) != -1) break;
  }
  return out;
}

DimensionMatchResult dimension_match(const Statistic& statistic,
                                     std::int64_t n_target,
                                     std::int64_t samples, std::uint64_t seed,
                                     RandomSpec::Law law, BasisKind kind,
                                     const QuadConfig& quad, int workers) {
  const auto factorizations = matched_factorizations(n_target);
  if (factorizations.size() < 2)
    throw std::domain_error(
        "target size admits fewer than two (d, n) factorizations");
  DimensionMatchResult result;
  result.target_size = n_target;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& [d, n] : factorizations) {
    EstimatorTask task;
    task.basis = BasisSpec{d, n, kind == BasisKind::Real1d && d > 1
                                     ? BasisKind::RealTensor
                                     : kind};
    task.random = RandomSpec{law, 1.0, seed};
    task.statistic = statistic;
    task.samples = samples;
    task.quad = quad;
    DimensionMatchRow row;
    row.dimension = d;
    row.degree = n;
    row.estimate = run_estimator(task, workers);
    lo = std::min(lo, row.estimate.mean);
    hi = std::max(hi, row.estimate.mean);
    result.rows.push_back(row);
  }
  result.max_min_ratio =
      lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace niklab
