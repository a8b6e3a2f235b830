#include "niklab/estimators.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "niklab/oracles.hpp"
#include "niklab/poly.hpp"

namespace niklab {

namespace {

constexpr double kDegenerateNorm = 1e-300;

struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double get() const { return sum + carry; }
};

struct Moments {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t count = 0;
};

// Fixed-order mean and standard error over the accepted entries.
Moments aggregate(const std::vector<double>& values,
                  const std::vector<char>& accepted) {
  CompensatedSum sum;
  std::int64_t count = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!accepted[i]) continue;
    sum.add(values[i]);
    ++count;
  }
  Moments m;
  m.count = count;
  if (count == 0) return m;
  m.mean = sum.get() / static_cast<double>(count);
  if (count < 2) return m;
  CompensatedSum ssq;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!accepted[i]) continue;
    const double dev = values[i] - m.mean;
    ssq.add(dev * dev);
  }
  const double variance = ssq.get() / static_cast<double>(count - 1);
  m.std_error = std::sqrt(variance / static_cast<double>(count));
  return m;
}

int resolve_workers(int workers, std::int64_t samples) {
  int w = workers > 0 ? workers
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;
  if (samples < w) w = static_cast<int>(samples);
  return w;
}

// Runs fn(i) for i in [0, samples) across workers. fn must only touch
// per-index state; results are deterministic regardless of scheduling.
template <typename Fn>
void for_each_sample(std::int64_t samples, int workers, Fn&& fn) {
  const int w = resolve_workers(workers, samples);
  if (w <= 1) {
    for (std::int64_t i = 0; i < samples; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    std::int64_t i;
    while (!failed.load(std::memory_order_relaxed) &&
           (i = next.fetch_add(1)) < samples) {
      try {
        fn(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(w));
  for (int t = 0; t < w; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double pow_checked(double base, double exponent) {
  if (exponent == 1.0) return base;
  return std::pow(base, exponent);
}

}  // namespace

std::string statistic_name(const Statistic& stat) {
  if (std::holds_alternative<NikolskiiStat>(stat)) return "nikolskii";
  if (std::holds_alternative<MomentRatioStat>(stat)) return "moment_ratio";
  if (std::holds_alternative<NormMomentStat>(stat)) return "norm_moment";
  return "recip_sup_moment";
}

std::vector<NormSpec> required_norms(const Statistic& stat) {
  std::vector<NormSpec> specs;
  auto push = [&specs](const NormSpec& s) {
    for (const auto& have : specs)
      if (have == s) return;
    specs.push_back(s);
  };
  if (const auto* s = std::get_if<NikolskiiStat>(&stat)) {
    push(s->p);
    push(s->q);
  } else if (const auto* s = std::get_if<MomentRatioStat>(&stat)) {
    push(s->q);
    push(NormSpec(2.0));
  } else if (const auto* s = std::get_if<NormMomentStat>(&stat)) {
    push(s->q);
  } else {
    push(NormSpec::sup());
  }
  return specs;
}

double homogeneity_degree(const Statistic& stat) {
  if (std::holds_alternative<NikolskiiStat>(stat)) return 0.0;
  if (const auto* s = std::get_if<MomentRatioStat>(&stat))
    return static_cast<double>(s->k - s->l);
  if (const auto* s = std::get_if<NormMomentStat>(&stat)) return s->s;
  return -std::get<RecipSupMomentStat>(stat).r;
}

void validate(const EstimatorTask& task) {
  validate(task.basis);
  validate(task.random);
  validate(task.quad);
  if (task.samples < 2)
    throw std::domain_error("estimator needs at least 2 samples");
  if (const auto* s = std::get_if<MomentRatioStat>(&task.statistic)) {
    if (s->k < 1 || s->l < 1)
      throw std::domain_error("moment_ratio needs k, l >= 1");
    if (s->l >= s->k + basis_size(task.basis))
      throw std::domain_error("moment_ratio requires l < k + N");
  } else if (const auto* s = std::get_if<RecipSupMomentStat>(&task.statistic)) {
    if (!(s->r > 0.0))
      throw std::domain_error("recip_sup_moment requires r > 0");
  } else if (const auto* s = std::get_if<NormMomentStat>(&task.statistic)) {
    if (std::isnan(s->s)) throw std::domain_error("norm_moment order is NaN");
  }
}

MCEstimate run_estimator(const EstimatorTask& task, int workers) {
  validate(task);
  const std::int64_t n = basis_size(task.basis);
  const std::vector<NormSpec> needed = required_norms(task.statistic);
  const double degree = homogeneity_degree(task.statistic);
  const double scale = task.random.law == RandomSpec::Law::Gaussian
                           ? std::pow(task.random.sigma, degree)
                           : 1.0;

  std::vector<double> values(static_cast<size_t>(task.samples), 0.0);
  std::vector<char> accepted(static_cast<size_t>(task.samples), 0);

  if (needed.size() > 8)
    throw std::logic_error("statistic requires too many norms");
  for_each_sample(task.samples, workers, [&](std::int64_t i) {
    const StreamHandle stream =
        derive_stream(task.random.seed, static_cast<std::uint64_t>(i));
    const TrigPoly poly = make_poly(
        task.basis, sample_unit_coeffs(stream, n, task.random.law));
    double norm_value[8];
    for (size_t j = 0; j < needed.size(); ++j) {
      norm_value[j] = norm(poly, needed[j], task.quad).value;
      if (norm_value[j] < kDegenerateNorm) return;  // rejected
    }
    auto lookup = [&](const NormSpec& spec) {
      for (size_t j = 0; j < needed.size(); ++j)
        if (needed[j] == spec) return norm_value[j];
      throw std::logic_error("norm lookup miss");
    };
    double stat_value = 0.0;
    if (const auto* s = std::get_if<NikolskiiStat>(&task.statistic)) {
      stat_value = lookup(s->q) / lookup(s->p);
    } else if (const auto* s = std::get_if<MomentRatioStat>(&task.statistic)) {
      stat_value = pow_checked(lookup(s->q), s->k) /
                   pow_checked(lookup(NormSpec(2.0)), s->l);
    } else if (const auto* s = std::get_if<NormMomentStat>(&task.statistic)) {
      stat_value = pow_checked(lookup(s->q), s->s);
    } else {
      const auto& recip = std::get<RecipSupMomentStat>(task.statistic);
      stat_value = pow_checked(lookup(NormSpec::sup()), -recip.r);
    }
    values[static_cast<size_t>(i)] = scale == 1.0 ? stat_value : scale * stat_value;
    accepted[static_cast<size_t>(i)] = 1;
  });

  const Moments m = aggregate(values, accepted);
  if (m.count == 0)
    throw std::runtime_error("all draws rejected as degenerate");
  MCEstimate est;
  est.mean = m.mean;
  est.std_error = m.std_error;
  est.ci_lo = m.mean - 1.96 * m.std_error;
  est.ci_hi = m.mean + 1.96 * m.std_error;
  est.samples = m.count;
  est.seed = task.random.seed;
  est.rejected = task.samples - m.count;
  return est;
}

namespace {

// Shared implementation for the two factor identities. Per sample it forms
// lhs = num^k / den^l and rhs = factor * base, where base is num^k for the
// mixed moment and den^(-l) for the reciprocal one.
IdentityReport identity_report(const NormSpec& outer, int k, int l,
                               const BasisSpec& basis, std::int64_t samples,
                               std::uint64_t seed, const QuadConfig& quad,
                               int workers, bool reciprocal) {
  validate(basis);
  validate(quad);
  if (samples < 2) throw std::domain_error("identity check needs >= 2 samples");
  const std::int64_t n = basis_size(basis);
  const double factor = reciprocal ? recip_moment_factor(k, l, n).value
                                   : moment_ratio_factor(k, l, n).value;

  IdentityReport report;
  report.samples = samples;
  report.seed = seed;

  if (outer.p() == 2.0) {
    // Degenerate case: the outer norm and the L2 norm are the same random
    // variable, so both expectations are chi moments known in closed form.
    report.closed_form = true;
    report.lhs = chi_moment(n, static_cast<double>(k - l)).value;
    report.rhs = reciprocal
                     ? factor * chi_moment(n, static_cast<double>(-l)).value
                     : factor * chi_moment(n, static_cast<double>(k)).value;
    report.diff = report.lhs - report.rhs;
    report.pass = std::abs(report.diff) <=
                  1e-10 * std::max(std::abs(report.lhs), std::abs(report.rhs));
    return report;
  }

  std::vector<double> lhs(static_cast<size_t>(samples), 0.0);
  std::vector<double> rhs(static_cast<size_t>(samples), 0.0);
  std::vector<double> diff(static_cast<size_t>(samples), 0.0);
  std::vector<char> accepted(static_cast<size_t>(samples), 0);

  for_each_sample(samples, workers, [&](std::int64_t i) {
    const StreamHandle stream = derive_stream(seed, static_cast<std::uint64_t>(i));
    const TrigPoly poly =
        make_poly(basis, sample_unit_coeffs(stream, n, RandomSpec::Law::Gaussian));
    const double outer_norm = norm(poly, outer, quad).value;
    const double l2 = norm_l2_parseval(poly);
    if (outer_norm < kDegenerateNorm || l2 < kDegenerateNorm) return;
    const size_t idx = static_cast<size_t>(i);
    if (reciprocal) {
      lhs[idx] = std::pow(l2, k) / std::pow(outer_norm, l);
      rhs[idx] = factor * std::pow(outer_norm, -l);
    } else {
      lhs[idx] = std::pow(outer_norm, k) / std::pow(l2, l);
      rhs[idx] = factor * std::pow(outer_norm, k);
    }
    diff[idx] = lhs[idx] - rhs[idx];
    accepted[idx] = 1;
  });

  const Moments lhs_m = aggregate(lhs, accepted);
  if (lhs_m.count == 0)
    throw std::runtime_error("all draws rejected as degenerate");
  const Moments rhs_m = aggregate(rhs, accepted);
  const Moments diff_m = aggregate(diff, accepted);
  report.lhs = lhs_m.mean;
  report.rhs = rhs_m.mean;
  report.lhs_se = lhs_m.std_error;
  report.rhs_se = rhs_m.std_error;
  report.diff = diff_m.mean;
  report.diff_se = diff_m.std_error;
  report.samples = lhs_m.count;
  report.rejected = samples - lhs_m.count;
  report.pass = std::abs(diff_m.mean) <= 3.0 * diff_m.std_error;
  return report;
}

}  // namespace

IdentityReport verify_moment_ratio_identity(const NormSpec& q, int k, int l,
                                            const BasisSpec& basis,
                                            std::int64_t samples,
                                            std::uint64_t seed,
                                            const QuadConfig& quad,
                                            int workers) {
  if (q.is_sup())
    throw std::domain_error("moment ratio identity needs finite q");
  return identity_report(q, k, l, basis, samples, seed, quad, workers, false);
}

IdentityReport verify_recip_moment_identity(const NormSpec& p, int k, int l,
                                            const BasisSpec& basis,
                                            std::int64_t samples,
                                            std::uint64_t seed,
                                            const QuadConfig& quad,
                                            int workers) {
  return identity_report(p, k, l, basis, samples, seed, quad, workers, true);
}

SigmaInvarianceReport verify_sigma_invariance(
    const NormSpec& p, const NormSpec& q, const BasisSpec& basis,
    const std::vector<double>& sigmas, std::int64_t samples,
    std::uint64_t seed, const QuadConfig& quad, RandomSpec::Law law,
    int workers) {
  if (sigmas.empty()) throw std::domain_error("need at least one sigma");
  SigmaInvarianceReport report;
  report.sigmas = sigmas;
  for (double sigma : sigmas) {
    EstimatorTask task;
    task.basis = basis;
    task.random = RandomSpec{law, sigma, seed};
    task.statistic = NikolskiiStat{p, q};
    task.samples = samples;
    task.quad = quad;
    report.estimates.push_back(run_estimator(task, workers));
  }
  report.identical = true;
  const MCEstimate& first = report.estimates.front();
  for (const MCEstimate& est : report.estimates) {
    report.identical = report.identical && est.mean == first.mean &&
                       est.std_error == first.std_error &&
                       est.ci_lo == first.ci_lo && est.ci_hi == first.ci_hi &&
                       est.samples == first.samples &&
                       est.rejected == first.rejected;
  }
  return report;
}

}  // namespace niklab
