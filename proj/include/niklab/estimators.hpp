#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "niklab/basis.hpp"
#include "niklab/norms.hpp"
#include "niklab/random.hpp"

namespace niklab {

// Per-sample statistics. Each is positively homogeneous in the coefficient
// vector of the degree reported by homogeneity_degree(); estimates are
// computed on unit-variance draws and rescaled by sigma^degree, which makes
// scale invariance of the ratio statistics hold bit for bit.
struct NikolskiiStat {
  NormSpec p, q;  // ||T||_q / ||T||_p
};
struct MomentRatioStat {
  NormSpec q;  // ||T||_q^k / ||T||_2^l
  int k = 1, l = 1;
};
struct NormMomentStat {
  NormSpec q;  // ||T||_q^s
  double s = 1.0;
};
struct RecipSupMomentStat {
  double r = 1.0;  // ||T||_inf^(-r)
};

using Statistic = std::variant<NikolskiiStat, MomentRatioStat, NormMomentStat,
                               RecipSupMomentStat>;

std::string statistic_name(const Statistic& stat);
// Distinct exponents whose norms the statistic consumes.
std::vector<NormSpec> required_norms(const Statistic& stat);
double homogeneity_degree(const Statistic& stat);

struct EstimatorTask {
  BasisSpec basis;
  RandomSpec random;
  Statistic statistic = NikolskiiStat{NormSpec(1.0), NormSpec(2.0)};
  std::int64_t samples = 2;
  QuadConfig quad{};
};

void validate(const EstimatorTask& task);

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(samples)
  double ci_lo = 0.0;      // mean -/+ 1.96 * std_error
  double ci_hi = 0.0;
  std::int64_t samples = 0;  // accepted draws
  std::uint64_t seed = 0;
  std::int64_t rejected = 0;  // draws with a needed norm below 1e-300
};

// Monte Carlo mean of the statistic over task.samples independent draws.
// Sample i always uses derive_stream(seed, i); aggregation is compensated
// summation in fixed index order, so the result does not depend on the
// worker count. workers <= 0 selects the hardware parallelism.
MCEstimate run_estimator(const EstimatorTask& task, int workers = 0);

// Two estimates of the same expectation computed on shared draws: the mixed
// moment E(||T||_q^k / ||T||_2^l) directly, and moment_ratio_factor times
// E ||T||_q^k. For q = 2 both sides are exact chi moments, so they are
// compared in closed form (closed_form = true) instead of sampling.
struct IdentityReport {
  double lhs = 0.0, rhs = 0.0;
  double lhs_se = 0.0, rhs_se = 0.0;
  double diff = 0.0, diff_se = 0.0;
  bool pass = false;
  bool closed_form = false;
  std::int64_t samples = 0;
  std::int64_t rejected = 0;
  std::uint64_t seed = 0;
};

IdentityReport verify_moment_ratio_identity(const NormSpec& q, int k, int l,
                                            const BasisSpec& basis,
                                            std::int64_t samples,
                                            std::uint64_t seed,
                                            const QuadConfig& quad = {},
                                            int workers = 0);

// Same layout for the reciprocal-moment identity: E(||T||_2^k / ||T||_p^l)
// against recip_moment_factor times E ||T||_p^(-l).
IdentityReport verify_recip_moment_identity(const NormSpec& p, int k, int l,
                                            const BasisSpec& basis,
                                            std::int64_t samples,
                                            std::uint64_t seed,
                                            const QuadConfig& quad = {},
                                            int workers = 0);

struct SigmaInvarianceReport {
  std::vector<double> sigmas;
  std::vector<MCEstimate> estimates;
  bool identical = false;  // all estimates equal bit for bit
};

// Runs the Nikolskii estimator at each sigma with the same seed. The ratio
// statistic has homogeneity degree zero, so every field of every estimate
// must coincide exactly.
SigmaInvarianceReport verify_sigma_invariance(
    const NormSpec& p, const NormSpec& q, const BasisSpec& basis,
    const std::vector<double>& sigmas, std::int64_t samples,
    std::uint64_t seed, const QuadConfig& quad = {},
    RandomSpec::Law law = RandomSpec::Law::Gaussian, int workers = 0);

}  // namespace niklab
