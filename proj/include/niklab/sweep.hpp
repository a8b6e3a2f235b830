#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "niklab/estimators.hpp"

namespace niklab {

// Normalization applied to sweep means before the band check. Kinds with a
// logarithm require N >= 2.
struct Normalizer {
  enum class Kind { One, SqrtLogN, InvSqrtLogN, NPow, NLogNPow };
  Kind kind = Kind::One;
  double alpha = 0.0;  // exponent for NPow / NLogNPow

  double operator()(double n) const;
};

std::string to_string(const Normalizer& normalizer);

struct SweepPlan {
  Statistic statistic = NikolskiiStat{NormSpec(1.0), NormSpec(3.0)};
  std::vector<int> degrees;
  std::vector<int> dimensions = {1};
  std::optional<BasisKind> basis;  // default real-1d for d=1, real-tensor else
  RandomSpec::Law law = RandomSpec::Law::Gaussian;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  std::int64_t samples = 2;
  Normalizer normalizer{};
  QuadConfig quad{};
};

// degrees must be ascending and hold at least 3 entries (rate fits need 3
// points); dimensions ascending and positive.
void validate(const SweepPlan& plan);

BasisSpec sweep_basis(const SweepPlan& plan, int dimension, int degree);

struct SweepRow {
  int dimension = 1;
  int degree = 0;
  std::int64_t size = 0;
  MCEstimate estimate;
  double normalized_mean = 0.0;
};

struct BandReport {
  double min_normalized = 0.0;
  double max_normalized = 0.0;
  double ratio = 0.0;  // max / min
};

struct SlopeReport {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  bool valid = false;
};

// Ordinary least squares of y against x; valid with >= 3 points.
SlopeReport fit_loglog(const std::vector<double>& x,
                       const std::vector<double>& y);

struct SweepResult {
  SweepPlan plan;
  std::vector<SweepRow> rows;  // sorted by N
  BandReport band;             // of normalized means
  SlopeReport slope;           // of ln mean against ln N
};

SweepResult run_sweep(const SweepPlan& plan, int workers = 0);

// Deterministic worst-case probe: the Nikolskii factor of the Fejer kernel,
// whose (p, q) factor realizes the polynomial-in-n worst-case growth that
// random coefficients average away.
struct ProbeRow {
  int degree = 0;
  std::int64_t size = 0;
  double factor = 0.0;
};

struct ProbeResult {
  NormSpec p, q;
  std::vector<ProbeRow> rows;
  SlopeReport slope;  // ln factor against ln N
};

ProbeResult worst_case_probe(const NormSpec& p, const NormSpec& q,
                             const std::vector<int>& degrees,
                             const QuadConfig& quad = {});

// Runs one statistic at a fixed N across every (d, n) with (2n+1)^d = N.
// Requires at least two factorizations (e.g. N = 81 gives d = 1, 2, 4).
struct DimensionMatchRow {
  int dimension = 1;
  int degree = 0;
  MCEstimate estimate;
};

struct DimensionMatchResult {
  std::int64_t target_size = 0;
  std::vector<DimensionMatchRow> rows;
  double max_min_ratio = 0.0;
};

std::vector<std::pair<int, int>> matched_factorizations(std::int64_t n_target);

DimensionMatchResult dimension_match(
    const Statistic& statistic, std::int64_t n_target, std::int64_t samples,
    std::uint64_t seed, RandomSpec::Law law = RandomSpec::Law::Gaussian,
    BasisKind kind = BasisKind::RealTensor, const QuadConfig& quad = {},
    int workers = 0);

}  // namespace niklab
