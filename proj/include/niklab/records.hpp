#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <variant>

#include "niklab/estimators.hpp"
#include "niklab/sweep.hpp"

// Machine-readable output. CSV rows follow one fixed schema; JSON mirrors
// carry the full task context and re-parse losslessly.

namespace niklab {

using Json = nlohmann::ordered_json;

// "%.17g": every double round-trips through this.
std::string g17(double value);

// Exponent tokens: a decimal or (case-insensitively) "inf".
std::string exponent_token(const NormSpec& spec);
NormSpec parse_exponent(const std::string& token);

// Seeds: decimal or 0x-prefixed hex.
std::uint64_t parse_seed(const std::string& token);

// Compact comma-free statistic descriptor, e.g. "moment_ratio(k=2;l=2)".
// The p and q CSV columns carry the exponents; statistics without one leave
// the column empty (moment_ratio reports p = 2, its fixed denominator).
std::string statistic_descriptor(const Statistic& stat);
std::string statistic_p_column(const Statistic& stat);
std::string statistic_q_column(const Statistic& stat);
Statistic statistic_from_columns(const std::string& descriptor,
                                 const std::string& p_column,
                                 const std::string& q_column);

inline constexpr char kEstimateCsvHeader[] =
    "seed,law,sigma,d,n,N,p,q,statistic,samples,rejected,mean,stderr,ci_lo,ci_hi";

// One estimator run with its full context.
struct EstimateRecord {
  EstimatorTask task;
  MCEstimate estimate;
};

std::string estimate_csv_row(const EstimateRecord& record);
// Header line plus one row, trailing newline.
std::string estimate_csv(const EstimateRecord& record);
EstimateRecord estimate_from_csv_row(const std::string& row);

Json estimate_to_json(const EstimateRecord& record);
EstimateRecord estimate_from_json(const Json& j);

Json statistic_to_json(const Statistic& stat);
Statistic statistic_from_json(const Json& j);

Json quad_to_json(const QuadConfig& cfg);
QuadConfig quad_from_json(const Json& j);

Json poly_to_json(const TrigPoly& poly);
TrigPoly poly_from_json(const Json& j);

// Sweep plans land in files; both modes share the schema.
struct DimensionMatchPlan {
  Statistic statistic = NikolskiiStat{NormSpec(1.0), NormSpec(3.0)};
  std::int64_t target_size = 81;
  std::int64_t samples = 2;
  std::uint64_t seed = 0;
  RandomSpec::Law law = RandomSpec::Law::Gaussian;
  BasisKind basis = BasisKind::RealTensor;
  QuadConfig quad{};
};

using PlanFile = std::variant<SweepPlan, DimensionMatchPlan>;

// Strict parse: unknown keys anywhere are an error.
PlanFile plan_from_json(const Json& j);
Json plan_to_json(const SweepPlan& plan);
Json plan_to_json(const DimensionMatchPlan& plan);

std::string sweep_csv(const SweepResult& result);
Json sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const Json& j);

std::string probe_csv(const ProbeResult& result);
Json probe_to_json(const ProbeResult& result);
ProbeResult probe_from_json(const Json& j);

Json dimension_match_to_json(const DimensionMatchResult& result,
                             const DimensionMatchPlan& plan);
std::string dimension_match_csv(const DimensionMatchResult& result,
                                const DimensionMatchPlan& plan);
DimensionMatchResult dimension_match_from_json(const Json& j,
                                               DimensionMatchPlan* plan = nullptr);

}  // namespace niklab
