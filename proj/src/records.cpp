#include "niklab/records.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace niklab {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

void expect_keys(const Json& j, std::initializer_list<const char*> allowed,
                 const char* where) {
  if (!j.is_object())
    throw std::invalid_argument(std::string(where) + " must be a JSON object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(
        allowed.begin(), allowed.end(),
        [&item](const char* key) { return item.key() == key; });
    if (!known)
      throw std::invalid_argument("unknown key '" + item.key() + "' in " +
                                  where);
  }
}

NormSpec exponent_from_json(const Json& j) {
  if (j.is_string()) return parse_exponent(j.get<std::string>());
  if (j.is_number()) return NormSpec(j.get<double>());
  throw std::invalid_argument("exponent must be a number or 'inf'");
}

Json exponent_to_json(const NormSpec& spec) {
  if (spec.is_sup()) return Json("inf");
  return Json(spec.p());
}

std::uint64_t seed_from_json(const Json& j) {
  if (j.is_string()) return parse_seed(j.get<std::string>());
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw std::invalid_argument("seed must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  throw std::invalid_argument("seed must be an integer or a 0x string");
}

std::vector<std::string> split_csv(const std::string& row) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : row) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\n' && c != '\r') {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

Json normalizer_to_json(const Normalizer& normalizer) {
  switch (normalizer.kind) {
    case Normalizer::Kind::One: return Json("one");
    case Normalizer::Kind::SqrtLogN: return Json("sqrt_log_N");
    case Normalizer::Kind::InvSqrtLogN: return Json("inv_sqrt_log_N");
    case Normalizer::Kind::NPow:
      return Json{{"kind", "N_pow"}, {"alpha", normalizer.alpha}};
    case Normalizer::Kind::NLogNPow:
      return Json{{"kind", "N_log_N_pow"}, {"alpha", normalizer.alpha}};
  }
  throw std::logic_error("unreachable normalizer kind");
}

Normalizer normalizer_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "one") return {Normalizer::Kind::One, 0.0};
    if (name == "sqrt_log_N") return {Normalizer::Kind::SqrtLogN, 0.0};
    if (name == "inv_sqrt_log_N") return {Normalizer::Kind::InvSqrtLogN, 0.0};
    throw std::invalid_argument("unknown normalizer: " + name);
  }
  expect_keys(j, {"kind", "alpha"}, "normalizer");
  const std::string name = j.at("kind").get<std::string>();
  const double alpha = j.at("alpha").get<double>();
  if (name == "N_pow") return {Normalizer::Kind::NPow, alpha};
  if (name == "N_log_N_pow") return {Normalizer::Kind::NLogNPow, alpha};
  throw std::invalid_argument("unknown normalizer kind: " + name);
}

Json estimate_fields(const MCEstimate& est) {
  return Json{{"samples", est.samples}, {"rejected", est.rejected},
              {"mean", est.mean},       {"stderr", est.std_error},
              {"ci_lo", est.ci_lo},     {"ci_hi", est.ci_hi}};
}

MCEstimate estimate_fields_from_json(const Json& j, std::uint64_t seed) {
  MCEstimate est;
  est.samples = j.at("samples").get<std::int64_t>();
  est.rejected = j.at("rejected").get<std::int64_t>();
  est.mean = j.at("mean").get<double>();
  est.std_error = j.at("stderr").get<double>();
  est.ci_lo = j.at("ci_lo").get<double>();
  est.ci_hi = j.at("ci_hi").get<double>();
  est.seed = seed;
  return est;
}

}  // namespace

std::string g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string exponent_token(const NormSpec& spec) {
  if (spec.is_sup()) return "inf";
  return g17(spec.p());
}

NormSpec parse_exponent(const std::string& token) {
  if (lower(token) == "inf") return NormSpec::sup();
  size_t consumed = 0;
  double p = 0.0;
  try {
    p = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad exponent: " + token);
  }
  if (consumed != token.size())
    throw std::invalid_argument("bad exponent: " + token);
  return NormSpec(p);
}

std::uint64_t parse_seed(const std::string& token) {
  if (token.empty()) throw std::invalid_argument("empty seed");
  const bool hex = token.size() > 2 && token[0] == '0' &&
                   (token[1] == 'x' || token[1] == 'X');
  size_t consumed = 0;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(hex ? token.substr(2) : token, &consumed, hex ? 16 : 10);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad seed: " + token);
  }
  if (consumed != (hex ? token.size() - 2 : token.size()))
    throw std::invalid_argument("bad seed: " + token);
  return seed;
}

std::string statistic_descriptor(const Statistic& stat) {
  char buf[96];
  if (std::holds_alternative<NikolskiiStat>(stat)) return "nikolskii";
  if (const auto* s = std::get_if<MomentRatioStat>(&stat)) {
    std::snprintf(buf, sizeof(buf), "moment_ratio(k=%d;l=%d)", s->k, s->l);
    return buf;
  }
  if (const auto* s = std::get_if<NormMomentStat>(&stat)) {
    std::snprintf(buf, sizeof(buf), "norm_moment(s=%.17g)", s->s);
    return buf;
  }
  const auto& s = std::get<RecipSupMomentStat>(stat);
  std::snprintf(buf, sizeof(buf), "recip_sup_moment(r=%.17g)", s.r);
  return buf;
}

std::string statistic_p_column(const Statistic& stat) {
  if (const auto* s = std::get_if<NikolskiiStat>(&stat))
    return exponent_token(s->p);
  if (std::holds_alternative<MomentRatioStat>(stat)) return "2";
  return "";
}

std::string statistic_q_column(const Statistic& stat) {
  if (const auto* s = std::get_if<NikolskiiStat>(&stat))
    return exponent_token(s->q);
  if (const auto* s = std::get_if<MomentRatioStat>(&stat))
    return exponent_token(s->q);
  if (const auto* s = std::get_if<NormMomentStat>(&stat))
    return exponent_token(s->q);
  return "inf";
}

Statistic statistic_from_columns(const std::string& descriptor,
                                 const std::string& p_column,
                                 const std::string& q_column) {
  if (descriptor == "nikolskii")
    return NikolskiiStat{parse_exponent(p_column), parse_exponent(q_column)};
  int k = 0, l = 0;
  if (std::sscanf(descriptor.c_str(), "moment_ratio(k=%d;l=%d)", &k, &l) == 2)
    return MomentRatioStat{parse_exponent(q_column), k, l};
  double value = 0.0;
  if (std::sscanf(descriptor.c_str(), "norm_moment(s=%lg)", &value) == 1)
    return NormMomentStat{parse_exponent(q_column), value};
  if (std::sscanf(descriptor.c_str(), "recip_sup_moment(r=%lg)", &value) == 1)
    return RecipSupMomentStat{value};
  throw std::invalid_argument("bad statistic descriptor: " + descriptor);
}

std::string estimate_csv_row(const EstimateRecord& record) {
  const EstimatorTask& task = record.task;
  const MCEstimate& est = record.estimate;
  std::ostringstream out;
  out << est.seed << ',' << to_string(task.random.law) << ','
      << g17(task.random.sigma) << ',' << task.basis.dimension << ','
      << task.basis.degree << ',' << basis_size(task.basis) << ','
      << statistic_p_column(task.statistic) << ','
      << statistic_q_column(task.statistic) << ','
      << statistic_descriptor(task.statistic) << ',' << est.samples << ','
      << est.rejected << ',' << g17(est.mean) << ',' << g17(est.std_error)
      << ',' << g17(est.ci_lo) << ',' << g17(est.ci_hi);
  return out.str();
}

std::string estimate_csv(const EstimateRecord& record) {
  return std::string(kEstimateCsvHeader) + "\n" + estimate_csv_row(record) +
         "\n";
}

EstimateRecord estimate_from_csv_row(const std::string& row) {
  const std::vector<std::string> f = split_csv(row);
  if (f.size() != 15)
    throw std::invalid_argument("estimate row needs 15 fields");
  EstimateRecord record;
  record.task.random.seed = parse_seed(f[0]);
  record.task.random.law = law_from_string(f[1]);
  record.task.random.sigma = std::stod(f[2]);
  record.task.basis.dimension = std::stoi(f[3]);
  record.task.basis.degree = std::stoi(f[4]);
  record.task.basis.kind = record.task.basis.dimension == 1
                               ? BasisKind::Real1d
                               : BasisKind::RealTensor;
  record.task.statistic = statistic_from_columns(f[8], f[6], f[7]);
  record.estimate.samples = std::stoll(f[9]);
  record.estimate.rejected = std::stoll(f[10]);
  record.task.samples = record.estimate.samples + record.estimate.rejected;
  record.estimate.mean = std::stod(f[11]);
  record.estimate.std_error = std::stod(f[12]);
  record.estimate.ci_lo = std::stod(f[13]);
  record.estimate.ci_hi = std::stod(f[14]);
  record.estimate.seed = record.task.random.seed;
  const std::int64_t declared = std::stoll(f[5]);
  if (declared != basis_size(record.task.basis))
    throw std::invalid_argument("N column disagrees with d and n");
  return record;
}

Json statistic_to_json(const Statistic& stat) {
  if (const auto* s = std::get_if<NikolskiiStat>(&stat))
    return Json{{"kind", "nikolskii"},
                {"p", exponent_to_json(s->p)},
                {"q", exponent_to_json(s->q)}};
  if (const auto* s = std::get_if<MomentRatioStat>(&stat))
    return Json{{"kind", "moment_ratio"},
                {"q", exponent_to_json(s->q)},
                {"k", s->k},
                {"l", s->l}};
  if (const auto* s = std::get_if<NormMomentStat>(&stat))
    return Json{{"kind", "norm_moment"},
                {"q", exponent_to_json(s->q)},
                {"s", s->s}};
  const auto& s = std::get<RecipSupMomentStat>(stat);
  return Json{{"kind", "recip_sup_moment"}, {"r", s.r}};
}

Statistic statistic_from_json(const Json& j) {
  expect_keys(j, {"kind", "p", "q", "k", "l", "s", "r"}, "statistic");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "nikolskii")
    return NikolskiiStat{exponent_from_json(j.at("p")),
                         exponent_from_json(j.at("q"))};
  if (kind == "moment_ratio")
    return MomentRatioStat{exponent_from_json(j.at("q")),
                           j.at("k").get<int>(), j.at("l").get<int>()};
  if (kind == "norm_moment")
    return NormMomentStat{exponent_from_json(j.at("q")),
                          j.at("s").get<double>()};
  if (kind == "recip_sup_moment")
    return RecipSupMomentStat{j.at("r").get<double>()};
  throw std::invalid_argument("unknown statistic kind: " + kind);
}

Json quad_to_json(const QuadConfig& cfg) {
  return Json{{"oversample", cfg.oversample},
              {"rel_tol", cfg.rel_tol},
              {"max_doublings", cfg.max_doublings}};
}

QuadConfig quad_from_json(const Json& j) {
  expect_keys(j, {"oversample", "rel_tol", "max_doublings"}, "quad");
  QuadConfig cfg;
  if (j.contains("oversample")) cfg.oversample = j.at("oversample").get<int>();
  if (j.contains("rel_tol")) cfg.rel_tol = j.at("rel_tol").get<double>();
  if (j.contains("max_doublings"))
    cfg.max_doublings = j.at("max_doublings").get<int>();
  validate(cfg);
  return cfg;
}

Json poly_to_json(const TrigPoly& poly) {
  Json coeffs = Json::array();
  for (Eigen::Index i = 0; i < poly.coeffs.size(); ++i)
    coeffs.push_back(poly.coeffs[i]);
  return Json{{"basis",
               Json{{"kind", to_string(poly.basis.kind)},
                    {"dimension", poly.basis.dimension},
                    {"degree", poly.basis.degree}}},
              {"coeffs", coeffs}};
}

TrigPoly poly_from_json(const Json& j) {
  expect_keys(j, {"basis", "coeffs"}, "polynomial");
  const Json& jb = j.at("basis");
  expect_keys(jb, {"kind", "dimension", "degree"}, "basis");
  BasisSpec basis{jb.at("dimension").get<int>(), jb.at("degree").get<int>(),
                  basis_kind_from_string(jb.at("kind").get<std::string>())};
  const Json& jc = j.at("coeffs");
  Eigen::VectorXd coeffs(jc.size());
  for (size_t i = 0; i < jc.size(); ++i)
    coeffs[static_cast<Eigen::Index>(i)] = jc.at(i).get<double>();
  return make_poly(basis, coeffs);
}

Json estimate_to_json(const EstimateRecord& record) {
  const EstimatorTask& task = record.task;
  Json j{{"seed", task.random.seed},
         {"law", to_string(task.random.law)},
         {"sigma", task.random.sigma},
         {"basis", to_string(task.basis.kind)},
         {"d", task.basis.dimension},
         {"n", task.basis.degree},
         {"N", basis_size(task.basis)},
         {"statistic", statistic_to_json(task.statistic)},
         {"quad", quad_to_json(task.quad)},
         {"samples_requested", task.samples}};
  j.update(estimate_fields(record.estimate));
  return j;
}

EstimateRecord estimate_from_json(const Json& j) {
  expect_keys(j,
              {"seed", "law", "sigma", "basis", "d", "n", "N", "statistic",
               "quad", "samples_requested", "samples", "rejected", "mean",
               "stderr", "ci_lo", "ci_hi"},
              "estimate record");
  EstimateRecord record;
  record.task.random.seed = seed_from_json(j.at("seed"));
  record.task.random.law = law_from_string(j.at("law").get<std::string>());
  record.task.random.sigma = j.at("sigma").get<double>();
  record.task.basis.kind =
      basis_kind_from_string(j.at("basis").get<std::string>());
  record.task.basis.dimension = j.at("d").get<int>();
  record.task.basis.degree = j.at("n").get<int>();
  record.task.statistic = statistic_from_json(j.at("statistic"));
  record.task.quad = quad_from_json(j.at("quad"));
  record.task.samples = j.at("samples_requested").get<std::int64_t>();
  record.estimate = estimate_fields_from_json(j, record.task.random.seed);
  if (j.at("N").get<std::int64_t>() != basis_size(record.task.basis))
    throw std::invalid_argument("N field disagrees with d and n");
  return record;
}

PlanFile plan_from_json(const Json& j) {
  expect_keys(j,
              {"mode", "statistic", "degrees", "dimensions", "basis", "law",
               "sigma", "seed", "samples", "normalizer", "quad",
               "target_size"},
              "plan");
  const std::string mode =
      j.contains("mode") ? j.at("mode").get<std::string>() : "sweep";
  if (mode == "dimension-match") {
    DimensionMatchPlan plan;
    plan.statistic = statistic_from_json(j.at("statistic"));
    plan.target_size = j.at("target_size").get<std::int64_t>();
    plan.samples = j.at("samples").get<std::int64_t>();
    if (j.contains("seed")) plan.seed = seed_from_json(j.at("seed"));
    if (j.contains("law"))
      plan.law = law_from_string(j.at("law").get<std::string>());
    if (j.contains("basis"))
      plan.basis = basis_kind_from_string(j.at("basis").get<std::string>());
    if (j.contains("quad")) plan.quad = quad_from_json(j.at("quad"));
    if (j.contains("degrees") || j.contains("dimensions") ||
        j.contains("normalizer") || j.contains("sigma"))
      throw std::invalid_argument(
          "dimension-match plans take no degrees/dimensions/normalizer/sigma");
    return plan;
  }
  if (mode != "sweep") throw std::invalid_argument("unknown plan mode: " + mode);
  if (j.contains("target_size"))
    throw std::invalid_argument("sweep plans take no target_size");
  SweepPlan plan;
  plan.statistic = statistic_from_json(j.at("statistic"));
  plan.degrees = j.at("degrees").get<std::vector<int>>();
  if (j.contains("dimensions"))
    plan.dimensions = j.at("dimensions").get<std::vector<int>>();
  if (j.contains("basis"))
    plan.basis = basis_kind_from_string(j.at("basis").get<std::string>());
  if (j.contains("law"))
    plan.law = law_from_string(j.at("law").get<std::string>());
  if (j.contains("sigma")) plan.sigma = j.at("sigma").get<double>();
  if (j.contains("seed")) plan.seed = seed_from_json(j.at("seed"));
  plan.samples = j.at("samples").get<std::int64_t>();
  if (j.contains("normalizer"))
    plan.normalizer = normalizer_from_json(j.at("normalizer"));
  if (j.contains("quad")) plan.quad = quad_from_json(j.at("quad"));
  validate(plan);
  return plan;
}

Json plan_to_json(const SweepPlan& plan) {
  Json j{{"mode", "sweep"},
         {"statistic", statistic_to_json(plan.statistic)},
         {"degrees", plan.degrees},
         {"dimensions", plan.dimensions}};
  if (plan.basis) j["basis"] = to_string(*plan.basis);
  j["law"] = to_string(plan.law);
  j["sigma"] = plan.sigma;
  j["seed"] = plan.seed;
  j["samples"] = plan.samples;
  j["normalizer"] = normalizer_to_json(plan.normalizer);
  j["quad"] = quad_to_json(plan.quad);
  return j;
}

Json plan_to_json(const DimensionMatchPlan& plan) {
  return Json{{"mode", "dimension-match"},
              {"statistic", statistic_to_json(plan.statistic)},
              {"target_size", plan.target_size},
              {"samples", plan.samples},
              {"seed", plan.seed},
              {"law", to_string(plan.law)},
              {"basis", to_string(plan.basis)},
              {"quad", quad_to_json(plan.quad)}};
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << kEstimateCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    EstimateRecord record;
    record.task.basis = sweep_basis(result.plan, row.dimension, row.degree);
    record.task.random =
        RandomSpec{result.plan.law, result.plan.sigma, result.plan.seed};
    record.task.statistic = result.plan.statistic;
    record.task.samples = result.plan.samples;
    record.task.quad = result.plan.quad;
    record.estimate = row.estimate;
    out << estimate_csv_row(record) << '\n';
  }
  return out.str();
}

namespace {

Json slope_to_json(const SlopeReport& slope) {
  return Json{{"slope", slope.slope},
              {"intercept", slope.intercept},
              {"rms_residual", slope.rms_residual},
              {"valid", slope.valid}};
}

SlopeReport slope_from_json(const Json& j) {
  expect_keys(j, {"slope", "intercept", "rms_residual", "valid"}, "slope");
  SlopeReport slope;
  slope.slope = j.at("slope").get<double>();
  slope.intercept = j.at("intercept").get<double>();
  slope.rms_residual = j.at("rms_residual").get<double>();
  slope.valid = j.at("valid").get<bool>();
  return slope;
}

}  // namespace

Json sweep_to_json(const SweepResult& result) {
  Json rows = Json::array();
  for (const SweepRow& row : result.rows) {
    Json r{{"d", row.dimension},
           {"n", row.degree},
           {"N", row.size},
           {"normalized_mean", row.normalized_mean}};
    r.update(estimate_fields(row.estimate));
    rows.push_back(r);
  }
  return Json{{"plan", plan_to_json(result.plan)},
              {"rows", rows},
              {"band",
               Json{{"min_normalized", result.band.min_normalized},
                    {"max_normalized", result.band.max_normalized},
                    {"ratio", result.band.ratio}}},
              {"slope", slope_to_json(result.slope)}};
}

SweepResult sweep_from_json(const Json& j) {
  expect_keys(j, {"plan", "rows", "band", "slope"}, "sweep result");
  SweepResult result;
  result.plan = std::get<SweepPlan>(plan_from_json(j.at("plan")));
  for (const Json& r : j.at("rows")) {
    expect_keys(r,
                {"d", "n", "N", "normalized_mean", "samples", "rejected",
                 "mean", "stderr", "ci_lo", "ci_hi"},
                "sweep row");
    SweepRow row;
    row.dimension = r.at("d").get<int>();
    row.degree = r.at("n").get<int>();
    row.size = r.at("N").get<std::int64_t>();
    row.normalized_mean = r.at("normalized_mean").get<double>();
    row.estimate = estimate_fields_from_json(r, result.plan.seed);
    result.rows.push_back(row);
  }
  const Json& band = j.at("band");
  expect_keys(band, {"min_normalized", "max_normalized", "ratio"}, "band");
  result.band.min_normalized = band.at("min_normalized").get<double>();
  result.band.max_normalized = band.at("max_normalized").get<double>();
  result.band.ratio = band.at("ratio").get<double>();
  result.slope = slope_from_json(j.at("slope"));
  return result;
}

std::string probe_csv(const ProbeResult& result) {
  std::ostringstream out;
  out << "n,N,p,q,factor\n";
  for (const ProbeRow& row : result.rows)
    out << row.degree << ',' << row.size << ',' << exponent_token(result.p)
        << ',' << exponent_token(result.q) << ',' << g17(row.factor) << '\n';
  return out.str();
}

Json probe_to_json(const ProbeResult& result) {
  Json rows = Json::array();
  for (const ProbeRow& row : result.rows)
    rows.push_back(
        Json{{"n", row.degree}, {"N", row.size}, {"factor", row.factor}});
  return Json{{"p", exponent_to_json(result.p)},
              {"q", exponent_to_json(result.q)},
              {"rows", rows},
              {"slope", slope_to_json(result.slope)}};
}

ProbeResult probe_from_json(const Json& j) {
  expect_keys(j, {"p", "q", "rows", "slope"}, "probe result");
  ProbeResult result{exponent_from_json(j.at("p")),
                     exponent_from_json(j.at("q")),
                     {},
                     slope_from_json(j.at("slope"))};
  for (const Json& r : j.at("rows")) {
    expect_keys(r, {"n", "N", "factor"}, "probe row");
    result.rows.push_back(ProbeRow{r.at("n").get<int>(),
                                   r.at("N").get<std::int64_t>(),
                                   r.at("factor").get<double>()});
  }
  return result;
}

std::string dimension_match_csv(const DimensionMatchResult& result,
                                const DimensionMatchPlan& plan) {
  std::ostringstream out;
  out << kEstimateCsvHeader << '\n';
  for (const DimensionMatchRow& row : result.rows) {
    EstimateRecord record;
    record.task.basis = BasisSpec{row.dimension, row.degree,
                                  plan.basis == BasisKind::Real1d && row.dimension > 1
                                      ? BasisKind::RealTensor
                                      : plan.basis};
    record.task.random = RandomSpec{plan.law, 1.0, plan.seed};
    record.task.statistic = plan.statistic;
    record.task.samples = plan.samples;
    record.task.quad = plan.quad;
    record.estimate = row.estimate;
    out << estimate_csv_row(record) << '\n';
  }
  return out.str();
}

Json dimension_match_to_json(const DimensionMatchResult& result,
                             const DimensionMatchPlan& plan) {
  Json rows = Json::array();
  for (const DimensionMatchRow& row : result.rows) {
    Json r{{"d", row.dimension}, {"n", row.degree}};
    r.update(estimate_fields(row.estimate));
    rows.push_back(r);
  }
  return Json{{"plan", plan_to_json(plan)},
              {"target_size", result.target_size},
              {"rows", rows},
              {"max_min_ratio", result.max_min_ratio}};
}

DimensionMatchResult dimension_match_from_json(const Json& j,
                                               DimensionMatchPlan* plan) {
  expect_keys(j, {"plan", "target_size", "rows", "max_min_ratio"},
              "dimension-match result");
  const auto parsed_plan =
      std::get<DimensionMatchPlan>(plan_from_json(j.at("plan")));
  if (plan != nullptr) *plan = parsed_plan;
  DimensionMatchResult result;
  result.target_size = j.at("target_size").get<std::int64_t>();
  for (const Json& r : j.at("rows")) {
    expect_keys(r,
                {"d", "n", "samples", "rejected", "mean", "stderr", "ci_lo",
                 "ci_hi"},
                "dimension-match row");
    DimensionMatchRow row;
    row.dimension = r.at("d").get<int>();
    row.degree = r.at("n").get<int>();
    row.estimate = estimate_fields_from_json(r, parsed_plan.seed);
    result.rows.push_back(row);
  }
  result.max_min_ratio = j.at("max_min_ratio").get<double>();
  return result;
}

}  // namespace niklab
