// Command-line front end: estimator runs, degree sweeps, worst-case probes,
// closed-form oracle evaluation, and the self-check suites.
//
// Exit codes: 0 success, 1 runtime or domain failure, 2 usage error.
// stdout carries machine-readable records only; diagnostics go to stderr.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "niklab/estimators.hpp"
#include "niklab/oracles.hpp"
#include "niklab/poly.hpp"
#include "niklab/records.hpp"
#include "niklab/sweep.hpp"

namespace {

using namespace niklab;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void write_file(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << payload;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open plan file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& payload, const std::string& output_path) {
  std::fputs(payload.c_str(), stdout);
  if (!output_path.empty()) write_file(output_path, payload);
}

struct CommonOptions {
  std::string seed = "0";
  std::string law = "gaussian";
  double sigma = 1.0;
  int workers = 0;
  std::string format = "csv";
  std::string output;
  QuadConfig quad{};
};

void add_quad_options(CLI::App* cmd, QuadConfig* quad) {
  cmd->add_option("--oversample", quad->oversample,
                  "Quadrature oversampling factor");
  cmd->add_option("--rel-tol", quad->rel_tol,
                  "Adaptive quadrature relative tolerance");
  cmd->add_option("--max-doublings", quad->max_doublings,
                  "Adaptive quadrature refinement cap");
}

// ---------------------------------------------------------------- estimate

struct EstimateOptions {
  CommonOptions common;
  std::string statistic = "nikolskii";
  std::string p, q;
  int k = 0, l = 0;
  double s = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  int dimension = 1;
  int degree = -1;
  std::string basis;
  std::int64_t samples = 1000;
};

EstimatorTask build_task(const EstimateOptions& opt) {
  EstimatorTask task;
  task.basis.dimension = opt.dimension;
  task.basis.degree = opt.degree;
  if (!opt.basis.empty()) {
    task.basis.kind = basis_kind_from_string(opt.basis);
  } else {
    task.basis.kind =
        opt.dimension == 1 ? BasisKind::Real1d : BasisKind::RealTensor;
  }
  validate(task.basis);

  auto need = [](bool present, const char* what) {
    if (!present)
      throw std::invalid_argument(std::string("missing required flag ") + what);
  };
  if (opt.statistic == "nikolskii") {
    need(!opt.p.empty(), "--p");
    need(!opt.q.empty(), "--q");
    task.statistic = NikolskiiStat{parse_exponent(opt.p), parse_exponent(opt.q)};
  } else if (opt.statistic == "moment-ratio") {
    need(!opt.q.empty(), "--q");
    need(opt.k > 0, "--k");
    need(opt.l > 0, "--l");
    task.statistic = MomentRatioStat{parse_exponent(opt.q), opt.k, opt.l};
  } else if (opt.statistic == "norm-moment") {
    need(!opt.q.empty(), "--q");
    need(!std::isnan(opt.s), "--s");
    task.statistic = NormMomentStat{parse_exponent(opt.q), opt.s};
  } else if (opt.statistic == "recip-sup-moment") {
    need(!std::isnan(opt.r), "--r");
    task.statistic = RecipSupMomentStat{opt.r};
  } else {
    throw std::invalid_argument("unknown statistic: " + opt.statistic);
  }

  task.random.law = law_from_string(opt.common.law);
  task.random.sigma = opt.common.sigma;
  task.random.seed = parse_seed(opt.common.seed);
  task.samples = opt.samples;
  task.quad = opt.common.quad;
  validate(task);
  return task;
}

int cmd_estimate(const EstimateOptions& opt) {
  EstimatorTask task;
  try {
    task = build_task(opt);
  } catch (const std::exception& e) {
    std::cerr << "niklab estimate: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    EstimateRecord record{task, run_estimator(task, opt.common.workers)};
    const std::string payload = opt.common.format == "json"
                                    ? estimate_to_json(record).dump(2) + "\n"
                                    : estimate_csv(record);
    emit(payload, opt.common.output);
  } catch (const std::exception& e) {
    std::cerr << "niklab estimate: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const std::string& plan_path, const CommonOptions& common) {
  PlanFile plan;
  try {
    const Json j = Json::parse(read_file(plan_path));
    plan = plan_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << "niklab sweep: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    if (const auto* sweep_plan = std::get_if<SweepPlan>(&plan)) {
      const SweepResult result = run_sweep(*sweep_plan, common.workers);
      const std::string payload = common.format == "json"
                                      ? sweep_to_json(result).dump(2) + "\n"
                                      : sweep_csv(result);
      if (!common.output.empty()) write_file(common.output, payload);
      for (const SweepRow& row : result.rows)
        std::printf("d=%d n=%d N=%lld mean=%s stderr=%s normalized=%s\n",
                    row.dimension, row.degree,
                    static_cast<long long>(row.size), g17(row.estimate.mean).c_str(),
                    g17(row.estimate.std_error).c_str(),
                    g17(row.normalized_mean).c_str());
      std::printf("band ratio=%s min=%s max=%s (normalizer %s)\n",
                  g17(result.band.ratio).c_str(),
                  g17(result.band.min_normalized).c_str(),
                  g17(result.band.max_normalized).c_str(),
                  to_string(result.plan.normalizer).c_str());
      std::printf("slope=%s rms_residual=%s\n", g17(result.slope.slope).c_str(),
                  g17(result.slope.rms_residual).c_str());
    } else {
      const auto& dmatch = std::get<DimensionMatchPlan>(plan);
      const DimensionMatchResult result =
          dimension_match(dmatch.statistic, dmatch.target_size, dmatch.samples,
                          dmatch.seed, dmatch.law, dmatch.basis, dmatch.quad,
                          common.workers);
      const std::string payload =
          common.format == "json"
              ? dimension_match_to_json(result, dmatch).dump(2) + "\n"
              : dimension_match_csv(result, dmatch);
      if (!common.output.empty()) write_file(common.output, payload);
      for (const DimensionMatchRow& row : result.rows)
        std::printf("d=%d n=%d mean=%s stderr=%s\n", row.dimension, row.degree,
                    g17(row.estimate.mean).c_str(),
                    g17(row.estimate.std_error).c_str());
      std::printf("N=%lld max/min ratio=%s\n",
                  static_cast<long long>(result.target_size),
                  g17(result.max_min_ratio).c_str());
    }
  } catch (const std::exception& e) {
    std::cerr << "niklab sweep: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

TrigPoly random_poly(const BasisSpec& basis, std::uint64_t seed,
                     std::uint64_t index) {
  return make_poly(basis,
                   sample_unit_coeffs(derive_stream(seed, index),
                                      basis_size(basis),
                                      RandomSpec::Law::Gaussian));
}

void check_identities(std::vector<Check>& checks, int workers) {
  constexpr std::uint64_t seed = 0x5eedULL;
  {
    // Exact Gamma-ratio identities across sizes, in log scale.
    double worst = 0.0;
    for (std::int64_t n : {std::int64_t{3}, std::int64_t{11}, std::int64_t{101},
                           std::int64_t{1000000}}) {
      for (int k = 1; k <= 6; ++k) {
        for (int l = 1; l <= 6; ++l) {
          if (l < k + n) {
            const double lhs = *moment_ratio_factor(k, l, n).log_scale +
                               *chi_moment(n, k).log_scale;
            const double rhs = *chi_moment(n, k - l).log_scale;
            worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
          }
          if (l < n) {
            const double lhs = *recip_moment_factor(k, l, n).log_scale +
                               *chi_moment(n, -l).log_scale;
            const double rhs = *chi_moment(n, k - l).log_scale;
            worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
          }
        }
      }
    }
    checks.push_back({"chi-factor identities (k,l<=6; N up to 1e6)",
                      worst <= 1e-10, "max rel dev " + g17(worst)});
  }
  const BasisSpec basis{1, 8, BasisKind::Real1d};
  struct Case {
    double q;
    int k, l;
  };
  for (const Case c : {Case{1, 1, 1}, Case{4, 2, 2}, Case{3, 1, 2}}) {
    const IdentityReport rep = verify_moment_ratio_identity(
        NormSpec(c.q), c.k, c.l, basis, 4000, seed, QuadConfig{}, workers);
    char name[96];
    std::snprintf(name, sizeof(name), "moment-ratio identity q=%g k=%d l=%d",
                  c.q, c.k, c.l);
    checks.push_back({name, rep.pass,
                      "lhs=" + g17(rep.lhs) + " rhs=" + g17(rep.rhs) +
                          " diff_se=" + g17(rep.diff_se)});
  }
  {
    const IdentityReport rep = verify_moment_ratio_identity(
        NormSpec(2.0), 2, 2, basis, 10, seed, QuadConfig{}, workers);
    checks.push_back({"moment-ratio identity q=2 (closed form)",
                      rep.pass && rep.closed_form,
                      "lhs=" + g17(rep.lhs) + " rhs=" + g17(rep.rhs)});
  }
  for (const Case c : {Case{1, 2, 1}, Case{3, 1, 2}}) {
    const IdentityReport rep = verify_recip_moment_identity(
        NormSpec(c.q), c.k, c.l, basis, 4000, seed, QuadConfig{}, workers);
    char name[96];
    std::snprintf(name, sizeof(name), "recip-moment identity p=%g k=%d l=%d",
                  c.q, c.k, c.l);
    checks.push_back({name, rep.pass,
                      "lhs=" + g17(rep.lhs) + " rhs=" + g17(rep.rhs) +
                          " diff_se=" + g17(rep.diff_se)});
  }
}

void check_tails(std::vector<Check>& checks) {
  bool bracket = true;
  double worst_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t =
        1.01 * std::pow(10.0 / 1.01, static_cast<double>(i) / 99.0);
    const GaussianTail tail = gaussian_tail(t);
    bracket = bracket && tail.lower <= tail.exact && tail.exact <= tail.upper;
    worst_gap = std::max(worst_gap, (tail.upper - tail.lower) / tail.exact);
  }
  checks.push_back({"gaussian tail bracketing on t in [1.01, 10]", bracket,
                    "100 log-spaced points"});
  const double exact2 = gaussian_tail(2.0).exact;
  checks.push_back({"two-sided tail at t=2", std::abs(exact2 - 0.04550026389635842) < 1e-12,
                    "exact=" + g17(exact2)});
}

void check_quadrature(std::vector<Check>& checks) {
  constexpr std::uint64_t seed = 0xabcdULL;
  const BasisSpec basis{1, 16, BasisKind::Real1d};
  double worst_parseval = 0.0, worst_even = 0.0, worst_sup = 0.0;
  bool holder = true, monotone = true;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const TrigPoly poly = random_poly(basis, seed, i);
    const double parseval = norm_l2_parseval(poly);
    const double rect = lp_norm_rectangle(poly, 2.0, 16 * 33);
    worst_parseval =
        std::max(worst_parseval, std::abs(parseval - rect) / parseval);
    const double exact4 = norm(poly, NormSpec(4.0)).value;
    const double dense4 = lp_norm_rectangle(poly, 4.0, 64 * 33);
    worst_even = std::max(worst_even, std::abs(exact4 - dense4) / dense4);
    const double sup16 = sup_norm(poly, QuadConfig{16, 1e-9, 6}).value;
    const double sup256 = sup_norm(poly, QuadConfig{256, 1e-9, 6}).value;
    worst_sup = std::max(worst_sup, std::abs(sup16 - sup256) / sup256);
    const double n1 = norm(poly, NormSpec(1.0)).value;
    const double n2 = norm(poly, NormSpec(2.0)).value;
    const double n3 = norm(poly, NormSpec(3.0)).value;
    holder = holder &&
             n2 * n2 <= std::sqrt(n1) * std::pow(n3, 1.5) * (1.0 + 1e-8);
    monotone = monotone && n1 <= n2 * (1.0 + 1e-8) && n2 <= n3 * (1.0 + 1e-8);
  }
  checks.push_back({"L2 parseval vs rectangle", worst_parseval <= 1e-10,
                    "max rel dev " + g17(worst_parseval)});
  checks.push_back({"even-p exactness (p=4)", worst_even <= 1e-10,
                    "max rel dev " + g17(worst_even)});
  checks.push_back({"sup-norm grid refinement stability", worst_sup <= 1e-8,
                    "max rel dev " + g17(worst_sup)});
  checks.push_back({"Hoelder interpolation ||T||_2^2 <= ||T||_1^(1/2) ||T||_3^(3/2)",
                    holder, "20 random degree-16 polynomials"});
  checks.push_back({"norm monotonicity in p", monotone,
                    "20 random degree-16 polynomials"});
}

void check_whitening(std::vector<Check>& checks) {
  constexpr std::uint64_t seed = 0x77ULL;
  constexpr int draws = 10000;
  struct Setup {
    BasisSpec basis;
    const char* name;
  };
  const Setup setups[] = {
      {BasisSpec{1, 4, BasisKind::Real1d}, "whitening d=1 n=4"},
      {BasisSpec{2, 1, BasisKind::ComplexExponential}, "whitening d=2 n=1"},
  };
  for (const Setup& setup : setups) {
    const auto n = basis_size(setup.basis);
    Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < draws; ++i) {
      const TrigPoly poly =
          random_poly(setup.basis, seed, static_cast<std::uint64_t>(i));
      const Eigen::VectorXcd x = grid_samples(poly);
      cov.noalias() += x * x.adjoint();
    }
    cov /= static_cast<double>(draws);
    double max_off = 0.0, diag_lo = 1e300, diag_hi = -1e300;
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        if (a == b) {
          diag_lo = std::min(diag_lo, cov(a, b).real());
          diag_hi = std::max(diag_hi, cov(a, b).real());
        } else {
          max_off = std::max(max_off, std::abs(cov(a, b)));
        }
      }
    }
    const double bound = 5.0 / std::sqrt(static_cast<double>(draws)) *
                         std::sqrt(std::log(static_cast<double>(n)));
    const bool pass =
        max_off <= bound && diag_lo >= 0.9 && diag_hi <= 1.1;
    checks.push_back({setup.name, pass,
                      "max offdiag " + g17(max_off) + " bound " + g17(bound) +
                          " diag [" + g17(diag_lo) + ", " + g17(diag_hi) + "]"});
  }
}

int cmd_verify(const std::string& suite, int workers) {
  std::vector<Check> checks;
  try {
    if (suite == "identities") {
      check_identities(checks, workers);
    } else if (suite == "tails") {
      check_tails(checks);
    } else if (suite == "quadrature") {
      check_quadrature(checks);
    } else if (suite == "whitening") {
      check_whitening(checks);
    } else if (suite == "all") {
      check_identities(checks, workers);
      check_tails(checks);
      check_quadrature(checks);
      check_whitening(checks);
    } else {
      std::cerr << "niklab verify: unknown suite '" << suite
                << "' (identities, tails, quadrature, whitening, all)\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "niklab verify: " << e.what() << "\n";
    return kExitFailure;
  }
  bool all_pass = true;
  for (const Check& check : checks) {
    all_pass = all_pass && check.pass;
    std::printf("%s %s — %s\n", check.pass ? "PASS" : "FAIL",
                check.name.c_str(), check.detail.c_str());
  }
  return all_pass ? kExitOk : kExitFailure;
}

// ------------------------------------------------------------------ oracle

int cmd_oracle(const std::string& name, const std::vector<std::string>& args) {
  auto arg_count = [&](size_t want) {
    if (args.size() != want)
      throw std::invalid_argument("oracle " + name + " takes " +
                                  std::to_string(want) + " argument(s)");
  };
  auto as_double = [](const std::string& s) {
    size_t consumed = 0;
    const double v = std::stod(s, &consumed);
    if (consumed != s.size())
      throw std::invalid_argument("bad numeric argument: " + s);
    return v;
  };
  auto as_int = [&](const std::string& s) {
    const double v = as_double(s);
    if (v != std::floor(v)) throw std::invalid_argument("expected integer: " + s);
    return static_cast<std::int64_t>(v);
  };
  try {
    std::string line;
    if (name == "cq") {
      arg_count(1);
      line = g17(c_q(as_double(args[0])));
    } else if (name == "factor26" || name == "factor24") {
      arg_count(3);
      const OracleValue v =
          name == "factor26"
              ? moment_ratio_factor(static_cast<int>(as_int(args[0])),
                                    static_cast<int>(as_int(args[1])),
                                    as_int(args[2]))
              : recip_moment_factor(static_cast<int>(as_int(args[0])),
                                    static_cast<int>(as_int(args[1])),
                                    as_int(args[2]));
      line = g17(v.value) + " log=" + g17(*v.log_scale);
    } else if (name == "chi") {
      arg_count(2);
      const OracleValue v = chi_moment(as_int(args[0]), as_double(args[1]));
      line = g17(v.value) + " log=" + g17(*v.log_scale);
    } else if (name == "tail") {
      arg_count(1);
      const GaussianTail tail = gaussian_tail(as_double(args[0]));
      line = "lower=" + g17(tail.lower) + " exact=" + g17(tail.exact) +
             " upper=" + g17(tail.upper);
    } else if (name == "stirling") {
      arg_count(1);
      line = g17(stirling_ratio_check(as_double(args[0])));
    } else if (name == "eqq") {
      arg_count(2);
      line = g17(expected_qq_norm(as_double(args[0]), as_int(args[1])));
    } else {
      std::cerr << "niklab oracle: unknown oracle '" << name
                << "' (cq, factor26, factor24, chi, tail, stirling, eqq)\n";
      return kExitUsage;
    }
    std::printf("%s\n", line.c_str());
  } catch (const std::domain_error& e) {
    std::cerr << "niklab oracle: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "niklab oracle: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

// ------------------------------------------------------------------- probe

int cmd_probe(const std::string& p_token, const std::string& q_token,
              const std::vector<int>& degrees, const CommonOptions& common,
              const std::string& dump_dir) {
  NormSpec p(1.0), q(2.0);
  try {
    p = parse_exponent(p_token);
    q = parse_exponent(q_token);
    if (degrees.empty()) throw std::invalid_argument("need --degrees");
  } catch (const std::exception& e) {
    std::cerr << "niklab probe: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    const ProbeResult result = worst_case_probe(p, q, degrees, common.quad);
    const std::string payload = common.format == "json"
                                    ? probe_to_json(result).dump(2) + "\n"
                                    : probe_csv(result);
    emit(payload, common.output);
    if (result.slope.valid)
      std::fprintf(stderr, "probe slope=%s rms_residual=%s\n",
                   g17(result.slope.slope).c_str(),
                   g17(result.slope.rms_residual).c_str());
    if (!dump_dir.empty()) {
      for (int n : degrees) {
        const TrigPoly kernel = fejer_poly(n);
        write_file(dump_dir + "/fejer_" + std::to_string(n) + ".json",
                   poly_to_json(kernel).dump(2) + "\n");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "niklab probe: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo laboratory for norms of random trigonometric polynomials"};
  app.require_subcommand(1);

  EstimateOptions est;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "Estimate one statistic of a random polynomial ensemble");
  estimate->add_option("--statistic", est.statistic,
                       "nikolskii | moment-ratio | norm-moment | recip-sup-moment");
  estimate->add_option("--p", est.p, "Denominator exponent (>=1 or 'inf')");
  estimate->add_option("--q", est.q, "Numerator exponent (>=1 or 'inf')");
  estimate->add_option("--k", est.k, "Numerator power (moment-ratio)");
  estimate->add_option("--l", est.l, "Denominator power (moment-ratio)");
  estimate->add_option("--s", est.s, "Moment order (norm-moment)");
  estimate->add_option("--r", est.r, "Reciprocal power (recip-sup-moment)");
  estimate->add_option("--d", est.dimension, "Torus dimension");
  estimate->add_option("--n", est.degree, "Polynomial degree")->required();
  estimate->add_option("--basis", est.basis,
                       "real-1d | real-tensor | complex-exponential");
  estimate->add_option("--samples", est.samples, "Monte Carlo sample count");
  estimate->add_option("--seed", est.common.seed, "Seed (decimal or 0x hex)");
  estimate->add_option("--sigma", est.common.sigma, "Gaussian scale");
  estimate->add_option("--law", est.common.law, "gaussian | rademacher");
  estimate->add_option("--workers", est.common.workers,
                       "Worker threads (0 = hardware)");
  estimate->add_option("--format", est.common.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  estimate->add_option("--output", est.common.output, "Also write to file");
  add_quad_options(estimate, &est.common.quad);

  CommonOptions sweep_common;
  std::string plan_path;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a degree/dimension sweep from a JSON plan");
  sweep->add_option("--plan", plan_path, "Plan file (JSON)")->required();
  sweep->add_option("--workers", sweep_common.workers,
                    "Worker threads (0 = hardware)");
  sweep->add_option("--format", sweep_common.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--output", sweep_common.output, "Result file");

  std::string suite;
  int verify_workers = 0;
  CLI::App* verify = app.add_subcommand("verify", "Run a self-check suite");
  verify->add_option("suite", suite,
                     "identities | tails | quadrature | whitening | all")
      ->required();
  verify->add_option("--workers", verify_workers, "Worker threads");

  std::string oracle_name;
  std::vector<std::string> oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "Print a closed-form value");
  oracle->add_option("name", oracle_name,
                     "cq | factor26 | factor24 | chi | tail | stirling | eqq")
      ->required();
  oracle->add_option("args", oracle_args, "Numeric arguments");

  CommonOptions probe_common;
  std::string probe_p, probe_q, dump_dir;
  std::vector<int> probe_degrees;
  CLI::App* probe = app.add_subcommand(
      "probe", "Worst-case Nikolskii factor of the Fejer kernel");
  probe->add_option("--p", probe_p, "Denominator exponent")->required();
  probe->add_option("--q", probe_q, "Numerator exponent")->required();
  probe->add_option("--degrees", probe_degrees, "Degrees, e.g. 16,32,64")
      ->required()
      ->delimiter(',');
  probe->add_option("--format", probe_common.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  probe->add_option("--output", probe_common.output, "Result file");
  probe->add_option("--dump-kernels", dump_dir,
                    "Directory for kernel coefficient JSON dumps");
  add_quad_options(probe, &probe_common.quad);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  if (estimate->parsed()) return cmd_estimate(est);
  if (sweep->parsed()) return cmd_sweep(plan_path, sweep_common);
  if (verify->parsed()) return cmd_verify(suite, verify_workers);
  if (oracle->parsed()) return cmd_oracle(oracle_name, oracle_args);
  if (probe->parsed()) return cmd_probe(probe_p, probe_q, probe_degrees,
                                        probe_common, dump_dir);
  return kExitUsage;
}
