// Acceptance suite: one check per numbered criterion, one PASS/FAIL line
// each. Usage: acceptance <path-to-niklab-cli> [criterion-number]
//
// Band and slope thresholds are empirical acceptance choices for order-level
// statements; they are collected in the single table below and nowhere else.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "niklab/estimators.hpp"
#include "niklab/oracles.hpp"
#include "niklab/poly.hpp"
#include "niklab/records.hpp"
#include "niklab/sweep.hpp"

using namespace niklab;

namespace {

struct Bands {
  // Criterion 4
  double nik_finite_band = 1.5;
  double nik_finite_slope = 0.05;
  double nik_sup_band = 2.0;
  double nik_inv_sup_band = 2.0;
  // Criterion 5
  double sup_growth_band = 2.0;
  double recip_sup_band = 2.5;
  // Criterion 6
  double dmatch_band = 1.5;
  // Criterion 7
  double probe_slope_lo = 0.40;
  double probe_slope_hi = 0.60;
  double separation_min = 5.0;
  // Criterion 8
  double cov_diag_lo = 0.9;
  double cov_diag_hi = 1.1;
};

constexpr Bands kBands{};

constexpr std::uint64_t kSeedMoments = 1001;
constexpr std::uint64_t kSeedIdentity = 1002;
constexpr std::uint64_t kSeedRegimes = 1004;
constexpr std::uint64_t kSeedSupSweep = 1005;
constexpr std::uint64_t kSeedDMatch = 1006;
constexpr std::uint64_t kSeedWhitening = 1008;
constexpr std::uint64_t kSeedQuadrature = 1010;

const std::vector<int> kSweepDegrees{8, 16, 32, 64, 128, 256};
constexpr std::int64_t kSweepSamples = 2000;

// Sweep quadrature: the L1/L3 integrands converge at ~M^-2, and a 1e-6
// relative bias is invisible against order-of-magnitude band thresholds,
// so the full 1e-9 doubling budget would be wasted here.
constexpr QuadConfig kSweepQuad{8, 1e-6, 6};

std::string g_cli_path;

std::string fmt(double v) { return g17(v); }

bool within_3se(double mean, double se, double target, std::string& detail) {
  const double gap = std::abs(mean - target);
  detail += " mean=" + fmt(mean) + " target=" + fmt(target) +
            " gap=" + fmt(gap) + " 3se=" + fmt(3.0 * se) + ";";
  return gap <= 3.0 * se;
}

SweepResult degree_sweep(const Statistic& stat, const Normalizer& normalizer,
                         std::uint64_t seed,
                         const QuadConfig& quad = kSweepQuad) {
  SweepPlan plan;
  plan.statistic = stat;
  plan.degrees = kSweepDegrees;
  plan.samples = kSweepSamples;
  plan.seed = seed;
  plan.normalizer = normalizer;
  plan.quad = quad;
  return run_sweep(plan);
}

// ------------------------------------------------------------ criteria

bool criterion_exact_moments(std::string& detail) {
  EstimatorTask task;
  task.basis = BasisSpec{1, 16, BasisKind::Real1d};
  task.random.seed = kSeedMoments;
  task.statistic = NormMomentStat{NormSpec(2.0), 2.0};
  task.samples = 10000;
  const MCEstimate second = run_estimator(task);
  bool ok = within_3se(second.mean, second.std_error,
                       chi_moment(33, 2.0).value, detail);

  task.basis = BasisSpec{1, 2, BasisKind::Real1d};
  task.statistic = NormMomentStat{NormSpec(4.0), 4.0};
  const MCEstimate fourth = run_estimator(task);
  ok = within_3se(fourth.mean, fourth.std_error, expected_qq_norm(4.0, 5),
                  detail) &&
       ok;
  return ok;
}

bool criterion_identity(std::string& detail) {
  bool ok = true;
  const struct {
    double q;
    int k, l;
  } cases[] = {{1.0, 1, 1}, {4.0, 2, 2}, {3.0, 1, 2}};
  for (const int degree : {8, 16}) {
    const BasisSpec basis{1, degree, BasisKind::Real1d};
    for (const auto& c : cases) {
      const IdentityReport rep = verify_moment_ratio_identity(
          NormSpec(c.q), c.k, c.l, basis, 10000, kSeedIdentity);
      if (!rep.pass) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      " FAIL q=%g k=%d l=%d n=%d lhs=%.6g rhs=%.6g se=%.2g;",
                      c.q, c.k, c.l, degree, rep.lhs, rep.rhs, rep.diff_se);
        detail += buf;
        ok = false;
      }
    }
    // q = 2 degenerates to the exact chi identity; ten draws suffice since
    // no sampling is involved.
    const IdentityReport exact = verify_moment_ratio_identity(
        NormSpec(2.0), 2, 2, basis, 10, kSeedIdentity);
    const bool exact_ok =
        exact.closed_form &&
        std::abs(exact.lhs - exact.rhs) <= 1e-10 * std::abs(exact.lhs);
    if (!exact_ok) {
      detail += " q=2 closed-form gap " + fmt(exact.lhs - exact.rhs) + ";";
      ok = false;
    }
  }
  if (ok) detail = " all (q,k,l) pairs at n in {8,16} within 3 se; q=2 exact;";
  return ok;
}

bool criterion_chi_consistency(std::string& detail) {
  double worst = 0.0;
  for (const std::int64_t n : {std::int64_t{3}, std::int64_t{11},
                               std::int64_t{101}, std::int64_t{1000000}}) {
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
  detail = " max relative deviation " + fmt(worst) + " (tol 1e-10);";
  return worst <= 1e-10;
}

bool criterion_regimes(std::string& detail) {
  bool ok = true;
  const SweepResult finite = degree_sweep(
      NikolskiiStat{NormSpec(1.0), NormSpec(3.0)},
      Normalizer{Normalizer::Kind::One, 0.0}, kSeedRegimes);
  detail += " (1,3): band=" + fmt(finite.band.ratio) +
            " slope=" + fmt(finite.slope.slope) + ";";
  ok = finite.band.ratio <= kBands.nik_finite_band &&
       std::abs(finite.slope.slope) <= kBands.nik_finite_slope && ok;

  const SweepResult to_sup = degree_sweep(
      NikolskiiStat{NormSpec(2.0), NormSpec::sup()},
      Normalizer{Normalizer::Kind::SqrtLogN, 0.0}, kSeedRegimes);
  detail += " (2,inf)/sqrt(ln N): band=" + fmt(to_sup.band.ratio) + ";";
  ok = to_sup.band.ratio <= kBands.nik_sup_band && ok;

  const SweepResult from_sup = degree_sweep(
      NikolskiiStat{NormSpec::sup(), NormSpec(2.0)},
      Normalizer{Normalizer::Kind::InvSqrtLogN, 0.0}, kSeedRegimes);
  detail += " (inf,2)*sqrt(ln N): band=" + fmt(from_sup.band.ratio) + ";";
  ok = from_sup.band.ratio <= kBands.nik_inv_sup_band && ok;
  return ok;
}

bool criterion_sup_growth(std::string& detail) {
  const SweepResult growth = degree_sweep(
      NormMomentStat{NormSpec::sup(), 1.0},
      Normalizer{Normalizer::Kind::NLogNPow, 0.5}, kSeedSupSweep);
  detail += " E sup / sqrt(N ln N): band=" + fmt(growth.band.ratio) + ";";
  bool ok = growth.band.ratio <= kBands.sup_growth_band;

  const SweepResult recip = degree_sweep(
      RecipSupMomentStat{2.0},
      Normalizer{Normalizer::Kind::NLogNPow, -1.0}, kSeedSupSweep);
  detail += " E sup^-2 * N ln N: band=" + fmt(recip.band.ratio) + ";";
  ok = recip.band.ratio <= kBands.recip_sup_band && ok;
  return ok;
}

bool criterion_dimension_match(std::string& detail) {
  // d = 4 quadrature grids grow as M^4; a short doubling budget keeps the
  // run inside its time box while the band tolerance dwarfs the bias
  // (~1e-3 at 24 points per axis against a 1.5 ratio threshold).
  const QuadConfig quad{4, 1e-5, 1};
  const DimensionMatchResult result =
      dimension_match(NikolskiiStat{NormSpec(1.0), NormSpec(3.0)}, 81,
                      kSweepSamples, kSeedDMatch, RandomSpec::Law::Gaussian,
                      BasisKind::RealTensor, quad);
  for (const DimensionMatchRow& row : result.rows)
    detail += " d=" + std::to_string(row.dimension) +
              " mean=" + fmt(row.estimate.mean) + ";";
  detail += " ratio=" + fmt(result.max_min_ratio) + ";";
  return result.max_min_ratio <= kBands.dmatch_band;
}

bool criterion_probe(std::string& detail) {
  const std::vector<int> degrees{16, 32, 64, 128, 256, 512};
  bool ok = true;
  const ProbeResult p12 =
      worst_case_probe(NormSpec(1.0), NormSpec(2.0), degrees);
  detail += " (1,2) slope=" + fmt(p12.slope.slope) + ";";
  ok = p12.slope.valid && p12.slope.slope >= kBands.probe_slope_lo &&
       p12.slope.slope <= kBands.probe_slope_hi && ok;

  const ProbeResult p2s =
      worst_case_probe(NormSpec(2.0), NormSpec::sup(), degrees);
  detail += " (2,inf) slope=" + fmt(p2s.slope.slope) + ";";
  ok = p2s.slope.valid && p2s.slope.slope >= kBands.probe_slope_lo &&
       p2s.slope.slope <= kBands.probe_slope_hi && ok;

  const ProbeResult p13 =
      worst_case_probe(NormSpec(1.0), NormSpec(3.0), {256});
  // The random-average side concentrates tightly; 400 draws pin it to a
  // fraction of a percent, far inside the factor-5 separation margin.
  EstimatorTask random_task;
  random_task.basis = BasisSpec{1, 256, BasisKind::Real1d};
  random_task.random.seed = kSeedRegimes;
  random_task.statistic = NikolskiiStat{NormSpec(1.0), NormSpec(3.0)};
  random_task.samples = 400;
  random_task.quad = kSweepQuad;
  const MCEstimate random_factor = run_estimator(random_task);
  const double separation = p13.rows[0].factor / random_factor.mean;
  detail += " probe/random separation=" + fmt(separation) + ";";
  return separation >= kBands.separation_min && ok;
}

bool criterion_whitening(std::string& detail) {
  constexpr int draws = 10000;
  bool ok = true;
  const BasisSpec setups[] = {
      BasisSpec{1, 4, BasisKind::Real1d},
      BasisSpec{2, 1, BasisKind::ComplexExponential},
  };
  for (const BasisSpec& basis : setups) {
    const Eigen::Index n = basis_size(basis);
    Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < draws; ++i) {
      const TrigPoly poly = make_poly(
          basis,
          sample_unit_coeffs(derive_stream(kSeedWhitening, i), n,
                             RandomSpec::Law::Gaussian));
      const Eigen::VectorXcd x = grid_samples(poly);
      cov.noalias() += x * x.adjoint();
    }
    cov /= static_cast<double>(draws);
    double max_off = 0.0, diag_lo = 1e300, diag_hi = -1e300;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b) {
        if (a == b) {
          diag_lo = std::min(diag_lo, cov(a, b).real());
          diag_hi = std::max(diag_hi, cov(a, b).real());
        } else {
          max_off = std::max(max_off, std::abs(cov(a, b)));
        }
      }
    const double off_bound = 5.0 / std::sqrt(static_cast<double>(draws)) *
                             std::sqrt(std::log(static_cast<double>(n)));
    detail += " d=" + std::to_string(basis.dimension) +
              ": max_off=" + fmt(max_off) + " bound=" + fmt(off_bound) +
              " diag=[" + fmt(diag_lo) + "," + fmt(diag_hi) + "];";
    ok = max_off <= off_bound && diag_lo >= kBands.cov_diag_lo &&
         diag_hi <= kBands.cov_diag_hi && ok;
  }
  return ok;
}

bool criterion_tail_bracketing(std::string& detail) {
  for (int i = 0; i < 100; ++i) {
    const double t = 1.01 * std::pow(10.0 / 1.01, i / 99.0);
    const GaussianTail tail = gaussian_tail(t);
    if (!(tail.lower <= tail.exact && tail.exact <= tail.upper)) {
      detail += " bracketing fails at t=" + fmt(t) + ";";
      return false;
    }
  }
  detail = " lower <= erfc-exact <= upper on 100 log-spaced t in [1.01, 10];";
  return true;
}

bool criterion_quadrature(std::string& detail) {
  bool ok = true;
  double worst_parseval = 0.0, worst_even = 0.0, worst_sup = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const BasisSpec basis{1, 16, BasisKind::Real1d};
    const TrigPoly poly = make_poly(
        basis, sample_unit_coeffs(derive_stream(kSeedQuadrature, i),
                                  basis_size(basis),
                                  RandomSpec::Law::Gaussian));
    const double parseval = norm(poly, NormSpec(2.0)).value;
    const double rect2 = lp_norm_rectangle(poly, 2.0, 16 * 33);
    worst_parseval =
        std::max(worst_parseval, std::abs(parseval - rect2) / parseval);
    const double exact4 = norm(poly, NormSpec(4.0)).value;
    const double dense4 = lp_norm_rectangle(poly, 4.0, 64 * 33);
    worst_even = std::max(worst_even, std::abs(exact4 - dense4) / dense4);
  }
  for (std::uint64_t i = 0; i < 20; ++i) {
    const BasisSpec basis{1, 8, BasisKind::Real1d};
    const TrigPoly poly = make_poly(
        basis, sample_unit_coeffs(derive_stream(kSeedQuadrature + 1, i),
                                  basis_size(basis),
                                  RandomSpec::Law::Gaussian));
    const double sup16 = sup_norm(poly, QuadConfig{16, 1e-9, 6}).value;
    const double sup256 = sup_norm(poly, QuadConfig{256, 1e-9, 6}).value;
    worst_sup = std::max(worst_sup, std::abs(sup16 - sup256) / sup256);
  }
  detail += " parseval=" + fmt(worst_parseval) + " even-p=" + fmt(worst_even) +
            " sup=" + fmt(worst_sup) + ";";
  ok = worst_parseval <= 1e-10 && worst_even <= 1e-10 && worst_sup <= 1e-8;

  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool planar = trial % 4 == 3;
    const BasisSpec basis =
        planar ? BasisSpec{2, 1 + trial % 6, BasisKind::RealTensor}
               : BasisSpec{1, 1 + trial % 32, BasisKind::Real1d};
    const TrigPoly poly = make_poly(
        basis, sample_unit_coeffs(
                   derive_stream(kSeedQuadrature + 2,
                                 static_cast<std::uint64_t>(trial)),
                   basis_size(basis), RandomSpec::Law::Gaussian));
    const QuadConfig cfg{8, 1e-9, 5};
    const double n1 = norm(poly, NormSpec(1.0), cfg).value;
    const double n2 = norm(poly, NormSpec(2.0), cfg).value;
    const double n3 = norm(poly, NormSpec(3.0), cfg).value;
    const double nsup = norm(poly, NormSpec::sup(), cfg).value;
    const bool monotone = n1 <= n2 * (1.0 + 1e-8) && n2 <= n3 * (1.0 + 1e-8) &&
                          n3 <= nsup * (1.0 + 1e-8);
    const bool holder =
        n2 * n2 <= std::sqrt(n1) * std::pow(n3, 1.5) * (1.0 + 1e-8);
    if (!monotone || !holder) ++violations;
  }
  detail += " monotonicity/Hoelder violations=" + std::to_string(violations) +
            "/200;";
  return ok && violations == 0;
}

int run_shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool criterion_reproducibility(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = " CLI path not supplied;";
    return false;
  }
  const std::string tag = std::to_string(getpid());
  const std::string est_base =
      g_cli_path +
      " estimate --p 1 --q inf --n 8 --samples 300 --seed 0xfeed --output ";
  bool ok = true;
  std::vector<std::string> files;
  for (const int workers : {1, 2, 8}) {
    const std::string path =
        "/tmp/niklab_acc_" + tag + "_est_w" + std::to_string(workers) + ".csv";
    files.push_back(path);
    if (run_shell(est_base + path + " --workers " + std::to_string(workers) +
                  " > /dev/null 2>&1") != 0) {
      detail += " estimate run failed;";
      ok = false;
    }
  }
  if (ok) {
    const std::string first = slurp(files[0]);
    for (const std::string& f : files)
      if (slurp(f) != first) ok = false;
    detail += ok ? " estimate outputs byte-identical across workers 1/2/8;"
                 : " estimate outputs differ;";
  }
  for (const std::string& f : files) std::remove(f.c_str());

  const std::string plan_path = "/tmp/niklab_acc_" + tag + "_plan.json";
  {
    std::ofstream plan(plan_path);
    plan << R"({"statistic": {"kind": "nikolskii", "p": 1, "q": 3},)"
         << R"("degrees": [4, 8, 16], "samples": 100, "seed": 99})";
  }
  std::vector<std::string> sweep_files;
  for (const int workers : {1, 2}) {
    const std::string path =
        "/tmp/niklab_acc_" + tag + "_sweep_w" + std::to_string(workers) + ".csv";
    sweep_files.push_back(path);
    if (run_shell(g_cli_path + " sweep --plan " + plan_path + " --output " +
                  path + " --workers " + std::to_string(workers) +
                  " > /dev/null 2>&1") != 0) {
      detail += " sweep run failed;";
      ok = false;
    }
  }
  if (!sweep_files.empty()) {
    const std::string first = slurp(sweep_files[0]);
    bool sweep_ok = true;
    for (const std::string& f : sweep_files)
      if (slurp(f) != first) sweep_ok = false;
    detail += sweep_ok ? " sweep outputs byte-identical;"
                       : " sweep outputs differ;";
    ok = ok && sweep_ok;
  }
  for (const std::string& f : sweep_files) std::remove(f.c_str());
  std::remove(plan_path.c_str());
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  int only = 0;
  if (argc > 2) only = std::atoi(argv[2]);

  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> check;
  };
  const std::vector<Criterion> criteria{
      {1, "exact norm moments", criterion_exact_moments},
      {2, "mixed-moment factor identity", criterion_identity},
      {3, "chi oracle consistency", criterion_chi_consistency},
      {4, "average-factor regimes (d=1)", criterion_regimes},
      {5, "sup-norm growth and reciprocal moments", criterion_sup_growth},
      {6, "dimension independence at matched N", criterion_dimension_match},
      {7, "worst-case kernel contrast", criterion_probe},
      {8, "grid-sample whitening", criterion_whitening},
      {9, "gaussian tail bracketing", criterion_tail_bracketing},
      {10, "quadrature suite", criterion_quadrature},
      {11, "reproducibility across workers", criterion_reproducibility},
  };

  bool all_pass = true;
  for (const Criterion& criterion : criteria) {
    if (only != 0 && criterion.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = criterion.check(detail);
    } catch (const std::exception& e) {
      detail += std::string(" exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("criterion %2d [%s]: %s (%.1fs)%s\n", criterion.id,
                criterion.name, pass ? "PASS" : "FAIL", seconds,
                detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
