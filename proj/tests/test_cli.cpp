#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "niklab/records.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(NIKLAB_CLI_PATH) + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
    result.out.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& tag) {
  static int counter = 0;
  std::ostringstream path;
  path << "/tmp/niklab_test_" << getpid() << "_" << counter++ << "_" << tag;
  return path.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("estimate with identical exponents prints an exact record") {
  const CliResult r = run_cli(
      "estimate --p 2 --q 2 --n 4 --samples 50 --seed 42");
  REQUIRE(r.exit_code == 0);
  const size_t newline = r.out.find('\n');
  REQUIRE(newline != std::string::npos);
  CHECK(r.out.substr(0, newline) == niklab::kEstimateCsvHeader);
  const auto record = niklab::estimate_from_csv_row(r.out.substr(newline + 1));
  CHECK(record.estimate.mean == 1.0);
  CHECK(record.estimate.std_error == 0.0);
  CHECK(record.estimate.samples == 50);
}

TEST_CASE("estimate JSON output parses back") {
  const CliResult r = run_cli(
      "estimate --p 1 --q 3 --n 4 --samples 50 --seed 7 --format json");
  REQUIRE(r.exit_code == 0);
  const auto record =
      niklab::estimate_from_json(niklab::Json::parse(r.out));
  CHECK(record.task.samples == 50);
  CHECK(record.estimate.mean > 0.9);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("estimate --p 0.5 --q 3 --n 4").exit_code == 2);
  CHECK(run_cli("estimate --q 3 --n 4").exit_code == 2);  // missing --p
  CHECK(run_cli("estimate --p 1 --q 3").exit_code == 2);  // missing --n
  CHECK(run_cli("estimate --p 1 --q 3 --n 4 --bogus 1").exit_code == 2);
  CHECK(run_cli("verify nonsense").exit_code == 2);
  CHECK(run_cli("oracle nonsense 1").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("oracle values print at full precision") {
  const CliResult cq = run_cli("oracle cq 2");
  REQUIRE(cq.exit_code == 0);
  CHECK(std::stod(cq.out) == 1.0);

  const CliResult eqq = run_cli("oracle eqq 4 5");
  REQUIRE(eqq.exit_code == 0);
  CHECK(std::stod(eqq.out) == doctest::Approx(75.0).epsilon(1e-12));

  const CliResult chi = run_cli("oracle chi 3 2");
  REQUIRE(chi.exit_code == 0);
  CHECK(std::stod(chi.out) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(chi.out.find("log=") != std::string::npos);

  // Domain failures from the oracle layer exit 1.
  CHECK(run_cli("oracle chi 3 -3").exit_code == 1);
  CHECK(run_cli("oracle cq 0.5").exit_code == 1);
}

TEST_CASE("verify tails suite passes") {
  const CliResult r = run_cli("verify tails");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("probe emits the fixed CSV schema") {
  const CliResult r = run_cli("probe --p 2 --q 1 --degrees 4,8,16");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("n,N,p,q,factor\n", 0) == 0);
}

TEST_CASE("sweep runs from a plan file and reports the band") {
  const std::string plan_path = temp_path("plan.json");
  {
    std::ofstream plan(plan_path);
    plan << R"({
      "statistic": {"kind": "nikolskii", "p": 2, "q": 2},
      "degrees": [1, 2, 4],
      "samples": 50,
      "seed": 11
    })";
  }
  const std::string out_path = temp_path("sweep.csv");
  const CliResult r = run_cli("sweep --plan " + plan_path + " --output " +
                              out_path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("band ratio=1 ") != std::string::npos);
  const std::string csv = slurp(out_path);
  CHECK(csv.rfind(niklab::kEstimateCsvHeader, 0) == 0);
  std::remove(plan_path.c_str());
  std::remove(out_path.c_str());
}

TEST_CASE("malformed and single-degree plans exit with 2") {
  const std::string plan_path = temp_path("bad_plan.json");
  {
    std::ofstream plan(plan_path);
    plan << R"({"statistic": {"kind": "nikolskii", "p": 2, "q": 2},
                "degrees": [4], "samples": 50})";
  }
  CHECK(run_cli("sweep --plan " + plan_path).exit_code == 2);
  {
    std::ofstream plan(plan_path);
    plan << "{ not json";
  }
  CHECK(run_cli("sweep --plan " + plan_path).exit_code == 2);
  CHECK(run_cli("sweep --plan /nonexistent/plan.json").exit_code == 2);
  std::remove(plan_path.c_str());
}

TEST_CASE("worker count never changes output bytes") {
  const std::string base =
      "estimate --p 1 --q 3 --n 8 --samples 200 --seed 2024 --output ";
  const std::string f1 = temp_path("w1.csv");
  const std::string f2 = temp_path("w2.csv");
  const std::string f8 = temp_path("w8.csv");
  REQUIRE(run_cli(base + f1 + " --workers 1").exit_code == 0);
  REQUIRE(run_cli(base + f2 + " --workers 2").exit_code == 0);
  REQUIRE(run_cli(base + f8 + " --workers 8").exit_code == 0);
  const std::string b1 = slurp(f1);
  CHECK(b1 == slurp(f2));
  CHECK(b1 == slurp(f8));
  std::remove(f1.c_str());
  std::remove(f2.c_str());
  std::remove(f8.c_str());
}
