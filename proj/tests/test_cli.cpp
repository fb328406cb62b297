// Integration tests that drive the installed command-line binary end to end:
// exit codes, CSV shapes, determinism across runs and thread counts, config
// diagnostics, and the validation suites' report contract.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ANSEC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::size_t count_lines(const std::string& s) {
  std::size_t lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  return lines;
}

std::string first_line(const std::string& s) {
  const auto pos = s.find('\n');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

}  // namespace

TEST_CASE("help exits cleanly and names every operation") {
  const RunResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  for (const char* op : {"sop-curve", "sop-opt", "rate-curve", "rate-opt",
                         "mc-validate", "validate", "sweep"})
    CHECK(r.output.find(op) != std::string::npos);
}

TEST_CASE("help documents the shared option defaults") {
  const RunResult r = run_cli("mc-validate --help");
  CHECK(r.exit_code == 0);
  for (const char* opt : {"--seed", "--trials", "--tol", "--out", "--threads"})
    CHECK(r.output.find(opt) != std::string::npos);
  CHECK(r.output.find("100000") != std::string::npos);  // trials default
}

TEST_CASE("missing subcommand and unknown flags are usage errors") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("sop-curve --no-such-flag").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("outage curve produces an ordered csv grid") {
  const RunResult r = run_cli("sop-curve");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.output) == "label,xi,sop,status");
  CHECK(count_lines(r.output) == 51);  // header + 50 grid rows
  // Grid order: xi strictly increasing down the file.
  std::istringstream in(r.output);
  std::string line;
  std::getline(in, line);
  double prev = -1.0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double xi = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(xi > prev);
    prev = xi;
  }
}

TEST_CASE("identical invocations produce identical bytes") {
  const std::string args = "mc-validate --trials 2000 --steps 3 --seed 5";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  const RunResult c = run_cli(args + " --threads 1");
  const RunResult d = run_cli(args + " --threads 3");
  CHECK(c.output == d.output);
  CHECK(a.output == c.output);
}

TEST_CASE("simulation sweep reports closed form next to the estimate") {
  const RunResult r = run_cli("mc-validate --trials 500 --steps 2 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.output) ==
        "label,xi,sop_closed,mc_mean,mc_std_err,z_score,trials,seed");
  CHECK(count_lines(r.output) == 3);
}

TEST_CASE("output file captures the csv and stdout stays quiet") {
  const std::string path = "cli_test_out.csv";
  std::remove(path.c_str());
  const RunResult r = run_cli("sop-curve --steps 5 --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "label,xi,sop,status");
  f.close();
  std::remove(path.c_str());
}

TEST_CASE("config diagnostics carry the offending line") {
  const std::string path = "cli_test_bad_config.txt";
  {
    std::ofstream f(path);
    f << "[system]\n"
         "n_antennas = 4\n"
         "power_dbm = banana\n"
         "alpha = 4\nr_bob = 1\nlambda_e = 2\ntau = 0.3\ngamma_hat = 4\n";
  }
  const RunResult r = run_cli("sop-curve --config " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("config") != std::string::npos);
  CHECK(r.output.find("3") != std::string::npos);  // line number of the typo
  std::remove(path.c_str());

  const RunResult missing = run_cli("sop-curve --config does_not_exist.txt");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("sweeping a value that is also fixed is a usage error") {
  const RunResult r =
      run_cli("sop-opt --var rs --rate 2 --start 0.5 --stop 3 --steps 5");
  CHECK(r.exit_code == 2);
  const RunResult ok =
      run_cli("sop-opt --var rs --start 0.5 --stop 3 --steps 5");
  CHECK(ok.exit_code == 0);
  CHECK(first_line(ok.output) == "label,rs,xi_star,sop_min,regime");
}

TEST_CASE("optimizer sweeps report the regime per row") {
  const RunResult r = run_cli("rate-opt --var tau --start 0 --stop 0.5 --steps 6");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.output) == "label,tau,xi_star,rs_star,regime");
  CHECK(count_lines(r.output) == 7);
  CHECK(r.output.find("interior") != std::string::npos);
}

TEST_CASE("rate curve csv shape") {
  const RunResult r = run_cli("rate-curve --steps 11");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.output) == "label,xi,rs");
  CHECK(count_lines(r.output) == 12);
}

TEST_CASE("named recipes expand to multi-curve tables") {
  const RunResult r = run_cli("sweep --preset fig1");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.output) == "label,xi,sop,status");
  CHECK(count_lines(r.output) == 1 + 3 * 49);
  for (const char* label : {"N=2", "N=4", "N=8"})
    CHECK(r.output.find(label) != std::string::npos);
  CHECK(run_cli("sweep --preset fig999").exit_code == 2);
}

TEST_CASE("starved validation run fails loudly instead of passing quietly") {
  const RunResult r = run_cli("validate lemma1 --trials 10");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("std_err too large") != std::string::npos);
  CHECK(r.output.find("\"passed\": false") != std::string::npos);
}

TEST_CASE("unknown suite is a usage error") {
  CHECK(run_cli("validate no_such_suite").exit_code == 2);
}

TEST_CASE("quick suites pass on the default scenario") {
  const RunResult r = run_cli("validate thm1 --out cli_validate_thm1.json");
  CHECK(r.exit_code == 0);
  std::ifstream f("cli_validate_thm1.json");
  REQUIRE(f.good());
  std::ostringstream buf;
  buf << f.rdbuf();
  const std::string report = buf.str();
  CHECK(report.find("\"passed\": true") != std::string::npos);
  CHECK(report.find("\"checks\"") != std::string::npos);
  CHECK(report.find("\"tolerance\"") != std::string::npos);
  CHECK(report.find("\"observed\"") != std::string::npos);
  f.close();
  std::remove("cli_validate_thm1.json");
}

TEST_CASE("full validation passes on the default scenario") {
  const RunResult r = run_cli("validate all");
  INFO(r.output.substr(0, 4000));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"passed\": true") != std::string::npos);
}
