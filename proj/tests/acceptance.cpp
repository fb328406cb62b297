// Full-scale acceptance suite: one line per criterion, details for any check
// that fails, nonzero exit if anything fails. Runs every statistical check at
// its production scale (1e5 trials, fixed base seed) so the outcome is
// deterministic for a given build.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ansec/checks.hpp"

namespace {

struct Criterion {
  const char* name;
  std::vector<ansec::CheckResult> (*fn)(const ansec::CheckOptions&);
};

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;

  ansec::CheckOptions opt;
  opt.trials = 100000;
  opt.seed = 1;
  opt.tol = 1e-10;
  opt.threads = 0;
  opt.rate = 2.0;
  opt.eps = 0.01;

  const Criterion criteria[] = {
      {"closed-form-outage-vs-simulation", ansec::criterion_sop_oracle},
      {"eavesdropper-sinr-distributions", ansec::criterion_distributions},
      {"outage-split-closed-form-agreement", ansec::criterion_sop_optimality},
      {"outage-split-regime-boundaries", ansec::criterion_sop_regimes},
      {"outage-split-monotonicity", ansec::criterion_sop_monotonicity},
      {"quantile-shape-and-derivative", ansec::criterion_quantile_shape},
      {"rate-concavity-and-optimum", ansec::criterion_rate_optimality},
      {"asymptotic-approximation-gap", ansec::criterion_largen_gap},
      {"rate-split-monotonicity", ansec::criterion_rate_monotonicity},
      {"curve-shape-qualitative", ansec::criterion_figure_shapes},
      {"simulator-hygiene", ansec::criterion_simulator_hygiene},
  };

  int failures = 0;
  int index = 0;
  const auto t0 = clock::now();
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = clock::now();
    std::vector<ansec::CheckResult> results;
    bool threw = false;
    std::string what;
    try {
      results = c.fn(opt);
    } catch (const std::exception& e) {
      threw = true;
      what = e.what();
    }
    const double secs =
        std::chrono::duration<double>(clock::now() - start).count();
    bool pass = !threw && !results.empty();
    for (const auto& r : results) pass = pass && r.pass;
    std::printf("[%s] criterion-%d %s (%.1fs)\n", pass ? "PASS" : "FAIL",
                index, c.name, secs);
    if (!pass) {
      ++failures;
      if (threw) {
        std::printf("       threw: %s\n", what.c_str());
      }
      for (const auto& r : results) {
        if (!r.pass) {
          std::printf("       %s: observed %.6g vs bound %.6g%s%s\n",
                      r.name.c_str(), r.observed, r.tolerance,
                      r.note.empty() ? "" : " — ", r.note.c_str());
        }
      }
    }
    std::fflush(stdout);
  }
  const double total =
      std::chrono::duration<double>(clock::now() - t0).count();
  std::printf("%d/11 criteria passed (total %.1fs)\n", 11 - failures, total);
  return failures == 0 ? 0 : 1;
}
