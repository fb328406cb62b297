#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ansec/params.hpp"

namespace ansec {

// One verifiable assertion: what was measured, the bound it must meet, and
// whether it did. `observed` and `tolerance` are in the same units (the
// comparison direction is encoded in the check itself).
struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
  std::string note;
};

struct CheckOptions {
  long trials = 100000;     // Monte-Carlo budget per estimate
  std::uint64_t seed = 1;   // base seed for every randomized piece
  double tol = 1e-10;       // root-finding interval width
  int threads = 0;          // 0 = hardware concurrency
  double rate = 1.0;        // target rate for the config-anchored suite
  double eps = 0.01;        // outage cap for the config-anchored suite
};

// The acceptance criteria, one function each, at full scale by default.
// Criterion 1 validates the closed-form SOP against channel-level
// Monte-Carlo on the reference curves; its options.trials is the per-point
// budget (the trial-budget guard fails the check when the worst standard
// error exceeds 0.02 instead of passing vacuously).
std::vector<CheckResult> criterion_sop_oracle(const CheckOptions& opt);
std::vector<CheckResult> criterion_distributions(const CheckOptions& opt);
std::vector<CheckResult> criterion_sop_optimality(const CheckOptions& opt);
std::vector<CheckResult> criterion_sop_regimes(const CheckOptions& opt);
std::vector<CheckResult> criterion_sop_monotonicity(const CheckOptions& opt);
std::vector<CheckResult> criterion_quantile_shape(const CheckOptions& opt);
std::vector<CheckResult> criterion_rate_optimality(const CheckOptions& opt);
std::vector<CheckResult> criterion_largen_gap(const CheckOptions& opt);
std::vector<CheckResult> criterion_rate_monotonicity(const CheckOptions& opt);
std::vector<CheckResult> criterion_figure_shapes(const CheckOptions& opt);
std::vector<CheckResult> criterion_simulator_hygiene(const CheckOptions& opt);

// Named validation suites for the CLI: lemma1, thm1, lemma2, thm2, props.
// The base config anchors the config-dependent checks (lemma1 runs on it
// directly); unknown suite names raise ConfigError.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const SystemConfig& base,
                                   const CheckOptions& opt);
std::vector<std::string> suite_names();

// Machine-readable report: {"suite", "passed", "checks": [...]}.
std::string report_json(const std::string& suite, const SystemConfig& base,
                        const std::vector<CheckResult>& results);

// One-sample Kolmogorov-Smirnov distance between `samples` and the CDF,
// restricted to CDF arguments in [x_lo, x_hi] (pass -inf/+inf for the full
// line). Exposed for the distribution tests.
double ks_statistic(std::vector<double> samples, double x_lo, double x_hi,
                    const std::function<double(double)>& cdf);

}  // namespace ansec
