#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ansec/mc.hpp"
#include "ansec/params.hpp"
#include "ansec/rate.hpp"

namespace ansec {

enum class SweepVariable { Xi, Tau, Rs, Eps, LambdaE, PowerDbm, NAntennas };
enum class SweepMode { SopCurve, SopOpt, RateCurve, RateOpt, McValidate };

const char* sweep_variable_name(SweepVariable v);
const char* sweep_mode_name(SweepMode m);

// One curve: a variable swept over a linear grid against a base scenario.
// Mode-specific fixed parameters live in rate/eps; the swept variable must
// not also be fixed (xi sweeps only make sense for curve/validate modes,
// rs sweeps require rate to be absent, eps sweeps require eps absent).
struct SweepSpec {
  SweepMode mode = SweepMode::SopCurve;
  SweepVariable variable = SweepVariable::Xi;
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  SystemConfig base;
  std::optional<double> rate;  // fixed R_S (SOP modes, mc-validate)
  std::optional<double> eps;   // fixed outage cap (rate modes)

  RhoMode rho_mode = RhoMode::Exact;
  double tol = 1e-10;

  // Monte-Carlo knobs (McValidate mode).
  long trials = 100000;
  std::uint64_t seed = 1;
  mc::Fidelity fidelity = mc::Fidelity::SinrLevel;

  int threads = 0;            // worker pool size; 0 = hardware concurrency
  std::string label;          // curve label, first CSV column
};

// Rows are pre-formatted cells ("%.12g" for numbers, "" for absent values),
// so CSV output is byte-stable for identical inputs.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Validates the spec (ConfigError naming the violated invariant), evaluates
// every grid point (dispatching to a worker pool; rows stay in grid order),
// and returns one row per point. Suspended optima leave the xi*/objective
// cells empty with regime tag "suspend".
SweepTable run_sweep(const SweepSpec& spec);

// Runs the spec and appends its rows to a table with matching columns.
void append_sweep(SweepTable& table, const SweepSpec& spec);

std::string to_csv(const SweepTable& table);

// Named figure recipes: "fig1".."fig6". Each is a list of curves sharing one
// mode/column set. Unknown names raise ConfigError.
std::vector<SweepSpec> preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace ansec
