// Command-line front end: secrecy-outage curves and optima, outage-capped
// rate curves and optima, Monte-Carlo validation sweeps, named presets, and
// the validation suites. CSV (or JSON, for validate) goes to stdout or --out.
//
// Exit codes: 0 success, 1 failed assertion (validate), 2 usage/config error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ansec/checks.hpp"
#include "ansec/config_io.hpp"
#include "ansec/errors.hpp"
#include "ansec/sweep.hpp"

namespace {

struct CommonOpts {
  std::uint64_t seed = 1;
  long trials = 100000;
  double tol = 1e-10;
  int threads = 0;
  std::string out;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_config = true) {
  cmd->add_option("--seed", c.seed, "Base RNG seed; all randomness derives from it")
      ->capture_default_str();
  cmd->add_option("--trials", c.trials, "Monte-Carlo trials per estimate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", c.tol, "Root-finding interval width")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads,
                  "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
  if (with_config)
    cmd->add_option("--config", c.config_path,
                    "Scenario config file (default: built-in 4-antenna "
                    "example scenario)");
}

// Built-in fallback scenario so every subcommand works out of the box.
ansec::SystemConfig config_or_default(const CommonOpts& c) {
  if (!c.config_path.empty()) return ansec::load_config(c.config_path);
  ansec::SystemConfig cfg;
  cfg.n_antennas = 4;
  cfg.power = 10.0;
  cfg.alpha = 4.0;
  cfg.r_bob = 1.0;
  cfg.lambda_e = 2.0;
  cfg.tau = 0.3;
  cfg.gamma_hat = 4.0;
  return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ansec::ConfigError("cannot open output file: " + out_path);
  f << text;
  f.flush();
  if (!f) throw ansec::ConfigError("write failed: " + out_path);
}

ansec::SweepVariable parse_variable(const std::string& name) {
  for (ansec::SweepVariable v :
       {ansec::SweepVariable::Xi, ansec::SweepVariable::Tau,
        ansec::SweepVariable::Rs, ansec::SweepVariable::Eps,
        ansec::SweepVariable::LambdaE, ansec::SweepVariable::PowerDbm,
        ansec::SweepVariable::NAntennas})
    if (name == ansec::sweep_variable_name(v)) return v;
  throw ansec::ConfigError(
      "unknown sweep variable '" + name +
      "' (expected xi, tau, rs, eps, lambda_e, power_dbm, n_antennas)");
}

ansec::SweepMode parse_mode(const std::string& name) {
  for (ansec::SweepMode m :
       {ansec::SweepMode::SopCurve, ansec::SweepMode::SopOpt,
        ansec::SweepMode::RateCurve, ansec::SweepMode::RateOpt,
        ansec::SweepMode::McValidate})
    if (name == ansec::sweep_mode_name(m)) return m;
  throw ansec::ConfigError(
      "unknown sweep mode '" + name +
      "' (expected sop-curve, sop-opt, rate-curve, rate-opt, mc-validate)");
}

ansec::RhoMode parse_rho_mode(const std::string& name) {
  if (name == "exact") return ansec::RhoMode::Exact;
  if (name == "largen") return ansec::RhoMode::LargeN;
  throw ansec::ConfigError("unknown quantile solver '" + name +
                           "' (expected exact or largen)");
}

ansec::mc::Fidelity fidelity_of(const std::string& name) {
  if (name == "sinr") return ansec::mc::Fidelity::SinrLevel;
  if (name == "channel") return ansec::mc::Fidelity::ChannelLevel;
  throw ansec::ConfigError("unknown fidelity '" + name +
                           "' (expected sinr or channel)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ansec: secrecy outage and secrecy rate for artificial-noise "
      "beamforming against randomly located eavesdroppers"};
  app.require_subcommand(1);

  // --- sop-curve ------------------------------------------------------
  CommonOpts c_curve;
  double curve_rate = 2.0, curve_start = 0.02, curve_stop = 1.0;
  int curve_steps = 50;
  std::string curve_label = "sop";
  auto* sop_curve = app.add_subcommand(
      "sop-curve", "Closed-form secrecy outage probability over a xi grid");
  add_common(sop_curve, c_curve);
  sop_curve->add_option("--rate", curve_rate, "Target secrecy rate R_S")
      ->capture_default_str();
  sop_curve->add_option("--start", curve_start, "First xi")->capture_default_str();
  sop_curve->add_option("--stop", curve_stop, "Last xi")->capture_default_str();
  sop_curve->add_option("--steps", curve_steps, "Grid points")
      ->capture_default_str();
  sop_curve->add_option("--label", curve_label, "Curve label column")
      ->capture_default_str();

  // --- sop-opt --------------------------------------------------------
  CommonOpts c_sopopt;
  double sopopt_rate = 2.0, sopopt_start = 0.0, sopopt_stop = 0.9;
  int sopopt_steps = 46;
  std::string sopopt_var = "tau", sopopt_label;
  auto* sop_opt = app.add_subcommand(
      "sop-opt", "Outage-minimizing power split over a parameter sweep");
  add_common(sop_opt, c_sopopt);
  auto* sopopt_rate_opt =
      sop_opt->add_option("--rate", sopopt_rate, "Target secrecy rate R_S")
          ->capture_default_str();
  sop_opt->add_option("--var", sopopt_var,
                      "Swept variable (tau, rs, lambda_e, power_dbm, "
                      "n_antennas)")
      ->capture_default_str();
  sop_opt->add_option("--start", sopopt_start, "Sweep start")
      ->capture_default_str();
  sop_opt->add_option("--stop", sopopt_stop, "Sweep stop")->capture_default_str();
  sop_opt->add_option("--steps", sopopt_steps, "Grid points")
      ->capture_default_str();
  sop_opt->add_option("--label", sopopt_label,
                      "Curve label column (default: swept variable)");

  // --- rate-curve -----------------------------------------------------
  CommonOpts c_rcurve;
  double rcurve_eps = 0.01, rcurve_start = 0.0, rcurve_stop = 1.0;
  int rcurve_steps = 51;
  std::string rcurve_rho = "exact", rcurve_label = "rate";
  auto* rate_curve = app.add_subcommand(
      "rate-curve",
      "Outage-capped secrecy rate over a xi grid (constraint held active)");
  add_common(rate_curve, c_rcurve);
  rate_curve->add_option("--eps", rcurve_eps, "Outage cap")
      ->capture_default_str();
  rate_curve->add_option("--start", rcurve_start, "First xi")
      ->capture_default_str();
  rate_curve->add_option("--stop", rcurve_stop, "Last xi")
      ->capture_default_str();
  rate_curve->add_option("--steps", rcurve_steps, "Grid points")
      ->capture_default_str();
  rate_curve
      ->add_option("--rho-mode", rcurve_rho,
                   "Quantile solver: exact or largen")
      ->capture_default_str();
  rate_curve->add_option("--label", rcurve_label, "Curve label column")
      ->capture_default_str();

  // --- rate-opt -------------------------------------------------------
  CommonOpts c_ropt;
  double ropt_eps = 0.01, ropt_start = 0.0, ropt_stop = 0.9;
  int ropt_steps = 46;
  std::string ropt_var = "tau", ropt_rho = "exact", ropt_label;
  auto* rate_opt = app.add_subcommand(
      "rate-opt", "Rate-maximizing power split over a parameter sweep");
  add_common(rate_opt, c_ropt);
  auto* ropt_eps_opt = rate_opt->add_option("--eps", ropt_eps, "Outage cap")
                           ->capture_default_str();
  rate_opt->add_option("--var", ropt_var,
                       "Swept variable (tau, eps, lambda_e, power_dbm, "
                       "n_antennas)")
      ->capture_default_str();
  rate_opt->add_option("--start", ropt_start, "Sweep start")
      ->capture_default_str();
  rate_opt->add_option("--stop", ropt_stop, "Sweep stop")->capture_default_str();
  rate_opt->add_option("--steps", ropt_steps, "Grid points")
      ->capture_default_str();
  rate_opt->add_option("--rho-mode", ropt_rho, "Quantile solver: exact or largen")
      ->capture_default_str();
  rate_opt->add_option("--label", ropt_label,
                       "Curve label column (default: swept variable)");

  // --- mc-validate ----------------------------------------------------
  CommonOpts c_mc;
  double mc_rate = 2.0, mc_start = 0.1, mc_stop = 1.0;
  int mc_steps = 10;
  std::string mc_fidelity = "sinr", mc_label = "mc";
  auto* mc_validate = app.add_subcommand(
      "mc-validate",
      "Closed-form SOP vs Monte-Carlo estimate with z-scores over a xi grid");
  add_common(mc_validate, c_mc);
  mc_validate->add_option("--rate", mc_rate, "Target secrecy rate R_S")
      ->capture_default_str();
  mc_validate->add_option("--start", mc_start, "First xi")
      ->capture_default_str();
  mc_validate->add_option("--stop", mc_stop, "Last xi")->capture_default_str();
  mc_validate->add_option("--steps", mc_steps, "Grid points")
      ->capture_default_str();
  mc_validate
      ->add_option("--fidelity", mc_fidelity,
                   "Sampling fidelity: sinr (reduced laws) or channel "
                   "(full vectors)")
      ->capture_default_str();
  mc_validate->add_option("--label", mc_label, "Curve label column")
      ->capture_default_str();

  // --- sweep ----------------------------------------------------------
  CommonOpts c_sweep;
  std::string sweep_preset, sweep_mode = "sop-curve", sweep_var = "xi";
  double sweep_start = 0.02, sweep_stop = 1.0, sweep_rate = 0.0,
         sweep_eps = 0.0;
  int sweep_steps = 50;
  std::string sweep_rho = "exact", sweep_fidelity = "sinr", sweep_label;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Custom sweep or a named preset (fig1..fig6)");
  add_common(sweep_cmd, c_sweep);
  auto* preset_opt = sweep_cmd->add_option(
      "--preset", sweep_preset,
      "Named recipe: fig1..fig6 (overrides the custom sweep flags)");
  sweep_cmd->add_option("--mode", sweep_mode,
                        "sop-curve, sop-opt, rate-curve, rate-opt, mc-validate")
      ->capture_default_str();
  sweep_cmd->add_option("--var", sweep_var, "Swept variable")
      ->capture_default_str();
  sweep_cmd->add_option("--start", sweep_start, "Sweep start")
      ->capture_default_str();
  sweep_cmd->add_option("--stop", sweep_stop, "Sweep stop")
      ->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_steps, "Grid points")
      ->capture_default_str();
  auto* sweep_rate_opt =
      sweep_cmd->add_option("--rate", sweep_rate, "Fixed target rate");
  auto* sweep_eps_opt =
      sweep_cmd->add_option("--eps", sweep_eps, "Fixed outage cap");
  sweep_cmd->add_option("--rho-mode", sweep_rho, "exact or largen")
      ->capture_default_str();
  sweep_cmd->add_option("--fidelity", sweep_fidelity, "sinr or channel")
      ->capture_default_str();
  sweep_cmd->add_option("--label", sweep_label, "Curve label column");
  auto* sweep_cfg_opt = sweep_cmd->get_option("--config");
  preset_opt->excludes(sweep_cfg_opt);

  // --- validate -------------------------------------------------------
  CommonOpts c_val;
  std::string val_suite = "all";
  double val_rate = 2.0, val_eps = 0.01;
  auto* validate_cmd = app.add_subcommand(
      "validate",
      "Run a validation suite and print a JSON report (nonzero exit on any "
      "failed check)");
  add_common(validate_cmd, c_val);
  validate_cmd
      ->add_option("suite", val_suite,
                   "lemma1, thm1, lemma2, thm2, props, or all")
      ->capture_default_str();
  validate_cmd
      ->add_option("--rate", val_rate,
                   "Target rate for the config-anchored agreement suite")
      ->capture_default_str();
  validate_cmd
      ->add_option("--eps", val_eps,
                   "Outage cap for the config-anchored checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto fill_common = [](ansec::SweepSpec& s, const CommonOpts& c) {
      s.tol = c.tol;
      s.trials = c.trials;
      s.seed = c.seed;
      s.threads = c.threads;
    };

    if (sop_curve->parsed()) {
      ansec::SweepSpec s;
      s.mode = ansec::SweepMode::SopCurve;
      s.variable = ansec::SweepVariable::Xi;
      s.start = curve_start;
      s.stop = curve_stop;
      s.steps = curve_steps;
      s.base = config_or_default(c_curve);
      s.rate = curve_rate;
      s.label = curve_label;
      fill_common(s, c_curve);
      emit(to_csv(run_sweep(s)), c_curve.out);
      return 0;
    }

    if (sop_opt->parsed()) {
      ansec::SweepSpec s;
      s.mode = ansec::SweepMode::SopOpt;
      s.variable = parse_variable(sopopt_var);
      s.start = sopopt_start;
      s.stop = sopopt_stop;
      s.steps = sopopt_steps;
      s.base = config_or_default(c_sopopt);
      if (sopopt_rate_opt->count() > 0 ||
          s.variable != ansec::SweepVariable::Rs)
        s.rate = sopopt_rate;
      s.label = sopopt_label.empty() ? sopopt_var : sopopt_label;
      fill_common(s, c_sopopt);
      emit(to_csv(run_sweep(s)), c_sopopt.out);
      return 0;
    }

    if (rate_curve->parsed()) {
      ansec::SweepSpec s;
      s.mode = ansec::SweepMode::RateCurve;
      s.variable = ansec::SweepVariable::Xi;
      s.start = rcurve_start;
      s.stop = rcurve_stop;
      s.steps = rcurve_steps;
      s.base = config_or_default(c_rcurve);
      s.eps = rcurve_eps;
      s.rho_mode = parse_rho_mode(rcurve_rho);
      s.label = rcurve_label;
      fill_common(s, c_rcurve);
      emit(to_csv(run_sweep(s)), c_rcurve.out);
      return 0;
    }

    if (rate_opt->parsed()) {
      ansec::SweepSpec s;
      s.mode = ansec::SweepMode::RateOpt;
      s.variable = parse_variable(ropt_var);
      s.start = ropt_start;
      s.stop = ropt_stop;
      s.steps = ropt_steps;
      s.base = config_or_default(c_ropt);
      if (ropt_eps_opt->count() > 0 || s.variable != ansec::SweepVariable::Eps)
        s.eps = ropt_eps;
      s.rho_mode = parse_rho_mode(ropt_rho);
      s.label = ropt_label.empty() ? ropt_var : ropt_label;
      fill_common(s, c_ropt);
      emit(to_csv(run_sweep(s)), c_ropt.out);
      return 0;
    }

    if (mc_validate->parsed()) {
      ansec::SweepSpec s;
      s.mode = ansec::SweepMode::McValidate;
      s.variable = ansec::SweepVariable::Xi;
      s.start = mc_start;
      s.stop = mc_stop;
      s.steps = mc_steps;
      s.base = config_or_default(c_mc);
      s.rate = mc_rate;
      s.fidelity = fidelity_of(mc_fidelity);
      s.label = mc_label;
      fill_common(s, c_mc);
      emit(to_csv(run_sweep(s)), c_mc.out);
      return 0;
    }

    if (sweep_cmd->parsed()) {
      ansec::SweepTable table;
      if (preset_opt->count() > 0) {
        for (ansec::SweepSpec s : ansec::preset(sweep_preset)) {
          s.tol = c_sweep.tol;
          s.trials = c_sweep.trials;
          s.seed = c_sweep.seed;
          s.threads = c_sweep.threads;
          append_sweep(table, s);
        }
      } else {
        ansec::SweepSpec s;
        s.mode = parse_mode(sweep_mode);
        s.variable = parse_variable(sweep_var);
        s.start = sweep_start;
        s.stop = sweep_stop;
        s.steps = sweep_steps;
        s.base = config_or_default(c_sweep);
        if (sweep_rate_opt->count() > 0) s.rate = sweep_rate;
        if (sweep_eps_opt->count() > 0) s.eps = sweep_eps;
        s.rho_mode = parse_rho_mode(sweep_rho);
        s.fidelity = fidelity_of(sweep_fidelity);
        s.label = sweep_label.empty() ? sweep_mode : sweep_label;
        fill_common(s, c_sweep);
        append_sweep(table, s);
      }
      emit(to_csv(table), c_sweep.out);
      return 0;
    }

    if (validate_cmd->parsed()) {
      const ansec::SystemConfig base = config_or_default(c_val);
      ansec::CheckOptions opt;
      opt.trials = c_val.trials;
      opt.seed = c_val.seed;
      opt.tol = c_val.tol;
      opt.threads = c_val.threads;
      opt.rate = val_rate;
      opt.eps = val_eps;
      const auto results = ansec::run_suite(val_suite, base, opt);
      emit(ansec::report_json(val_suite, base, results), c_val.out);
      for (const auto& r : results)
        if (!r.pass) return 1;
      return results.empty() ? 1 : 0;
    }

    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const ansec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ansec::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const ansec::FeasibilityError& e) {
    std::cerr << "infeasible request: " << e.what() << "\n";
    return 2;
  } catch (const ansec::BracketError& e) {
    std::cerr << "numerical bracketing error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
