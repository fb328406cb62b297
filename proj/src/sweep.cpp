#include "ansec/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "ansec/sop.hpp"

namespace ansec {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_u64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<double> grid_of(const SweepSpec& s) {
  std::vector<double> g(s.steps);
  for (int i = 0; i < s.steps; ++i)
    g[i] = s.start + (s.stop - s.start) * double(i) / double(s.steps - 1);
  return g;
}

// Applies a non-xi swept value onto the scenario.
void apply_variable(SweepVariable var, double value, SystemConfig& cfg,
                    std::optional<double>& rate, std::optional<double>& eps) {
  switch (var) {
    case SweepVariable::Xi: break;  // abscissa, not a scenario field
    case SweepVariable::Tau: cfg.tau = value; break;
    case SweepVariable::Rs: rate = value; break;
    case SweepVariable::Eps: eps = value; break;
    case SweepVariable::LambdaE: cfg.lambda_e = value; break;
    case SweepVariable::PowerDbm: cfg.power = dbm_to_linear(value); break;
    case SweepVariable::NAntennas: cfg.n_antennas = int(std::lround(value)); break;
  }
}

void check_spec(const SweepSpec& s) {
  if (!(s.start < s.stop))
    throw ConfigError("sweep: start must be < stop");
  if (s.steps < 2) throw ConfigError("sweep: steps must be >= 2");
  const bool curve_mode = s.mode == SweepMode::SopCurve ||
                          s.mode == SweepMode::RateCurve ||
                          s.mode == SweepMode::McValidate;
  if (curve_mode && s.variable != SweepVariable::Xi)
    throw ConfigError("sweep: curve/validate modes sweep xi only");
  if (!curve_mode && s.variable == SweepVariable::Xi)
    throw ConfigError("sweep: xi is the decision variable in optimizing modes");
  const bool sop_mode = s.mode == SweepMode::SopCurve ||
                        s.mode == SweepMode::SopOpt ||
                        s.mode == SweepMode::McValidate;
  if (s.variable == SweepVariable::Rs) {
    if (s.mode != SweepMode::SopOpt)
      throw ConfigError("sweep: rs can only be swept in sop-opt mode");
    if (s.rate) throw ConfigError("sweep: swept variable also fixed: rs");
  } else if (sop_mode && !s.rate) {
    throw ConfigError("sweep: sop modes need a fixed rate");
  }
  if (s.variable == SweepVariable::Eps) {
    if (s.mode != SweepMode::RateOpt)
      throw ConfigError("sweep: eps can only be swept in rate-opt mode");
    if (s.eps) throw ConfigError("sweep: swept variable also fixed: eps");
  } else if (!sop_mode && !s.eps) {
    throw ConfigError("sweep: rate modes need a fixed eps");
  }
  if (s.variable == SweepVariable::Xi &&
      (s.start < 0.0 || s.stop > 1.0))
    throw ConfigError("sweep: xi grid must lie inside [0,1]");
  if (s.variable == SweepVariable::Tau &&
      (s.start < 0.0 || s.stop > 1.0))
    throw ConfigError("sweep: tau grid must lie inside [0,1]");
  try {
    validate(s.base);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("sweep base config: ") + e.what());
  }
}

std::vector<std::string> columns_for(const SweepSpec& s) {
  const std::string var = sweep_variable_name(s.variable);
  switch (s.mode) {
    case SweepMode::SopCurve: return {"label", "xi", "sop", "status"};
    case SweepMode::SopOpt:
      return {"label", var, "xi_star", "sop_min", "regime"};
    case SweepMode::RateCurve: return {"label", "xi", "rs"};
    case SweepMode::RateOpt:
      return {"label", var, "xi_star", "rs_star", "regime"};
    case SweepMode::McValidate:
      return {"label", "xi", "sop_closed", "mc_mean", "mc_std_err", "z_score",
              "trials", "seed"};
  }
  throw ConfigError("sweep: unknown mode");
}

std::vector<std::string> eval_point(const SweepSpec& s, double value) {
  SystemConfig cfg = s.base;
  std::optional<double> rate = s.rate;
  std::optional<double> eps = s.eps;
  apply_variable(s.variable, value, cfg, rate, eps);

  switch (s.mode) {
    case SweepMode::SopCurve: {
      const SopProblem prob = make_sop_problem(cfg, *rate);
      try {
        return {s.label, fmt(value), fmt(sop(value, prob)), "ok"};
      } catch (const FeasibilityError&) {
        return {s.label, fmt(value), "", "infeasible"};
      }
    }
    case SweepMode::SopOpt: {
      const SopProblem prob = make_sop_problem(cfg, *rate);
      const ParDecision dec = optimal_par_sop(prob);
      return {s.label, fmt(value), dec.xi ? fmt(*dec.xi) : "",
              dec.objective ? fmt(*dec.objective) : "",
              regime_name(dec.regime)};
    }
    case SweepMode::RateCurve: {
      const RateProblem prob = make_rate_problem(cfg, *eps);
      const RhoSolver solver = make_rho_solver(prob, s.rho_mode, s.tol);
      return {s.label, fmt(value), fmt(secrecy_rate(value, prob, solver))};
    }
    case SweepMode::RateOpt: {
      const RateProblem prob = make_rate_problem(cfg, *eps);
      const RhoSolver solver = make_rho_solver(prob, s.rho_mode, s.tol);
      const ParDecision dec = optimal_par_rate(prob, solver);
      return {s.label, fmt(value), dec.xi ? fmt(*dec.xi) : "",
              dec.objective ? fmt(*dec.objective) : "",
              regime_name(dec.regime)};
    }
    case SweepMode::McValidate: {
      const SopProblem prob = make_sop_problem(cfg, *rate);
      std::string closed;
      try {
        closed = fmt(sop(value, prob));
      } catch (const FeasibilityError&) {
        // keep empty: certain outage below omega; the estimate still runs
      }
      mc::McConfig m;
      m.trials = s.trials;
      m.seed = s.seed;
      m.fidelity = s.fidelity;
      m.threads = s.threads;
      const mc::McEstimate est = mc::empirical_sop(cfg, *rate, value, m);
      std::string z;
      if (!closed.empty() && est.std_err > 0.0) {
        const double cf = sop(value, prob);
        z = fmt((est.mean - cf) / est.std_err);
      }
      return {s.label,        fmt(value),        closed,
              fmt(est.mean),  fmt(est.std_err),  z,
              fmt_u64(std::uint64_t(est.trials)), fmt_u64(est.seed)};
    }
  }
  throw ConfigError("sweep: unknown mode");
}

}  // namespace

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::Xi: return "xi";
    case SweepVariable::Tau: return "tau";
    case SweepVariable::Rs: return "rs";
    case SweepVariable::Eps: return "eps";
    case SweepVariable::LambdaE: return "lambda_e";
    case SweepVariable::PowerDbm: return "power_dbm";
    case SweepVariable::NAntennas: return "n_antennas";
  }
  return "?";
}

const char* sweep_mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::SopCurve: return "sop-curve";
    case SweepMode::SopOpt: return "sop-opt";
    case SweepMode::RateCurve: return "rate-curve";
    case SweepMode::RateOpt: return "rate-opt";
    case SweepMode::McValidate: return "mc-validate";
  }
  return "?";
}

SweepTable run_sweep(const SweepSpec& spec) {
  check_spec(spec);
  SweepTable table;
  table.columns = columns_for(spec);
  append_sweep(table, spec);
  return table;
}

void append_sweep(SweepTable& table, const SweepSpec& spec) {
  check_spec(spec);
  const auto cols = columns_for(spec);
  if (table.columns.empty()) table.columns = cols;
  if (table.columns != cols)
    throw ConfigError("sweep: appended curve has a different column set");

  const auto grid = grid_of(spec);
  std::vector<std::vector<std::string>> rows(grid.size());

  if (spec.mode == SweepMode::McValidate) {
    // Monte-Carlo points parallelize internally; keep the outer loop serial.
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows[i] = eval_point(spec, grid[i]);
  } else {
    long hw = std::thread::hardware_concurrency();
    if (hw <= 0) hw = 1;
    const long n_threads = std::min<long>(
        spec.threads > 0 ? spec.threads : hw, long(grid.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= grid.size()) return;
        try {
          rows[i] = eval_point(spec, grid[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (long t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  for (auto& r : rows) table.rows.push_back(std::move(r));
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream os;
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << row[c];
    os << "\n";
  }
  return os.str();
}

namespace {

SystemConfig base20() {
  SystemConfig cfg;
  cfg.n_antennas = 20;
  cfg.power = 1.0;
  cfg.alpha = 4.0;
  cfg.r_bob = 1.0;
  cfg.lambda_e = 2.0;
  cfg.tau = 0.0;
  cfg.gamma_hat = 20.0;
  return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};
}

std::vector<SweepSpec> preset(const std::string& name) {
  std::vector<SweepSpec> out;
  if (name == "fig1") {
    // SOP vs xi at several antenna counts (estimated gain tied to N).
    for (int n : {2, 4, 8}) {
      SweepSpec s;
      s.mode = SweepMode::SopCurve;
      s.variable = SweepVariable::Xi;
      s.start = 0.04;
      s.stop = 1.0;
      s.steps = 49;
      s.base.n_antennas = n;
      s.base.power = dbm_to_linear(10.0);
      s.base.lambda_e = 2.0;
      s.base.tau = 0.3;
      s.base.gamma_hat = n;
      s.rate = 2.0;
      s.label = "N=" + std::to_string(n);
      out.push_back(s);
    }
  } else if (name == "fig2") {
    // Outage-optimal split vs estimation error at several target rates.
    for (double rs : {1.0, 2.0, 3.0}) {
      SweepSpec s;
      s.mode = SweepMode::SopOpt;
      s.variable = SweepVariable::Tau;
      s.start = 0.0;
      s.stop = 0.98;
      s.steps = 50;
      s.base = base20();
      s.rate = rs;
      s.label = "RS=" + fmt(rs);
      out.push_back(s);
    }
  } else if (name == "fig3") {
    // Minimum SOP vs estimation error; power/rate pairs cross in tau.
    for (double p_dbm : {0.0, 10.0}) {
      for (double rs : {1.0, 2.0}) {
        SweepSpec s;
        s.mode = SweepMode::SopOpt;
        s.variable = SweepVariable::Tau;
        s.start = 0.0;
        s.stop = 0.98;
        s.steps = 50;
        s.base = base20();
        s.base.power = dbm_to_linear(p_dbm);
        s.rate = rs;
        s.label = "P=" + fmt(p_dbm) + "dBm RS=" + fmt(rs);
        out.push_back(s);
      }
    }
  } else if (name == "fig4") {
    // Secrecy rate vs xi at several antenna counts.
    for (int n : {2, 4, 8}) {
      SweepSpec s;
      s.mode = SweepMode::RateCurve;
      s.variable = SweepVariable::Xi;
      s.start = 0.0;
      s.stop = 1.0;
      s.steps = 51;
      s.base.n_antennas = n;
      s.base.power = dbm_to_linear(10.0);
      s.base.lambda_e = 5.0;
      s.base.tau = 0.2;
      s.base.gamma_hat = n;
      s.eps = 0.01;
      s.label = "N=" + std::to_string(n);
      out.push_back(s);
    }
  } else if (name == "fig5") {
    // Rate-optimal split vs estimation error at several (density, cap).
    struct P { double lam, eps; };
    for (P p : {P{2.0, 0.01}, P{5.0, 0.01}, P{2.0, 0.1}}) {
      SweepSpec s;
      s.mode = SweepMode::RateOpt;
      s.variable = SweepVariable::Tau;
      s.start = 0.0;
      s.stop = 0.98;
      s.steps = 50;
      s.base = base20();
      s.base.lambda_e = p.lam;
      s.eps = p.eps;
      s.label = "lambdaE=" + fmt(p.lam) + " eps=" + fmt(p.eps);
      out.push_back(s);
    }
  } else if (name == "fig6") {
    // Maximum secrecy rate vs estimation error; exact and approximate
    // quantile solvers at two power levels.
    for (double p_dbm : {0.0, 10.0}) {
      for (RhoMode mode : {RhoMode::Exact, RhoMode::LargeN}) {
        SweepSpec s;
        s.mode = SweepMode::RateOpt;
        s.variable = SweepVariable::Tau;
        s.start = 0.0;
        s.stop = 0.98;
        s.steps = 50;
        s.base = base20();
        s.base.power = dbm_to_linear(p_dbm);
        s.eps = 0.01;
        s.rho_mode = mode;
        s.label = "P=" + fmt(p_dbm) + "dBm " +
                  (mode == RhoMode::Exact ? "exact" : "approx");
        out.push_back(s);
      }
    }
  } else {
    throw ConfigError("unknown preset '" + name +
                      "' (expected fig1..fig6)");
  }
  return out;
}

}  // namespace ansec
