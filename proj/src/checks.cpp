#include "ansec/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ansec/config_io.hpp"
#include "ansec/mc.hpp"
#include "ansec/numerics.hpp"
#include "ansec/rate.hpp"
#include "ansec/sop.hpp"
#include "ansec/sweep.hpp"

namespace ansec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// pass when observed <= bound
CheckResult check_le(std::string name, double observed, double bound,
                     std::string note = "") {
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = bound;
  r.observed = observed;
  r.pass = observed <= bound;
  r.note = std::move(note);
  return r;
}

// pass when observed >= bound
CheckResult check_ge(std::string name, double observed, double bound,
                     std::string note = "") {
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = bound;
  r.observed = observed;
  r.pass = observed >= bound;
  r.note = std::move(note);
  return r;
}

// Deterministic parameter-set generator for the randomized checks.
struct Rand {
  std::mt19937_64 gen;
  explicit Rand(std::uint64_t seed) : gen(seed) {}
  double unit() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
  }
  double range(double a, double b) { return a + (b - a) * unit(); }
  double log_range(double a, double b) {
    return a * std::exp(std::log(b / a) * unit());
  }
  int int_range(int a, int b) {
    const int span = b - a + 1;
    int v = a + int(std::floor(unit() * span));
    return std::min(v, b);
  }
};

// The reference agreement curves: moderate power, strong estimation error,
// dense eavesdroppers, estimated gain tied to the antenna count.
SystemConfig reference_curve_config(int n) {
  SystemConfig cfg;
  cfg.n_antennas = n;
  cfg.power = 10.0;
  cfg.alpha = 4.0;
  cfg.r_bob = 1.0;
  cfg.lambda_e = 2.0;
  cfg.tau = 0.3;
  cfg.gamma_hat = double(n);
  return cfg;
}
constexpr double kReferenceRate = 2.0;

// The 20-antenna baseline behind the shape and approximation-gap checks.
SystemConfig dense_array_config() {
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

struct AgreementOutcome {
  int agree = 0;
  int points = 0;
  double worst_z = 0.0;
  double worst_se = 0.0;
};

// Closed-form SOP vs channel-level Monte-Carlo on a 20-point feasible grid.
AgreementOutcome agreement_curve(const SystemConfig& cfg, double rate,
                                 const CheckOptions& opt, std::uint64_t salt) {
  const SopProblem prob = make_sop_problem(cfg, rate);
  const double omega = prob.derived.omega.value();
  AgreementOutcome out;
  for (int i = 1; i <= 20; ++i) {
    const double xi = omega + (1.0 - omega) * double(i) / 20.0;
    const double cf = sop(xi, prob);
    mc::McConfig m;
    m.trials = opt.trials;
    m.seed = opt.seed + salt * 7919 + std::uint64_t(i) * 1009;
    m.fidelity = mc::Fidelity::ChannelLevel;
    m.threads = opt.threads;
    const mc::McEstimate est = mc::empirical_sop(cfg, rate, xi, m);
    // Near-certain outage collapses the sample to a constant (std_err == 0)
    // even when the estimate is exact; the binomial error implied by the
    // closed-form probability itself stays meaningful there, so score the
    // difference against the larger of the two.
    const double se_cf = std::sqrt(std::max(cf * (1.0 - cf), 0.0) /
                                   double(std::max<long>(opt.trials, 1)));
    const double se = std::max({est.std_err, se_cf, 1e-12});
    const double z = std::abs(est.mean - cf) / se;
    out.worst_z = std::max(out.worst_z, z);
    out.worst_se = std::max(out.worst_se, est.std_err);
    if (z <= 3.0) ++out.agree;
    ++out.points;
  }
  return out;
}

// Worst-case precision a Bernoulli estimate can guarantee at this budget;
// keeps a tiny --trials from passing the agreement bar vacuously.
double precision_budget(long trials, double worst_se) {
  return std::max(worst_se, 0.5 / std::sqrt(double(std::max<long>(trials, 1))));
}

// The agreement check run directly on a user-supplied config.
std::vector<CheckResult> config_agreement_suite(const SystemConfig& base,
                                                const CheckOptions& opt) {
  std::vector<CheckResult> out;
  const DerivedParams d = derive(base, opt.rate);
  if (!(d.kappa > d.t_pow.value() - 1.0)) {
    out.push_back(check_le(
        "agreement_feasible_rate", 1.0, 0.0,
        "no power split supports the target rate on this config"));
    return out;
  }
  const AgreementOutcome res = agreement_curve(base, opt.rate, opt, 99);
  out.push_back(check_ge("agreement_within_3se", res.agree, 18.0,
                         "of " + std::to_string(res.points) +
                             " grid points; worst |z| = " + fmt(res.worst_z)));
  CheckResult g = check_le("agreement_std_err_budget",
                           precision_budget(opt.trials, res.worst_se), 0.02);
  if (!g.pass) g.note = "std_err too large: raise --trials";
  out.push_back(g);
  return out;
}

// Numeric-kernel and serialization properties (part of the props suite).
std::vector<CheckResult> property_checks(const CheckOptions& opt) {
  std::vector<CheckResult> out;

  double worst_w = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = std::pow(10.0, -8.0 + 16.0 * double(i) / 999.0);
    const double w = num::lambert_w0(x);
    worst_w = std::max(worst_w,
                       std::abs(w * std::exp(w) - x) / std::max(1.0, x));
  }
  out.push_back(check_le("prop_lambert_residual_rel", worst_w, 1e-12,
                         "1000 log-spaced points in [1e-8, 1e8]"));

  Rand rnd(opt.seed * 48271ull + 5);
  double worst_c = 0.0;
  int solved = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = rnd.range(-3.0, 3.0);
    const double b = rnd.range(-3.0, 3.0);
    const double c = rnd.range(-3.0, 3.0);
    const auto kf = [&](double x) { return ((x + a) * x + b) * x + c; };
    double lo = 0.0, hi = 0.0;
    bool have = false;
    double prev_x = -8.0, prev_f = kf(-8.0);
    for (double x = -7.75; x <= 8.01 && !have; x += 0.25) {
      const double f = kf(x);
      if (prev_f < 0.0 && f >= 0.0) {
        lo = prev_x;
        hi = x;
        have = true;
      }
      prev_x = x;
      prev_f = f;
    }
    if (!have) continue;  // cannot happen for a monic cubic on [-8, 8]
    ++solved;
    const double root = num::cubic_root_in_interval(a, b, c, lo, hi);
    if (!(root >= lo && root <= hi)) {
      worst_c = std::max(worst_c, 1.0);
      continue;
    }
    const double scale =
        std::max({1.0, std::abs(kf(lo)), std::abs(kf(hi))});
    worst_c = std::max(worst_c, std::abs(kf(root)) / scale);
  }
  out.push_back(check_le("prop_cubic_residual_scaled", worst_c, 1e-9,
                         std::to_string(solved) + " random cubics"));

  double worst_r = 0.0;
  for (int i = 0; i < 200; ++i) {
    SystemConfig cfg;
    cfg.n_antennas = rnd.int_range(2, 64);
    cfg.power = rnd.log_range(1e-3, 1e3);
    cfg.alpha = rnd.range(2.01, 8.0);
    cfg.r_bob = rnd.log_range(0.1, 10.0);
    cfg.lambda_e = rnd.range(0.0, 10.0);
    cfg.tau = rnd.range(0.0, 1.0);
    cfg.gamma_hat = rnd.log_range(0.1, 100.0);
    const SystemConfig back = parse_config(format_config(cfg));
    const auto rel = [](double x, double y) {
      return std::abs(x - y) / std::max(1.0, std::abs(x));
    };
    if (back.n_antennas != cfg.n_antennas) worst_r = std::max(worst_r, 1.0);
    worst_r = std::max({worst_r, rel(cfg.power, back.power),
                        rel(cfg.alpha, back.alpha), rel(cfg.r_bob, back.r_bob),
                        rel(cfg.lambda_e, back.lambda_e),
                        rel(cfg.tau, back.tau),
                        rel(cfg.gamma_hat, back.gamma_hat)});
  }
  out.push_back(check_le("prop_config_roundtrip_rel", worst_r, 1e-10,
                         "200 random configs through format/parse"));

  double worst_q = 0.0, worst_o = 0.0;
  for (int i = 0; i < 100; ++i) {
    SystemConfig cfg;
    cfg.n_antennas = rnd.int_range(2, 16);
    cfg.power = rnd.log_range(0.5, 30.0);
    cfg.alpha = rnd.range(2.5, 5.5);
    cfg.r_bob = rnd.range(0.6, 1.8);
    cfg.lambda_e = rnd.range(0.5, 6.0);
    cfg.tau = rnd.range(0.0, 0.7);
    cfg.gamma_hat = rnd.log_range(2.0, 80.0);
    const double xi = rnd.range(0.05, 1.0);
    const double p = rnd.range(0.01, 0.99);
    const double q = mc::gamma_e_quantile(cfg, xi, p);
    worst_q = std::max(worst_q, std::abs(mc::gamma_e_cdf(cfg, xi, q) - p));

    const double eps = rnd.range(0.005, 0.3);
    const RateProblem prob = make_rate_problem(cfg, eps);
    const RhoSolver solver = make_rho_solver(prob, RhoMode::Exact, 1e-12);
    const double rv = rho(xi, prob, solver);
    if (prob.derived.kappa > rv) {
      const double rate = std::log2((1.0 + xi * prob.derived.kappa) /
                                    (1.0 + xi * rv));
      if (rate > 1e-6) {
        const double o = sop(xi, make_sop_problem(cfg, rate));
        worst_o = std::max(worst_o, std::abs(o - eps));
      }
    }
  }
  out.push_back(check_le("prop_quantile_cdf_inversion", worst_q, 1e-9,
                         "100 random (config, split, level) triples"));
  out.push_back(check_le(
      "prop_quantile_outage_identity", worst_o, 1e-6,
      "closed-form outage at the rate implied by the quantile equals eps"));
  return out;
}

}  // namespace

std::vector<CheckResult> criterion_sop_oracle(const CheckOptions& opt) {
  std::vector<CheckResult> out;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_se = 0.0;
  std::uint64_t salt = 0;
  for (int n : {2, 4, 8}) {
    const AgreementOutcome res =
        agreement_curve(reference_curve_config(n), kReferenceRate, opt, ++salt);
    worst_se = std::max(worst_se, res.worst_se);
    out.push_back(check_ge(
        "agreement_within_3se_n" + std::to_string(n), res.agree, 18.0,
        "of " + std::to_string(res.points) +
            " grid points; worst |z| = " + fmt(res.worst_z)));
  }
  CheckResult g = check_le("agreement_std_err_budget",
                           precision_budget(opt.trials, worst_se), 0.02);
  if (!g.pass) g.note = "std_err too large: raise --trials";
  out.push_back(g);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  out.push_back(check_le("agreement_runtime_seconds", secs, 60.0,
                         "three 20-point curves, channel-level sampling"));
  return out;
}

std::vector<CheckResult> criterion_distributions(const CheckOptions& opt) {
  std::vector<CheckResult> out;
  Rand rnd(opt.seed * 1000003ull + 17);
  const long n = std::max<long>(opt.trials, 100);
  const double crit = 1.6276 / std::sqrt(double(n));  // 1% asymptotic level
  for (int set = 1; set <= 5; ++set) {
    SystemConfig cfg;
    cfg.n_antennas = rnd.int_range(2, 8);
    cfg.power = rnd.log_range(0.5, 10.0);
    cfg.alpha = rnd.range(3.0, 5.0);
    cfg.r_bob = 1.0;
    cfg.lambda_e = rnd.range(0.5, 3.0);
    cfg.tau = rnd.range(0.0, 0.6);
    cfg.gamma_hat = rnd.range(1.0, 30.0);
    const double xi = rnd.range(0.25, 0.9);
    const double r_e = rnd.range(0.6, 1.5);
    const int nant = cfg.n_antennas;
    const double phi = (1.0 / xi - 1.0) / double(nant - 1);

    // Single-eavesdropper SINR at a fixed distance, channel-level pipeline.
    auto per_eve = mc::sinr_eve_samples(cfg, xi, r_e, n,
                                        opt.seed + 31ull * std::uint64_t(set),
                                        mc::Fidelity::ChannelLevel);
    const double scale = std::pow(r_e, cfg.alpha) / (cfg.power * xi);
    const auto cdf_one = [&](double x) {
      return 1.0 -
             std::exp(-x * scale) * std::pow(1.0 + phi * x, 1.0 - nant);
    };
    const double d1 = ks_statistic(per_eve, 0.0, kInf, cdf_one);
    out.push_back(check_le("dist_single_eve_ks_" + std::to_string(set), d1,
                           crit, "n = " + std::to_string(n)));

    // Best-eavesdropper SINR over the whole process.
    const double q01 = mc::gamma_e_quantile(cfg, xi, 0.01);
    const double q99 = mc::gamma_e_quantile(cfg, xi, 0.99);
    mc::McConfig m;
    m.trials = n;
    m.seed = opt.seed + 97ull * std::uint64_t(set);
    m.fidelity = mc::Fidelity::SinrLevel;
    m.threads = opt.threads;
    auto maxima = mc::max_sinr_samples(cfg, xi, q01, m);
    const auto cdf_max = [&](double x) {
      return mc::gamma_e_cdf(cfg, xi, x);
    };
    const double d2 = ks_statistic(maxima, q01, q99, cdf_max);
    out.push_back(check_le("dist_best_eve_ks_" + std::to_string(set), d2, crit,
                           "restricted to the 1%-99% quantile window"));
  }
  return out;
}

std::vector<CheckResult> criterion_sop_optimality(const CheckOptions& opt) {
  Rand rnd(opt.seed * 2654435761ull + 3);
  int found = 0, attempts = 0, closed_form_hits = 0, regime_miss = 0;
  double worst_grid = 0.0, worst_resid = 0.0, worst_pair = 0.0;
  while (found < 200 && attempts < 100000) {
    ++attempts;
    SystemConfig cfg;
    cfg.n_antennas = rnd.int_range(2, 16);
    cfg.power = rnd.log_range(1.0, 30.0);
    cfg.alpha = rnd.range(2.5, 5.5);
    cfg.r_bob = rnd.range(0.6, 1.8);
    cfg.lambda_e = rnd.range(0.5, 6.0);
    cfg.tau = rnd.range(0.0, 0.7);
    cfg.gamma_hat = rnd.log_range(5.0, 80.0);
    const double rate = rnd.range(0.25, 2.5);
    const DerivedParams d = derive(cfg, rate);
    const double tm1 = d.t_pow.value() - 1.0;
    const double bound =
        tm1 * (1.0 + std::sqrt(d.delta / d.theta.value()));
    if (!(d.kappa > bound * 1.02)) continue;  // want a clear interior optimum
    ++found;
    const SopProblem prob = make_sop_problem(cfg, rate);
    const ParDecision dec = optimal_par_sop(prob);
    if (dec.regime != Regime::Interior) {
      ++regime_miss;
      continue;
    }
    const double xs = dec.xi.value();
    const double omega = d.omega.value();

    double best_xi = 1.0, best_j = j_factor(1.0, prob);
    for (double xi = omega + 1e-4; xi < 1.0; xi += 1e-4) {
      const double jv = j_factor(xi, prob);
      if (jv < best_j) {
        best_j = jv;
        best_xi = xi;
      }
    }
    worst_grid = std::max(worst_grid, std::abs(xs - best_xi));

    const CubicCoeffs cc = k_coeffs(prob);
    const double res_scale =
        std::max({xs * xs * xs, std::abs(cc.a) * xs * xs,
                  std::abs(cc.b) * xs, std::abs(cc.c), 1e-300});
    worst_resid =
        std::max(worst_resid, std::abs(k_cubic(xs, prob)) / res_scale);

    double closed = 0.0;
    if (num::detail::cardano_real_root(cc.a, cc.b, cc.c, closed) &&
        closed > omega && closed < 1.0)
      ++closed_form_hits;
    const auto kf = [&](double x) { return k_cubic(x, prob); };
    const double lo = omega + (1.0 - omega) * 1e-12;
    const double bis = num::bisect(kf, num::make_bracket(kf, lo, 1.0), 1e-12);
    worst_pair = std::max(worst_pair, std::abs(xs - bis));
  }
  std::vector<CheckResult> out;
  out.push_back(check_ge("sopopt_problem_count", found, 200.0,
                         std::to_string(attempts) + " draws"));
  out.push_back(check_le("sopopt_regime_mismatches", regime_miss, 0.0));
  out.push_back(check_le("sopopt_xi_vs_dense_scan", worst_grid, 1e-3,
                         "1e-4 grid step on the closed-form objective"));
  out.push_back(
      check_le("sopopt_cubic_residual_scaled", worst_resid, 1e-9));
  out.push_back(check_le(
      "sopopt_closed_vs_bisection", worst_pair, 1e-8,
      std::to_string(closed_form_hits) +
          " problems took the closed-form path; rest fell back internally"));
  return out;
}

std::vector<CheckResult> criterion_sop_regimes(const CheckOptions& opt) {
  Rand rnd(opt.seed * 912837471ull + 11);
  int suspend_viol = 0, fullpower_viol = 0;
  for (int rep = 0; rep < 50; ++rep) {
    SystemConfig cfg;
    cfg.n_antennas = rnd.int_range(2, 16);
    cfg.power = rnd.log_range(1.0, 30.0);
    cfg.alpha = rnd.range(2.5, 5.5);
    cfg.r_bob = rnd.range(0.6, 1.8);
    cfg.lambda_e = rnd.range(0.5, 6.0);
    cfg.tau = rnd.range(0.0, 0.7);
    const double rate = rnd.range(0.5, 2.5);
    const double t_pow = std::exp2(rate);
    const double tm1 = t_pow - 1.0;
    const double delta = 2.0 / cfg.alpha;
    const double theta = tm1 / t_pow;
    const double t2 = cfg.tau * cfg.tau;
    const double gamma_per_kappa = (t2 * cfg.power +
                                    std::pow(cfg.r_bob, cfg.alpha)) /
                                   ((1.0 - t2) * cfg.power);
    for (int boundary = 0; boundary < 2; ++boundary) {
      const double kb =
          boundary == 0 ? tm1 : tm1 * (1.0 + std::sqrt(delta / theta));
      for (int side = -1; side <= 1; side += 2) {
        cfg.gamma_hat = kb * (1.0 + side * 1e-3) * gamma_per_kappa;
        const SopProblem prob = make_sop_problem(cfg, rate);
        const ParDecision dec = optimal_par_sop(prob);
        Regime expected;
        if (boundary == 0)
          expected = side < 0 ? Regime::Suspend : Regime::FullPower;
        else
          expected = side < 0 ? Regime::FullPower : Regime::Interior;
        bool ok = dec.regime == expected;
        if (ok) {
          const double omega = prob.derived.omega.value();
          if (expected == Regime::Suspend) {
            ok = omega >= 1.0;
          } else {
            // dense scan of the objective confirms the decision
            double best_xi = 1.0, best_j = j_factor(1.0, prob);
            const double step = 1e-4;
            for (double xi = omega + step; xi < 1.0; xi += step) {
              const double jv = j_factor(xi, prob);
              if (jv < best_j) {
                best_j = jv;
                best_xi = xi;
              }
            }
            if (expected == Regime::FullPower)
              ok = best_xi >= 1.0 - 2e-4;
            else
              ok = std::abs(best_xi - dec.xi.value()) <= 2e-3;
          }
        }
        if (!ok) (boundary == 0 ? suspend_viol : fullpower_viol) += 1;
      }
    }
  }
  return {check_le("sopreg_suspend_boundary_violations", suspend_viol, 0.0,
                   "50 problems straddling the suspension threshold"),
          check_le("sopreg_fullpower_boundary_violations", fullpower_viol, 0.0,
                   "50 problems straddling the full-power threshold")};
}

std::vector<CheckResult> criterion_sop_monotonicity(const CheckOptions&) {
  SystemConfig base = dense_array_config();
  base.tau = 0.3;
  const double t2 = base.tau * base.tau;
  const double gamma_per_kappa =
      (t2 * base.power + std::pow(base.r_bob, base.alpha)) /
      ((1.0 - t2) * base.power);

  int dec_viol = 0, inc_viol = 0, sqrt_viol = 0, interior_miss = 0;

  double prev = kInf;
  for (int i = 0; i < 100; ++i) {
    const double kappa = 6.0 + 54.0 * double(i) / 99.0;
    SystemConfig cfg = base;
    cfg.gamma_hat = kappa * gamma_per_kappa;
    const SopProblem prob = make_sop_problem(cfg, 2.0);
    const ParDecision dec = optimal_par_sop(prob);
    if (dec.regime != Regime::Interior) {
      ++interior_miss;
      continue;
    }
    const double xi = dec.xi.value();
    if (!(xi > std::sqrt(prob.derived.omega.value()))) ++sqrt_viol;
    if (!(xi < prev)) ++dec_viol;
    prev = xi;
  }

  prev = -kInf;
  for (int i = 0; i < 100; ++i) {
    const double rs = 0.5 + 2.4 * double(i) / 99.0;
    const SopProblem prob = make_sop_problem(base, rs);
    const ParDecision dec = optimal_par_sop(prob);
    if (dec.regime != Regime::Interior) {
      ++interior_miss;
      continue;
    }
    const double xi = dec.xi.value();
    if (!(xi > std::sqrt(prob.derived.omega.value()))) ++sqrt_viol;
    if (xi < prev - 1e-12) ++inc_viol;
    prev = xi;
  }

  return {check_le("sopmono_xi_decreasing_in_kappa", dec_viol, 0.0,
                   "100-point sweep, kappa in [6, 60]"),
          check_le("sopmono_xi_nondecreasing_in_rate", inc_viol, 0.0,
                   "100-point sweep, rate in [0.5, 2.9]"),
          check_le("sopmono_xi_above_sqrt_omega", sqrt_viol, 0.0),
          check_le("sopmono_interior_regime_misses", interior_miss, 0.0)};
}

std::vector<CheckResult> criterion_quantile_shape(const CheckOptions& opt) {
  Rand rnd(opt.seed * 6364136223846793005ull + 29);
  int first_viol = 0, second_viol = 0;
  double worst_fd = 0.0;
  for (int set = 0; set < 10; ++set) {
    SystemConfig cfg;
    cfg.n_antennas = rnd.int_range(2, 30);
    cfg.power = rnd.log_range(0.3, 30.0);
    cfg.alpha = rnd.range(2.5, 5.5);
    cfg.r_bob = 1.0;
    cfg.lambda_e = rnd.range(0.5, 8.0);
    cfg.tau = 0.0;
    cfg.gamma_hat = 10.0;
    const double eps = rnd.log_range(0.005, 0.3);
    const RateProblem prob = make_rate_problem(cfg, eps);
    const RhoSolver solver = make_rho_solver(prob, RhoMode::Exact, 1e-13);

    constexpr int kGrid = 200;
    std::vector<double> xs(kGrid), rs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
      xs[i] = 0.99 * double(i) / double(kGrid - 1);
      rs[i] = rho(xs[i], prob, solver);
    }
    for (int i = 1; i < kGrid; ++i)
      if (!(rs[i] > rs[i - 1])) ++first_viol;
    for (int i = 1; i + 1 < kGrid; ++i)
      if (!(rs[i + 1] - 2.0 * rs[i] + rs[i - 1] > 0.0)) ++second_viol;

    // Implicit-function derivative vs Richardson-extrapolated differences.
    for (int i = 10; i + 10 < kGrid; i += 10) {
      const double xi = xs[i];
      const double h = 1e-4;
      const auto r_at = [&](double x) { return rho(x, prob, solver); };
      const double d1 = (r_at(xi + h) - r_at(xi - h)) / (2.0 * h);
      const double d2 = (r_at(xi + 0.5 * h) - r_at(xi - 0.5 * h)) / h;
      const double fd = (4.0 * d2 - d1) / 3.0;
      const double an = drho_dxi(xi, rs[i], prob);
      worst_fd = std::max(worst_fd,
                          std::abs(fd - an) / std::max(std::abs(an), 1e-300));
    }
  }
  return {check_le("quantile_first_differences_positive", first_viol, 0.0,
                   "10 parameter sets, 200-point grids"),
          check_le("quantile_second_differences_positive", second_viol, 0.0),
          check_le("quantile_derivative_vs_fd_rel", worst_fd, 1e-5,
                   "Richardson-extrapolated central differences")};
}

std::vector<CheckResult> criterion_rate_optimality(const CheckOptions& opt) {
  Rand rnd(opt.seed * 76543217ull + 41);
  double worst_gap = 0.0, worst_active = 0.0;
  double worst_d2 = -kInf;
  int suspend_bad = 0;
  int n_suspend = 0, n_fullpower = 0, n_interior = 0;
  for (int rep = 0; rep < 200; ++rep) {
    SystemConfig cfg;
    cfg.n_antennas = rnd.int_range(2, 16);
    cfg.power = rnd.log_range(0.5, 30.0);
    cfg.alpha = rnd.range(2.5, 5.0);
    cfg.r_bob = rnd.range(0.6, 1.8);
    cfg.lambda_e = rnd.range(0.5, 6.0);
    cfg.tau = rnd.range(0.0, 0.7);
    cfg.gamma_hat = rnd.log_range(2.0, 80.0);
    const double eps = rnd.log_range(0.005, 0.2);
    const RateProblem prob = make_rate_problem(cfg, eps);
    const RhoSolver solver = make_rho_solver(prob, RhoMode::Exact, opt.tol);
    const ParDecision dec = optimal_par_rate(prob, solver);

    constexpr int kCoarse = 100;
    std::vector<double> grid(kCoarse + 1);
    for (int k = 0; k <= kCoarse; ++k)
      grid[k] = secrecy_rate(double(k) / kCoarse, prob, solver);

    if (dec.regime == Regime::Suspend) {
      ++n_suspend;
      for (double v : grid)
        if (v > 1e-12) ++suspend_bad;
      continue;
    }
    (dec.regime == Regime::FullPower ? n_fullpower : n_interior) += 1;

    for (int k = 1; k < kCoarse; ++k)
      if (grid[k - 1] > 0.0 && grid[k] > 0.0 && grid[k + 1] > 0.0)
        worst_d2 =
            std::max(worst_d2, grid[k + 1] - 2.0 * grid[k] + grid[k - 1]);

    int kbest = 0;
    for (int k = 1; k <= kCoarse; ++k)
      if (grid[k] > grid[kbest]) kbest = k;
    const double lo = std::max(0.0, double(kbest - 2) / kCoarse);
    const double hi = std::min(1.0, double(kbest + 2) / kCoarse);
    double best_xi = lo, best_r = -1.0;
    for (double x = lo; x <= hi + 1e-12; x += 1e-4) {
      const double xc = std::min(x, 1.0);
      const double rv = secrecy_rate(xc, prob, solver);
      if (rv > best_r) {
        best_r = rv;
        best_xi = xc;
      }
    }
    worst_gap = std::max(worst_gap, std::abs(dec.xi.value() - best_xi));

    const double rstar = dec.objective.value();
    if (rstar > 1e-9) {
      const double o =
          sop(std::min(dec.xi.value(), 1.0), make_sop_problem(cfg, rstar));
      const double err = dec.xi.value() >= 1.0 - 1e-12
                             ? std::max(0.0, o - eps)
                             : std::abs(o - eps);
      worst_active = std::max(worst_active, err);
    }
  }
  if (worst_d2 == -kInf) worst_d2 = 0.0;
  const std::string mix = std::to_string(n_interior) + " interior / " +
                          std::to_string(n_fullpower) + " full-power / " +
                          std::to_string(n_suspend) + " suspended";
  return {check_le("ratemax_suspended_rate_nonzero", suspend_bad, 0.0, mix),
          check_le("ratemax_second_differences", worst_d2, 1e-8,
                   "positive-rate interior triples on 100-point grids"),
          check_le("ratemax_xi_vs_dense_scan", worst_gap, 1e-3,
                   "two-stage scan, 1e-4 fine step"),
          check_le("ratemax_outage_constraint_activity", worst_active, 1e-6,
                   "closed-form outage at (xi*, R*) vs eps"),
          check_le("ratemax_fullpower_form_disagreements",
                   double(fullpower_disagreements()), 0.0,
                   "boundary derivative vs rearranged inequality")};
}

std::vector<CheckResult> criterion_largen_gap(const CheckOptions& opt) {
  double worst = 0.0;
  int points = 0, skipped = 0;
  for (double p : {1.0, 10.0}) {
    SystemConfig cfg = dense_array_config();
    cfg.power = p;
    for (int i = 0; i <= 19; ++i) {
      cfg.tau = 0.05 * double(i);
      const RateProblem prob = make_rate_problem(cfg, 0.01);
      const RhoSolver exact = make_rho_solver(prob, RhoMode::Exact, opt.tol);
      const ParDecision dec_e = optimal_par_rate(prob, exact);
      if (dec_e.regime == Regime::Suspend) break;
      const double re = dec_e.objective.value();
      if (re < 0.25) {
        ++skipped;
        continue;
      }
      const RhoSolver approx =
          make_rho_solver(prob, RhoMode::LargeN, opt.tol);
      const ParDecision dec_a = optimal_par_rate(prob, approx);
      const double ra =
          dec_a.regime == Regime::Suspend ? 0.0 : dec_a.objective.value();
      worst = std::max(worst, std::abs(ra - re) / re);
      ++points;
    }
  }
  return {check_le(
      "largen_decision_gap_rel", worst, 0.05,
      std::to_string(points) +
          " error-sweep points at two power levels (expected < 2%); " +
          std::to_string(skipped) +
          " near-suspension points with optimal rate < 0.25 excluded")};
}

std::vector<CheckResult> criterion_rate_monotonicity(const CheckOptions&) {
  SystemConfig base = dense_array_config();
  base.tau = 0.2;
  const double eps = 0.01;
  const double t2 = base.tau * base.tau;
  const double gamma_per_kappa =
      (t2 * base.power + std::pow(base.r_bob, base.alpha)) /
      ((1.0 - t2) * base.power);

  int inc_viol = 0, dec_viol = 0, eps_viol = 0, interior_miss = 0;
  const auto solve = [&](const SystemConfig& cfg, double e) {
    const RateProblem prob = make_rate_problem(cfg, e);
    const RhoSolver solver = make_rho_solver(prob, RhoMode::Exact, 1e-12);
    return optimal_par_rate(prob, solver);
  };

  double prev = -kInf;
  for (int i = 0; i < 100; ++i) {
    SystemConfig cfg = base;
    cfg.gamma_hat = (12.0 + 88.0 * double(i) / 99.0) * gamma_per_kappa;
    const ParDecision dec = solve(cfg, eps);
    if (dec.regime != Regime::Interior) {
      ++interior_miss;
      continue;
    }
    if (!(dec.xi.value() > prev)) ++inc_viol;
    prev = dec.xi.value();
  }

  prev = kInf;
  for (int i = 0; i < 100; ++i) {
    SystemConfig cfg = base;
    cfg.lambda_e = 0.5 + 9.5 * double(i) / 99.0;
    const ParDecision dec = solve(cfg, eps);
    if (dec.regime != Regime::Interior) {
      ++interior_miss;
      continue;
    }
    if (!(dec.xi.value() < prev)) ++dec_viol;
    prev = dec.xi.value();
  }

  prev = -kInf;
  for (int i = 0; i < 100; ++i) {
    const double e = 0.005 + 0.195 * double(i) / 99.0;
    const ParDecision dec = solve(base, e);
    if (dec.regime != Regime::Interior) {
      ++interior_miss;
      continue;
    }
    if (!(dec.xi.value() > prev)) ++eps_viol;
    prev = dec.xi.value();
  }

  return {check_le("ratemono_xi_increasing_in_kappa", inc_viol, 0.0,
                   "100-point sweep, kappa in [12, 100]"),
          check_le("ratemono_xi_decreasing_in_density", dec_viol, 0.0,
                   "100-point sweep, lambda_e in [0.5, 10]"),
          check_le("ratemono_xi_increasing_in_eps", eps_viol, 0.0,
                   "100-point sweep, eps in [0.005, 0.2]"),
          check_le("ratemono_interior_regime_misses", interior_miss, 0.0)};
}

std::vector<CheckResult> criterion_figure_shapes(const CheckOptions&) {
  std::vector<CheckResult> out;

  // Optimal split climbs with estimation error, then the link suspends.
  {
    int viol = 0, tail_viol = 0;
    for (double rs : {1.0, 2.0, 3.0}) {
      SystemConfig cfg = dense_array_config();
      double prev = -kInf;
      bool suspended = false;
      for (int i = 0; i < 50; ++i) {
        cfg.tau = 0.02 * double(i);
        const ParDecision dec = optimal_par_sop(make_sop_problem(cfg, rs));
        if (dec.regime == Regime::Suspend) {
          suspended = true;
          continue;
        }
        if (suspended) ++tail_viol;  // resumed after suspension
        if (dec.xi.value() < prev - 1e-9) ++viol;
        prev = dec.xi.value();
      }
      if (!suspended) ++tail_viol;  // the sweep must reach suspension
    }
    out.push_back(check_le("shape_split_vs_error_nondecreasing", viol, 0.0,
                           "three target rates, 50-point error sweeps"));
    out.push_back(
        check_le("shape_split_vs_error_suspension_tail", tail_viol, 0.0));
  }

  // Minimum outage rises with estimation error; power levels change order.
  {
    int mono_viol = 0, crossings = 0;
    for (double rs : {1.0, 2.0}) {
      std::vector<std::vector<double>> curves;  // per power level
      for (double p : {1.0, 10.0}) {
        SystemConfig cfg = dense_array_config();
        cfg.power = p;
        std::vector<double> curve(50, -1.0);  // -1 = suspended
        double prev = -kInf;
        for (int i = 0; i < 50; ++i) {
          cfg.tau = 0.02 * double(i);
          const ParDecision dec = optimal_par_sop(make_sop_problem(cfg, rs));
          if (dec.regime == Regime::Suspend) continue;
          curve[i] = dec.objective.value();
          if (curve[i] < prev - 1e-12) ++mono_viol;
          prev = curve[i];
        }
        curves.push_back(std::move(curve));
      }
      double dmin = kInf, dmax = -kInf;
      for (int i = 0; i < 50; ++i) {
        if (curves[0][i] < 0.0 || curves[1][i] < 0.0) continue;
        const double diff = curves[0][i] - curves[1][i];
        dmin = std::min(dmin, diff);
        dmax = std::max(dmax, diff);
      }
      if (dmin < -1e-12 && dmax > 1e-12) ++crossings;
    }
    out.push_back(check_le("shape_outage_vs_error_nondecreasing", mono_viol,
                           0.0, "two rates x two power levels"));
    out.push_back(check_ge("shape_outage_power_curves_cross", crossings, 1.0,
                           "sign change of the curve difference"));
  }

  // Best rate falls with estimation error; power levels change order.
  {
    // Power pair 10 and 100 (10 vs 20 on the dB scale): the higher level
    // wins at small estimation error and loses near the suspension edge,
    // because the main-channel gain saturates in power while the
    // eavesdropper quantile keeps growing. The lowest level used by the
    // outage-crossing check suspends before it can win, so it cannot
    // witness this crossing.
    int mono_viol = 0;
    std::vector<std::vector<double>> curves;
    for (double p : {10.0, 100.0}) {
      SystemConfig cfg = dense_array_config();
      cfg.power = p;
      std::vector<double> curve(50, -1.0);
      double prev = kInf;
      for (int i = 0; i < 50; ++i) {
        cfg.tau = 0.02 * double(i);
        const RateProblem prob = make_rate_problem(cfg, 0.01);
        const RhoSolver solver = make_rho_solver(prob, RhoMode::Exact, 1e-12);
        const ParDecision dec = optimal_par_rate(prob, solver);
        if (dec.regime == Regime::Suspend) continue;
        curve[i] = dec.objective.value();
        if (curve[i] > prev + 1e-9) ++mono_viol;
        prev = curve[i];
      }
      curves.push_back(std::move(curve));
    }
    double dmin = kInf, dmax = -kInf;
    for (int i = 0; i < 50; ++i) {
      if (curves[0][i] < 0.0 || curves[1][i] < 0.0) continue;
      const double diff = curves[0][i] - curves[1][i];
      dmin = std::min(dmin, diff);
      dmax = std::max(dmax, diff);
    }
    const int cross = (dmin < -1e-12 && dmax > 1e-12) ? 1 : 0;
    out.push_back(check_le("shape_rate_vs_error_nonincreasing", mono_viol, 0.0,
                           "two power levels, 50-point error sweeps"));
    out.push_back(check_ge("shape_rate_power_curves_cross", cross, 1.0,
                           "sign change of the curve difference"));
  }
  return out;
}

std::vector<CheckResult> criterion_simulator_hygiene(const CheckOptions& opt) {
  std::vector<CheckResult> out;

  // Channel-level and reduced-law sampling estimate the same quantity.
  double worst_z = 0.0;
  struct Pt {
    int n;
    double xi;
  };
  for (Pt p : {Pt{4, 0.4}, Pt{4, 0.8}, Pt{8, 0.6}}) {
    const SystemConfig cfg = reference_curve_config(p.n);
    mc::McConfig a;
    a.trials = opt.trials;
    a.seed = opt.seed + 211;
    a.fidelity = mc::Fidelity::ChannelLevel;
    a.threads = opt.threads;
    mc::McConfig b = a;
    b.seed = opt.seed + 212;  // independent draw
    b.fidelity = mc::Fidelity::SinrLevel;
    const mc::McEstimate ea = mc::empirical_sop(cfg, kReferenceRate, p.xi, a);
    const mc::McEstimate eb = mc::empirical_sop(cfg, kReferenceRate, p.xi, b);
    const double se = std::max(
        std::sqrt(ea.std_err * ea.std_err + eb.std_err * eb.std_err), 1e-12);
    worst_z = std::max(worst_z, std::abs(ea.mean - eb.mean) / se);
  }
  out.push_back(check_le("sim_fidelity_equivalence_z", worst_z, 3.0,
                         "channel-level vs reduced-law, independent seeds"));

  // Fixed seed means byte-identical CSV, at any worker count.
  SweepSpec s;
  s.mode = SweepMode::McValidate;
  s.variable = SweepVariable::Xi;
  s.start = 0.3;
  s.stop = 0.9;
  s.steps = 4;
  s.base = reference_curve_config(4);
  s.rate = kReferenceRate;
  s.trials = std::min<long>(opt.trials, 20000);
  s.seed = opt.seed;
  s.fidelity = mc::Fidelity::SinrLevel;
  s.threads = 1;
  s.label = "repro";
  const std::string csv1 = to_csv(run_sweep(s));
  const std::string csv2 = to_csv(run_sweep(s));
  s.threads = 3;
  const std::string csv3 = to_csv(run_sweep(s));
  out.push_back(check_le("sim_seed_determinism", csv1 == csv2 ? 0.0 : 1.0, 0.0,
                         "identical CSV bytes on repeat"));
  out.push_back(check_le("sim_thread_count_invariance",
                         csv1 == csv3 ? 0.0 : 1.0, 0.0, "1 worker vs 3"));

  // Doubling the truncation radius must not move the estimate.
  const SystemConfig cfg = reference_curve_config(4);
  const double xi = 0.6;
  const DerivedParams d = derive(cfg, kReferenceRate);
  const double x = (1.0 + xi * d.kappa) / d.t_pow.value() - 1.0;
  const double r_auto = mc::auto_radius(cfg, xi, x);
  mc::McConfig a;
  a.trials = opt.trials;
  a.seed = opt.seed + 331;
  a.fidelity = mc::Fidelity::SinrLevel;
  a.threads = opt.threads;
  mc::McConfig b = a;
  b.r_max_policy = mc::RadiusPolicy::Fixed;
  b.fixed_radius = 2.0 * r_auto;
  const mc::McEstimate e1 = mc::empirical_sop(cfg, kReferenceRate, xi, a);
  const mc::McEstimate e2 = mc::empirical_sop(cfg, kReferenceRate, xi, b);
  const double se = std::max(e1.std_err, 1e-12);
  out.push_back(check_le("sim_truncation_stability_z",
                         std::abs(e1.mean - e2.mean) / se, 1.0,
                         "auto radius vs doubled radius, shared seed"));
  return out;
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const SystemConfig& base,
                                   const CheckOptions& opt) {
  const auto concat = [](std::vector<CheckResult>& into,
                         std::vector<CheckResult> more) {
    for (auto& m : more) into.push_back(std::move(m));
  };
  std::vector<CheckResult> out;
  if (suite == "lemma1") {
    concat(out, config_agreement_suite(base, opt));
  } else if (suite == "thm1") {
    concat(out, criterion_sop_optimality(opt));
    concat(out, criterion_sop_regimes(opt));
    concat(out, criterion_sop_monotonicity(opt));
  } else if (suite == "lemma2") {
    concat(out, criterion_quantile_shape(opt));
  } else if (suite == "thm2") {
    concat(out, criterion_rate_optimality(opt));
    concat(out, criterion_largen_gap(opt));
    concat(out, criterion_rate_monotonicity(opt));
  } else if (suite == "props") {
    concat(out, property_checks(opt));
    concat(out, criterion_distributions(opt));
    concat(out, criterion_figure_shapes(opt));
    concat(out, criterion_simulator_hygiene(opt));
  } else if (suite == "all") {
    for (const char* sub : {"lemma1", "thm1", "lemma2", "thm2", "props"})
      concat(out, run_suite(sub, base, opt));
  } else {
    throw ConfigError("unknown suite '" + suite +
                      "' (expected lemma1, thm1, lemma2, thm2, props, all)");
  }
  return out;
}

std::vector<std::string> suite_names() {
  return {"lemma1", "thm1", "lemma2", "thm2", "props", "all"};
}

std::string report_json(const std::string& suite, const SystemConfig& base,
                        const std::vector<CheckResult>& results) {
  const auto num_or_string = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  };
  nlohmann::json j;
  j["suite"] = suite;
  j["config"] = {{"n_antennas", base.n_antennas}, {"power", base.power},
                 {"alpha", base.alpha},           {"r_bob", base.r_bob},
                 {"lambda_e", base.lambda_e},     {"tau", base.tau},
                 {"gamma_hat", base.gamma_hat}};
  bool all = !results.empty();
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& r : results) {
    all = all && r.pass;
    nlohmann::json c;
    c["name"] = r.name;
    c["tolerance"] = num_or_string(r.tolerance);
    c["observed"] = num_or_string(r.observed);
    c["pass"] = r.pass;
    if (!r.note.empty()) c["note"] = r.note;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  j["passed"] = all;
  return j.dump(2) + "\n";
}

double ks_statistic(std::vector<double> samples, double x_lo, double x_hi,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  const auto ecdf_at = [&](double x) {
    return double(std::upper_bound(samples.begin(), samples.end(), x) -
                  samples.begin()) /
           n;
  };
  double d = 0.0;
  if (std::isfinite(x_lo)) d = std::max(d, std::abs(ecdf_at(x_lo) - cdf(x_lo)));
  if (std::isfinite(x_hi)) d = std::max(d, std::abs(ecdf_at(x_hi) - cdf(x_hi)));
  const auto first = std::lower_bound(samples.begin(), samples.end(), x_lo);
  const auto last = std::upper_bound(samples.begin(), samples.end(), x_hi);
  for (auto it = first; it != last; ++it) {
    const double f = cdf(*it);
    const double below = double(it - samples.begin());
    d = std::max(d, std::max(std::abs(f - below / n),
                             std::abs(f - (below + 1.0) / n)));
  }
  return d;
}

}  // namespace ansec
