#include "ansec/rate.hpp"

#include <atomic>
#include <cmath>

#include "ansec/numerics.hpp"

namespace ansec {

namespace {

std::atomic<std::uint64_t> g_fullpower_disagreements{0};

constexpr double kLn2 = 0.6931471805599453;

// log Z(xi, rho) - log L: same root as z_residual, overflow-proof.
double log_z_residual(double xi, double r, int n, double delta, double big_l) {
  return delta * std::log(r) +
         (n - 1) * std::log1p(r * (1.0 - xi) / (n - 1)) - std::log(big_l);
}

}  // namespace

RateProblem make_rate_problem(const SystemConfig& cfg, double eps) {
  RateProblem p;
  p.config = cfg;
  p.eps = eps;
  p.derived = derive(cfg, std::nullopt, eps);
  return p;
}

RhoSolver make_rho_solver(const RateProblem& prob, RhoMode mode, double tol) {
  if (!(tol > 0.0)) throw DomainError("rho solver tol must be positive");
  const double big_l = *prob.derived.big_l;
  double rho_max = 0.0;
  if (big_l > 0.0) {
    rho_max = std::pow(big_l, 1.0 / prob.derived.delta);
    if (!std::isfinite(rho_max))
      throw DomainError("L^(1/delta) overflows double precision");
  }
  return RhoSolver{tol, rho_max, mode};
}

double z_residual(double xi, double rho, const RateProblem& prob) {
  const int n = prob.config.n_antennas;
  const double delta = prob.derived.delta;
  return std::pow(rho, delta) *
             std::pow(1.0 + rho * (1.0 - xi) / (n - 1), double(n - 1)) -
         *prob.derived.big_l;
}

double rho(double xi, const RateProblem& prob, const RhoSolver& solver) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("rho: xi must be in [0,1]");
  const double big_l = *prob.derived.big_l;
  if (big_l == 0.0) return 0.0;  // no eavesdroppers: constraint is vacuous
  if (xi == 1.0) return solver.rho_max;

  if (solver.mode == RhoMode::LargeN) {
    const double z = (1.0 - xi) * solver.rho_max / prob.derived.delta;
    return prob.derived.delta * num::lambert_w0(z) / (1.0 - xi);
  }

  const int n = prob.config.n_antennas;
  const double delta = prob.derived.delta;
  const auto f = [&](double r) {
    return log_z_residual(xi, r, n, delta, big_l);
  };
  const double lo = std::min(1e-300, solver.rho_max * 0.5);
  // log residual -> -inf as rho -> 0+ and >= 0 at rho_max.
  return num::bisect(f, num::make_bracket(f, lo, solver.rho_max), solver.tol);
}

double drho_dxi(double xi, double rho_val, const RateProblem& prob) {
  const auto& d = prob.derived;
  return rho_val * rho_val / (d.delta + d.l2 * (1.0 - xi) * rho_val);
}

double secrecy_rate(double xi, const RateProblem& prob,
                    const RhoSolver& solver) {
  const double r = rho(xi, prob, solver);
  const double kappa = prob.derived.kappa;
  if (!(r < kappa)) return 0.0;
  const double rs = std::log2((1.0 + kappa * xi) / (1.0 + r * xi));
  return rs > 0.0 ? rs : 0.0;
}

double drs_dxi(double xi, const RateProblem& prob, const RhoSolver& solver) {
  const double r = rho(xi, prob, solver);
  const double kappa = prob.derived.kappa;
  if (!(r < kappa))
    throw FeasibilityError("drs_dxi: rho(xi) >= kappa (no positive rate here)");
  const double dr = drho_dxi(xi, r, prob);
  return (kappa / (1.0 + kappa * xi) - (r + xi * dr) / (1.0 + xi * r)) / kLn2;
}

bool fullpower_by_derivative(const RateProblem& prob) {
  // dR_S/dxi at xi = 1 with rho(1) = rho_max and drho(1) = rho_max^2/delta;
  // evaluated directly so it is defined even when rho_max >= kappa.
  const auto& d = prob.derived;
  const double big_l = *d.big_l;
  const double rho_max =
      big_l > 0.0 ? std::pow(big_l, 1.0 / d.delta) : 0.0;
  const double d1 = d.kappa / (1.0 + d.kappa) -
                    (rho_max + rho_max * rho_max / d.delta) / (1.0 + rho_max);
  return d1 > 0.0;
}

bool fullpower_by_inequality(const RateProblem& prob) {
  const auto& d = prob.derived;
  const double big_l = *d.big_l;
  const double alpha = prob.config.alpha;
  if (!(big_l < std::pow(d.delta, 1.0 / alpha))) return false;
  const double la2 = std::pow(big_l, alpha / 2.0);  // = L^(1/delta)
  const double la = std::pow(big_l, alpha);         // = L^(2/delta)
  return d.kappa > (d.delta * la2 + la) / (d.delta - la);
}

std::uint64_t fullpower_disagreements() {
  return g_fullpower_disagreements.load();
}

ParDecision optimal_par_rate(const RateProblem& prob,
                             const RhoSolver& solver) {
  const double kappa = prob.derived.kappa;
  const double rho_min = rho(0.0, prob, solver);
  if (kappa <= rho_min) return ParDecision{Regime::Suspend, {}, {}};

  const bool fp_deriv = fullpower_by_derivative(prob);
  if (fp_deriv != fullpower_by_inequality(prob))
    g_fullpower_disagreements.fetch_add(1);

  // The reported rate always honors the exact quantile, so the outage
  // constraint is active (or slack at full power) whatever located xi*.
  const RhoSolver exact{solver.tol, solver.rho_max, RhoMode::Exact};

  if (fp_deriv)
    return ParDecision{Regime::FullPower, 1.0, secrecy_rate(1.0, prob, exact)};

  // Interior: bisect dR_S/dxi over the feasible stretch (0, hi).
  double hi = 1.0;
  if (!(rho(1.0, prob, solver) < kappa)) {
    // Feasibility frontier: rho is increasing, so bisect rho(xi) = kappa
    // keeping lo on the feasible side.
    double lo_f = 0.0, hi_f = 1.0;
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo_f + hi_f);
      if (rho(mid, prob, solver) < kappa) lo_f = mid; else hi_f = mid;
    }
    hi = lo_f;
  }
  const double f_lo = drs_dxi(0.0, prob, solver);
  // kappa > rho_min held above, but when the margin is inside the
  // root-finder's own error band the slope at 0 can round nonpositive;
  // that is indistinguishable from suspension.
  if (!(f_lo > 0.0)) return ParDecision{Regime::Suspend, {}, {}};
  const double f_hi = drs_dxi(hi, prob, solver);
  double xi;
  if (!(f_hi < 0.0)) {
    xi = hi;  // derivative still nonnegative at the frontier edge
  } else {
    xi = num::bisect([&](double x) { return drs_dxi(x, prob, solver); },
                     num::Bracket{0.0, hi, f_lo, f_hi}, solver.tol);
  }
  return ParDecision{Regime::Interior, xi, secrecy_rate(xi, prob, exact)};
}

ParDecision max_rate(const RateProblem& prob, const RhoSolver& solver) {
  return optimal_par_rate(prob, solver);
}

double stationarity_residual(const ParDecision& dec, const RateProblem& prob,
                             const RhoSolver& solver) {
  if (dec.regime != Regime::Interior || !dec.xi)
    throw DomainError("stationarity_residual: interior decision required");
  const auto& d = prob.derived;
  const double xi = *dec.xi;
  const double r = rho(xi, prob, solver);
  const double k = d.kappa;
  const double a_val = (k * xi * xi - d.l0 * xi + d.l2) * r * r +
                       (d.l2 * k * xi - d.l2 * k + d.delta) * r -
                       d.delta * k;
  return std::abs(a_val) / std::max(1.0, k * r * r);
}

}  // namespace ansec
