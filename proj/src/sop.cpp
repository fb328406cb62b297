#include "ansec/sop.hpp"

#include <cmath>

#include "ansec/numerics.hpp"

namespace ansec {

SopProblem make_sop_problem(const SystemConfig& cfg, double rate) {
  SopProblem p;
  p.config = cfg;
  p.rate = rate;
  p.derived = derive(cfg, rate, std::nullopt);
  return p;
}

namespace {

void require_feasible_xi(double xi, const SopProblem& prob) {
  const double omega = *prob.derived.omega;
  if (!(xi > omega) || !(xi <= 1.0))
    throw FeasibilityError(
        "xi outside (omega, 1]: connection to Bob unsupported at the target rate");
}

}  // namespace

double j_factor(double xi, const SopProblem& prob) {
  require_feasible_xi(xi, prob);
  const auto& d = prob.derived;
  const double omega = *d.omega;
  const double theta = *d.theta;
  const int n = prob.config.n_antennas;
  const double phi = (1.0 / xi - 1.0) / (n - 1);
  const double lead = std::pow(1.0 / omega - 1.0 / xi, -d.delta);
  const double an = std::pow(1.0 + (xi / omega - 1.0) * theta * phi,
                             1.0 - n);
  return lead * an;
}

double sop(double xi, const SopProblem& prob) {
  const auto& d = prob.derived;
  const double scale = d.beta * prob.config.lambda_e *
                       std::pow(prob.config.power / *d.theta, d.delta);
  return -std::expm1(-scale * j_factor(xi, prob));
}

CubicCoeffs k_coeffs(const SopProblem& prob) {
  const auto& d = prob.derived;
  const double w = *d.omega;
  return CubicCoeffs{
      -d.l1 * w,
      -(d.delta / *d.theta) * w * w - d.l0 * w * w - d.l2 * w,
      d.l2 * w * w,
  };
}

double k_cubic(double xi, const SopProblem& prob) {
  const CubicCoeffs k = k_coeffs(prob);
  return ((xi + k.a) * xi + k.b) * xi + k.c;
}

ParDecision optimal_par_sop(const SopProblem& prob) {
  const auto& d = prob.derived;
  const double t_minus_1 = *d.t_pow - 1.0;
  if (d.kappa <= t_minus_1) return ParDecision{Regime::Suspend, {}, {}};

  const double boundary =
      t_minus_1 * (1.0 + std::sqrt(d.delta / *d.theta));
  if (d.kappa <= boundary)
    return ParDecision{Regime::FullPower, 1.0, sop(1.0, prob)};

  const CubicCoeffs k = k_coeffs(prob);
  const double omega = *d.omega;
  // kappa > boundary makes K(1) > 0 in exact arithmetic; rounding right at
  // the boundary can still flip it, in which case the optimum sits at 1 to
  // machine precision and full power is reported.
  if (!(k_cubic(1.0, prob) > 0.0))
    return ParDecision{Regime::FullPower, 1.0, sop(1.0, prob)};
  const double xi =
      num::cubic_root_in_interval(k.a, k.b, k.c, omega, 1.0);
  return ParDecision{Regime::Interior, xi, sop(xi, prob)};
}

ParDecision min_sop(const SopProblem& prob) { return optimal_par_sop(prob); }

}  // namespace ansec
