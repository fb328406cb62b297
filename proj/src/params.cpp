#include "ansec/params.hpp"

#include <cmath>

#include "ansec/numerics.hpp"

namespace ansec {

void validate(const SystemConfig& cfg) {
  if (cfg.n_antennas < 2)
    throw DomainError("n_antennas must be >= 2 (artificial noise needs N-1 dimensions)");
  if (!(cfg.power > 0.0) || !std::isfinite(cfg.power))
    throw DomainError("power must be positive and finite");
  if (!(cfg.alpha > 2.0) || !std::isfinite(cfg.alpha))
    throw DomainError("alpha must be > 2 (the density integral diverges otherwise)");
  if (!(cfg.r_bob > 0.0) || !std::isfinite(cfg.r_bob))
    throw DomainError("r_bob must be positive and finite");
  if (!(cfg.lambda_e >= 0.0) || !std::isfinite(cfg.lambda_e))
    throw DomainError("lambda_e must be nonnegative and finite");
  if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0))
    throw DomainError("tau must lie in [0,1]");
  if (!(cfg.gamma_hat > 0.0) || !std::isfinite(cfg.gamma_hat))
    throw DomainError("gamma_hat must be positive and finite");
}

double dbm_to_linear(double p_dbm) { return std::pow(10.0, p_dbm / 10.0); }

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Suspend: return "suspend";
    case Regime::FullPower: return "full_power";
    case Regime::Interior: return "interior";
  }
  return "?";
}

DerivedParams derive(const SystemConfig& cfg, std::optional<double> rate,
                     std::optional<double> eps) {
  validate(cfg);
  DerivedParams d;
  const double t2 = cfg.tau * cfg.tau;
  const double rba = std::pow(cfg.r_bob, cfg.alpha);
  d.kappa = (1.0 - t2) * cfg.power * cfg.gamma_hat / (t2 * cfg.power + rba);
  d.delta = 2.0 / cfg.alpha;
  d.beta = M_PI * num::gamma_fn(1.0 + d.delta);
  d.l0 = d.delta / (cfg.n_antennas - 1);
  d.l1 = 1.0 - d.l0;
  d.l2 = 1.0 + d.l0;
  if (rate) {
    if (!(*rate > 0.0) || !std::isfinite(*rate))
      throw DomainError("rate must be positive and finite");
    d.t_pow = std::exp2(*rate);
    d.theta = (*d.t_pow - 1.0) / *d.t_pow;
    d.omega = (*d.t_pow - 1.0) / d.kappa;  // +inf at kappa == 0 (tau == 1)
  }
  if (eps) {
    if (!(*eps > 0.0 && *eps < 1.0))
      throw DomainError("eps must lie strictly inside (0,1)");
    d.big_l = d.beta * cfg.lambda_e * std::pow(cfg.power, d.delta) /
              (-std::log1p(-*eps));
  }
  return d;
}

}  // namespace ansec
