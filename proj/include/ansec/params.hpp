#pragma once

#include <optional>
#include <string>

#include "ansec/errors.hpp"

namespace ansec {

// Physical scenario. Power is linear and noise-normalized (the receiver noise
// has unit variance); distances are in units of r_bob's scale.
struct SystemConfig {
  int n_antennas = 2;      // N >= 2 (artificial noise needs N-1 dimensions)
  double power = 1.0;      // P > 0, linear
  double alpha = 4.0;      // path-loss exponent, > 2
  double r_bob = 1.0;      // Alice-Bob distance, > 0
  double lambda_e = 0.0;   // eavesdropper density per unit area, >= 0
  double tau = 0.0;        // channel-estimation error coefficient in [0,1]
  double gamma_hat = 1.0;  // estimated main-channel gain ||h_hat_b||^2, > 0
};

// Throws DomainError naming the violated invariant.
void validate(const SystemConfig& cfg);

// dBm figure -> linear power under the unit-noise normalization: 10^(x/10).
double dbm_to_linear(double p_dbm);

// Shorthand quantities derived from a config. Rate-dependent fields are
// present only when a secrecy rate was supplied; big_l only with an outage
// threshold eps.
struct DerivedParams {
  double kappa = 0.0;  // Bob's worst-case SINR per unit xi
  double delta = 0.0;  // 2/alpha
  double beta = 0.0;   // pi * Gamma(1 + delta)
  double l0 = 0.0;     // delta/(N-1)
  double l1 = 0.0;     // 1 - l0
  double l2 = 0.0;     // 1 + l0
  std::optional<double> t_pow;  // T = 2^rate
  std::optional<double> theta;  // (T-1)/T
  std::optional<double> omega;  // (T-1)/kappa
  std::optional<double> big_l;  // beta*lambda_e*P^delta / (-ln(1-eps))
};

// kappa = (1-tau^2) P gamma / (tau^2 P + r_bob^alpha), plus the shorthand
// table above. Pure and eager; never cached.
DerivedParams derive(const SystemConfig& cfg,
                     std::optional<double> rate = std::nullopt,
                     std::optional<double> eps = std::nullopt);

// Outcome of a power-split optimization.
enum class Regime { Suspend, FullPower, Interior };

const char* regime_name(Regime r);

struct ParDecision {
  Regime regime = Regime::Suspend;
  std::optional<double> xi;         // absent exactly when regime == Suspend
  std::optional<double> objective;  // SOP or secrecy rate, per context
};

}  // namespace ansec
