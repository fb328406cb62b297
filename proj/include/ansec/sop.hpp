#pragma once

#include "ansec/params.hpp"

namespace ansec {

// Secrecy-outage minimization at a fixed target rate.
struct SopProblem {
  SystemConfig config;
  double rate = 1.0;  // target secrecy rate R_S > 0, bits/s/Hz
  DerivedParams derived;
};

// Validates the config and rate, derives the shorthand quantities.
SopProblem make_sop_problem(const SystemConfig& cfg, double rate);

// J(xi) = (1/omega - 1/xi)^(-delta) * (1 + (xi/omega - 1) theta phi)^(1-N)
// with phi = (1/xi - 1)/(N-1). Requires omega < xi <= 1.
double j_factor(double xi, const SopProblem& prob);

// Closed-form secrecy outage probability
//   O(xi) = 1 - exp(-beta lambda_e (P/theta)^delta J(xi)).
double sop(double xi, const SopProblem& prob);

// Coefficients of the stationarity cubic K(xi) = xi^3 + a xi^2 + b xi + c:
//   a = -l1 w,  b = -(delta/theta) w^2 - l0 w^2 - l2 w,  c = l2 w^2.
struct CubicCoeffs {
  double a;
  double b;
  double c;
};
CubicCoeffs k_coeffs(const SopProblem& prob);

// K(xi); its sign equals the sign of dJ/dxi on (omega, 1].
double k_cubic(double xi, const SopProblem& prob);

// Three-regime optimal power split:
//   Suspend   if kappa <= T-1,
//   FullPower if T-1 < kappa <= (T-1)(1 + sqrt(delta/theta)),
//   Interior  otherwise, xi* = unique root of K on (omega, 1).
// Interior/FullPower decisions carry the SOP at xi* as the objective.
ParDecision optimal_par_sop(const SopProblem& prob);

// Minimum SOP O* = O(xi*): identical decision, named for the objective.
ParDecision min_sop(const SopProblem& prob);

}  // namespace ansec
