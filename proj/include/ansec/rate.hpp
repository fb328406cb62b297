#pragma once

#include <cstdint>

#include "ansec/params.hpp"

namespace ansec {

// Secrecy-rate maximization under an outage-probability cap eps.
struct RateProblem {
  SystemConfig config;
  double eps = 0.01;  // outage constraint, in (0,1)
  DerivedParams derived;  // includes big_l
};

RateProblem make_rate_problem(const SystemConfig& cfg, double eps);

enum class RhoMode { Exact, LargeN };

// How to evaluate the eavesdropper-SINR quantile rho(xi).
struct RhoSolver {
  double tol = 1e-10;      // bisection interval width
  double rho_max = 0.0;    // L^(1/delta), the quantile at xi = 1
  RhoMode mode = RhoMode::Exact;
};

RhoSolver make_rho_solver(const RateProblem& prob,
                          RhoMode mode = RhoMode::Exact, double tol = 1e-10);

// Z(xi, rho) - L with Z = rho^delta (1 + rho(1-xi)/(N-1))^(N-1); strictly
// increasing in rho. (The solver itself bisects the logarithm of Z, which
// has the same root and cannot overflow for extreme path-loss exponents.)
double z_residual(double xi, double rho, const RateProblem& prob);

// The 1-eps quantile of the best eavesdropper's SINR, per transmit split xi:
// Exact mode solves Z(xi, rho) = L on (0, L^(1/delta)]; LargeN mode uses the
// Lambert-W closed form rho = (delta/(1-xi)) W((1-xi) L^(1/delta) / delta)
// (equal to the ln(z/W(z)) form via the identity W(z) = ln(z/W(z))), with
// rho = L^(1/delta) at xi = 1. Degenerate case lambda_e = 0 returns 0.
double rho(double xi, const RateProblem& prob, const RhoSolver& solver);

// d rho / d xi = rho^2 / (delta + l2 (1-xi) rho) by implicit differentiation.
double drho_dxi(double xi, double rho_val, const RateProblem& prob);

// R_S(xi) = log2((1 + kappa xi) / (1 + rho(xi) xi)) where rho(xi) < kappa,
// else 0 (the point supports no positive secrecy rate). Never negative.
double secrecy_rate(double xi, const RateProblem& prob,
                    const RhoSolver& solver);

// dR_S/dxi = (1/ln2) [ kappa/(1+kappa xi) - (rho + xi drho)/(1 + xi rho) ].
// Requires rho(xi) < kappa.
double drs_dxi(double xi, const RateProblem& prob, const RhoSolver& solver);

// Decision regimes:
//   Suspend   if kappa <= rho(0) (= rho_min),
//   FullPower if dR_S/dxi at xi = 1 is > 0,
//   Interior  otherwise, xi* = unique root of dR_S/dxi in (0,1).
// The solver mode governs how xi* is located; the reported objective is
// always the rate under the exact quantile at xi*, so the returned pair
// honors the outage constraint in every mode.
ParDecision optimal_par_rate(const RateProblem& prob, const RhoSolver& solver);

// Maximum secrecy rate R_S* = R_S(xi*): same decision, named for the
// objective.
ParDecision max_rate(const RateProblem& prob, const RhoSolver& solver);

// The full-power test in the form used by the decision: sign of the boundary
// derivative dR_S/dxi at xi = 1.
bool fullpower_by_derivative(const RateProblem& prob);

// The rearranged closed-form full-power test
//   kappa > (delta L^(alpha/2) + L^alpha) / (delta - L^alpha)  and
//   L < delta^(1/alpha).
// Equivalent to the derivative sign; kept for cross-assertion because the
// rearrangement divides by (delta - L^alpha), which flips sign.
bool fullpower_by_inequality(const RateProblem& prob);

// Count of optimal_par_rate calls where the two full-power forms disagreed
// (should stay 0; monitored by the validation suites).
std::uint64_t fullpower_disagreements();

// Quadratic-in-rho stationarity identity at an interior optimum:
//   A = (kappa xi^2 - l0 xi + l2) rho^2 + (l2 kappa xi - l2 kappa + delta) rho
//       - delta kappa,
// zero exactly where dR_S/dxi vanishes. Returns |A| scaled by
// max(1, kappa rho^2) so the bound is meaningful across magnitudes.
double stationarity_residual(const ParDecision& dec, const RateProblem& prob,
                             const RhoSolver& solver);

}  // namespace ansec
