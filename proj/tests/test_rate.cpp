#include <cmath>
#include <vector>

#include "doctest.h"

#include "ansec/errors.hpp"
#include "ansec/rate.hpp"

using namespace ansec;

namespace {
// Scenario R: N=20, P=1, alpha=4, r_bob=1, lambda_e=2, tau=0.1,
// gamma_hat=20, outage cap 0.01. All references computed independently at
// 40-digit precision.
SystemConfig scenario_r() {
  SystemConfig cfg;
  cfg.n_antennas = 20;
  cfg.power = 1.0;
  cfg.alpha = 4.0;
  cfg.r_bob = 1.0;
  cfg.lambda_e = 2.0;
  cfg.tau = 0.1;
  cfg.gamma_hat = 20.0;
  return cfg;
}

constexpr double kKappaR = 19.603960396039604;
constexpr double kRhoFullSplit = 306964.72297830863;  // quantile at xi = 1

const double kXiGrid[5] = {0.0, 0.25, 0.5, 0.75, 0.99};
const double kRhoExact[5] = {6.2471136038123861, 8.1001544165477543,
                             11.670585175585966, 21.729391562353056,
                             367.93396840281423};
const double kRhoApprox[5] = {5.4678053916412219, 7.1148676538271204,
                              10.302136782745976, 19.344191803731934,
                              340.24160687054965};

constexpr double kXiStarR = 0.22962282813906358;
constexpr double kRateStarR = 0.96641772508692388;
}  // namespace

TEST_CASE("problem construction validates the cap") {
  CHECK_THROWS_AS(make_rate_problem(scenario_r(), 0.0), DomainError);
  CHECK_THROWS_AS(make_rate_problem(scenario_r(), 1.0), DomainError);
  const RateProblem prob = make_rate_problem(scenario_r(), 0.01);
  CHECK(prob.derived.kappa == doctest::Approx(kKappaR).epsilon(1e-13));
  REQUIRE(prob.derived.big_l.has_value());
}

TEST_CASE("quantile matches the reference on both solver modes") {
  const RateProblem prob = make_rate_problem(scenario_r(), 0.01);
  const RhoSolver exact = make_rho_solver(prob, RhoMode::Exact, 1e-12);
  const RhoSolver approx = make_rho_solver(prob, RhoMode::LargeN);
  for (int i = 0; i < 5; ++i) {
    CHECK(rho(kXiGrid[i], prob, exact) ==
          doctest::Approx(kRhoExact[i]).epsilon(1e-9));
    CHECK(rho(kXiGrid[i], prob, approx) ==
          doctest::Approx(kRhoApprox[i]).epsilon(1e-9));
    // The product form (1+x/m)^m < e^x makes the exact quantile sit strictly
    // above the asymptotic one.
    CHECK(rho(kXiGrid[i], prob, exact) > rho(kXiGrid[i], prob, approx));
  }
  // At xi = 1 the interference term vanishes and both modes return L^(1/delta).
  CHECK(rho(1.0, prob, exact) ==
        doctest::Approx(kRhoFullSplit).epsilon(1e-10));
  CHECK(rho(1.0, prob, approx) ==
        doctest::Approx(kRhoFullSplit).epsilon(1e-10));
}

TEST_CASE("quantile solves its own defining equation") {
  const RateProblem prob = make_rate_problem(scenario_r(), 0.01);
  const RhoSolver exact = make_rho_solver(prob, RhoMode::Exact, 1e-12);
  for (int i = 0; i < 5; ++i) {
    const double r = rho(kXiGrid[i], prob, exact);
    CHECK(std::fabs(z_residual(kXiGrid[i], r, prob)) <=
          1e-6 * *prob.derived.big_l);
  }
}

TEST_CASE("quantile derivative agrees with an extrapolated difference") {
  const RateProblem prob = make_rate_problem(scenario_r(), 0.01);
  const RhoSolver exact = make_rho_solver(prob, RhoMode::Exact, 1e-13);
  for (double xi : {0.1, 0.35, 0.6, 0.85}) {
    const double r = rho(xi, prob, exact);
    const double closed = drho_dxi(xi, r, prob);
    const double h = 1e-4;
    const auto diff = [&](double step) {
      return (rho(xi + step, prob, exact) - rho(xi - step, prob, exact)) /
             (2.0 * step);
    };
    const double richardson = (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
    CHECK(std::fabs(closed - richardson) <= 1e-6 * std::fabs(closed));
  }
}

TEST_CASE("degenerate density gives a zero quantile") {
  SystemConfig cfg = scenario_r();
  cfg.lambda_e = 0.0;
  const RateProblem prob = make_rate_problem(cfg, 0.01);
  const RhoSolver exact = make_rho_solver(prob);
  CHECK(rho(0.5, prob, exact) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("interior optimum matches the reference evaluation") {
  const RateProblem prob = make_rate_problem(scenario_r(), 0.01);
  const RhoSolver exact = make_rho_solver(prob, RhoMode::Exact, 1e-12);
  const ParDecision dec = optimal_par_rate(prob, exact);
  CHECK(dec.regime == Regime::Interior);
  REQUIRE(dec.xi.has_value());
  REQUIRE(dec.objective.has_value());
  CHECK(*dec.xi == doctest::Approx(kXiStarR).epsilon(1e-7));
  CHECK(*dec.objective == doctest::Approx(kRateStarR).epsilon(1e-9));
  CHECK(stationarity_residual(dec, prob, exact) <= 1e-9);
  const ParDecision again = max_rate(prob, exact);
  CHECK(*again.objective == doctest::Approx(*dec.objective).epsilon(1e-14));
}

TEST_CASE("asymptotic mode locates a near-optimal split with exact payoff") {
  const RateProblem prob = make_rate_problem(scenario_r(), 0.01);
  const RhoSolver exact = make_rho_solver(prob, RhoMode::Exact, 1e-12);
  const RhoSolver approx = make_rho_solver(prob, RhoMode::LargeN, 1e-12);
  const ParDecision de = optimal_par_rate(prob, exact);
  const ParDecision da = optimal_par_rate(prob, approx);
  CHECK(da.regime == Regime::Interior);
  REQUIRE(da.xi.has_value());
  REQUIRE(da.objective.has_value());
  // The asymptotic locator lands near (slightly above) the exact argmax...
  CHECK(std::fabs(*da.xi - *de.xi) <= 0.05);
  // ...and its reported payoff is the exact-quantile rate there: slightly
  // below the true maximum, never above it.
  CHECK(*da.objective <= *de.objective + 1e-12);
  CHECK(*da.objective >= 0.99 * *de.objective);
  const RhoSolver payoff = make_rho_solver(prob, RhoMode::Exact, 1e-12);
  CHECK(*da.objective ==
        doctest::Approx(secrecy_rate(*da.xi, prob, payoff)).epsilon(1e-9));
}

TEST_CASE("suspension when the eavesdropper quantile dominates") {
  SystemConfig cfg = scenario_r();
  cfg.tau = 0.9;  // kappa = (1-0.81)*20/(0.81+1) = 2.0994 < rho(0) = 6.247
  const RateProblem prob = make_rate_problem(cfg, 0.01);
  const RhoSolver exact = make_rho_solver(prob);
  const ParDecision dec = optimal_par_rate(prob, exact);
  CHECK(dec.regime == Regime::Suspend);
  CHECK_FALSE(dec.xi.has_value());
  // Every split yields zero secrecy rate.
  for (double xi : {0.05, 0.3, 0.7, 1.0}) {
    CHECK(secrecy_rate(xi, prob, exact) == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("full power when eavesdroppers are vanishingly sparse") {
  SystemConfig cfg = scenario_r();
  cfg.lambda_e = 1e-3;
  const RateProblem prob = make_rate_problem(cfg, 0.1);
  const RhoSolver exact = make_rho_solver(prob);
  CHECK(fullpower_by_derivative(prob));
  CHECK(fullpower_by_inequality(prob));
  const ParDecision dec = optimal_par_rate(prob, exact);
  CHECK(dec.regime == Regime::FullPower);
  REQUIRE(dec.xi.has_value());
  CHECK(*dec.xi == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(dec.objective.has_value());
  CHECK(*dec.objective ==
        doctest::Approx(secrecy_rate(1.0, prob, exact)).epsilon(1e-12));
  CHECK(fullpower_disagreements() == 0);
}

TEST_CASE("rate curve is concave across its positive region") {
  // Concavity holds where the rate is positive; once the eavesdropper
  // quantile overtakes the main channel the curve is clamped at zero, which
  // makes a convex kink by construction, so those triples are excluded.
  const RateProblem prob = make_rate_problem(scenario_r(), 0.01);
  const RhoSolver exact = make_rho_solver(prob, RhoMode::Exact, 1e-12);
  std::vector<double> vals;
  for (int i = 0; i <= 100; ++i)
    vals.push_back(secrecy_rate(i / 100.0, prob, exact));
  int positive_triples = 0;
  for (std::size_t i = 2; i < vals.size(); ++i) {
    if (vals[i] > 0.0 && vals[i - 1] > 0.0 && vals[i - 2] > 0.0) {
      ++positive_triples;
      CHECK(vals[i] - 2.0 * vals[i - 1] + vals[i - 2] <= 1e-8);
    }
  }
  CHECK(positive_triples >= 50);
}
