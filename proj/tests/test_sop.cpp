#include <cmath>

#include "doctest.h"

#include "ansec/errors.hpp"
#include "ansec/sop.hpp"

using namespace ansec;

namespace {
// Independently computed 40-digit references for pinned scenarios.

// Scenario A: N=20, P=10, alpha=4, r_bob=1, lambda_e=2, tau=0.3,
// gamma_hat=20, target rate 2.
SystemConfig scenario_a() {
  SystemConfig cfg;
  cfg.n_antennas = 20;
  cfg.power = 10.0;
  cfg.alpha = 4.0;
  cfg.r_bob = 1.0;
  cfg.lambda_e = 2.0;
  cfg.tau = 0.3;
  cfg.gamma_hat = 20.0;
  return cfg;
}
constexpr double kXiStarA = 0.18106434394273869174;
constexpr double kSopMinA = 3.1977254368832513e-5;

// Scenario B: like A but N=8 and gamma_hat=20 (information-signal factor
// reference) / gamma_hat=8 (full outage-probability reference).
constexpr double kJHalfN8 = 0.00022551785217834197567;   // gamma_hat=20
constexpr double kSopN8Xi06 = 0.32961152081305716396;    // gamma_hat=8
}  // namespace

TEST_CASE("problem construction validates the rate") {
  CHECK_THROWS_AS(make_sop_problem(scenario_a(), 0.0), DomainError);
  CHECK_THROWS_AS(make_sop_problem(scenario_a(), -1.0), DomainError);
}

TEST_CASE("information-signal factor matches the reference evaluation") {
  SystemConfig cfg = scenario_a();
  cfg.n_antennas = 8;  // gamma_hat stays 20
  const SopProblem prob = make_sop_problem(cfg, 2.0);
  CHECK(j_factor(0.5, prob) == doctest::Approx(kJHalfN8).epsilon(1e-12));
}

TEST_CASE("outage probability matches the reference evaluation") {
  SystemConfig cfg = scenario_a();
  cfg.n_antennas = 8;
  cfg.gamma_hat = 8.0;
  const SopProblem prob = make_sop_problem(cfg, 2.0);
  CHECK(sop(0.6, prob) == doctest::Approx(kSopN8Xi06).epsilon(1e-12));
}

TEST_CASE("outage probability is zero without eavesdroppers") {
  SystemConfig cfg = scenario_a();
  cfg.lambda_e = 0.0;
  const SopProblem prob = make_sop_problem(cfg, 2.0);
  CHECK(sop(0.5, prob) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("evaluation outside the feasible split range is rejected") {
  const SopProblem prob = make_sop_problem(scenario_a(), 2.0);
  const double omega = *prob.derived.omega;
  CHECK_THROWS_AS(sop(omega * 0.5, prob), FeasibilityError);
  CHECK_THROWS_AS(sop(1.5, prob), FeasibilityError);
  CHECK_NOTHROW(sop(1.0, prob));
}

TEST_CASE("stationarity cubic boundary identities") {
  const SopProblem prob = make_sop_problem(scenario_a(), 2.0);
  const DerivedParams& d = prob.derived;
  const double omega = *d.omega;
  const double theta = *d.theta;
  const CubicCoeffs k = k_coeffs(prob);
  // K(omega) = -(delta/theta) omega^3 < 0.
  const double k_at_omega = k_cubic(omega, prob);
  CHECK(k_at_omega ==
        doctest::Approx(-(d.delta / theta) * omega * omega * omega)
            .epsilon(1e-12));
  CHECK(k_at_omega < 0.0);
  // K(1) = (1-omega)^2 - (delta/theta) omega^2.
  CHECK(k_cubic(1.0, prob) ==
        doctest::Approx((1.0 - omega) * (1.0 - omega) -
                        (d.delta / theta) * omega * omega)
            .epsilon(1e-12));
  // K(0) = c = l2 omega^2 > 0: the second sign change sits below omega, so
  // root isolation must start at omega, not at zero.
  CHECK(k_cubic(0.0, prob) == doctest::Approx(k.c).epsilon(1e-15));
  CHECK(k.c > 0.0);
}

TEST_CASE("interior optimum matches the reference evaluation") {
  const SopProblem prob = make_sop_problem(scenario_a(), 2.0);
  const ParDecision dec = optimal_par_sop(prob);
  CHECK(dec.regime == Regime::Interior);
  REQUIRE(dec.xi.has_value());
  REQUIRE(dec.objective.has_value());
  CHECK(*dec.xi == doctest::Approx(kXiStarA).epsilon(1e-9));
  CHECK(*dec.objective == doctest::Approx(kSopMinA).epsilon(1e-9));
  // The optimum sits strictly above sqrt(omega).
  CHECK(*dec.xi > std::sqrt(*prob.derived.omega));
  // min_sop is the same decision.
  const ParDecision again = min_sop(prob);
  CHECK(again.regime == dec.regime);
  CHECK(*again.xi == doctest::Approx(*dec.xi).epsilon(1e-14));
}

TEST_CASE("suspension when the main channel cannot support the rate") {
  SystemConfig cfg = scenario_a();
  cfg.gamma_hat = 0.5;  // kappa = 0.91*10*0.5/1.9 = 2.395 < T-1 = 3
  const SopProblem prob = make_sop_problem(cfg, 2.0);
  CHECK(*prob.derived.omega >= 1.0);
  const ParDecision dec = optimal_par_sop(prob);
  CHECK(dec.regime == Regime::Suspend);
  CHECK_FALSE(dec.xi.has_value());
  CHECK_FALSE(dec.objective.has_value());
}

TEST_CASE("full power when the margin is thin") {
  // kappa between T-1 and (T-1)(1 + sqrt(delta/theta)): here T-1=3 and the
  // upper bound is 3*(1+sqrt(2/3)) = 5.449...; pick kappa = 5.
  SystemConfig cfg = scenario_a();
  cfg.gamma_hat = 5.0 * 1.9 / (0.91 * 10.0);
  const SopProblem prob = make_sop_problem(cfg, 2.0);
  CHECK(prob.derived.kappa == doctest::Approx(5.0).epsilon(1e-12));
  const ParDecision dec = optimal_par_sop(prob);
  CHECK(dec.regime == Regime::FullPower);
  REQUIRE(dec.xi.has_value());
  CHECK(*dec.xi == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(dec.objective.has_value());
  CHECK(*dec.objective == doctest::Approx(sop(1.0, prob)).epsilon(1e-12));
}

TEST_CASE("outage probability grows with eavesdropper density") {
  SystemConfig lo = scenario_a();
  SystemConfig hi = scenario_a();
  hi.lambda_e = 4.0;
  const SopProblem pl = make_sop_problem(lo, 2.0);
  const SopProblem ph = make_sop_problem(hi, 2.0);
  for (double xi : {0.1, 0.3, 0.6, 1.0}) {
    CHECK(sop(xi, ph) > sop(xi, pl));
  }
}

TEST_CASE("optimum beats its neighborhood in the actual objective") {
  const SopProblem prob = make_sop_problem(scenario_a(), 2.0);
  const ParDecision dec = optimal_par_sop(prob);
  const double xs = *dec.xi;
  for (double off : {-3e-3, -1e-3, 1e-3, 3e-3}) {
    CHECK(sop(xs + off, prob) >= *dec.objective);
  }
}
