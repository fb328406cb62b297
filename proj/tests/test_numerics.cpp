#include <cmath>
#include <random>

#include "doctest.h"

#include "ansec/errors.hpp"
#include "ansec/numerics.hpp"

using namespace ansec;

// High-precision reference values, computed independently with a
// 40-digit arbitrary-precision evaluation of the defining expressions.
namespace {
constexpr double kGammaHalfPlusOne = 0.88622692545275801365;  // Gamma(1.5)
constexpr double kW1 = 0.56714329040978387300;               // W(1)
constexpr double kSqrt2 = 1.4142135623730951;
}  // namespace

TEST_CASE("gamma function matches reference values and recurrence") {
  CHECK(num::gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(num::gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(num::gamma_fn(1.5) ==
        doctest::Approx(kGammaHalfPlusOne).epsilon(1e-13));
  // Gamma(x+1) = x Gamma(x) across the band used by the area prefactor.
  for (double x = 1.05; x < 2.0; x += 0.05) {
    CHECK(num::gamma_fn(x + 1.0) ==
          doctest::Approx(x * num::gamma_fn(x)).epsilon(1e-12));
  }
}

TEST_CASE("lambert w0 reference points") {
  CHECK(num::lambert_w0(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(num::lambert_w0(1.0) == doctest::Approx(kW1).epsilon(1e-13));
  CHECK(num::lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("lambert w0 residual bound over twelve decades") {
  for (int i = 0; i <= 1000; ++i) {
    const double x = std::pow(10.0, -8.0 + 16.0 * i / 1000.0);
    const double w = num::lambert_w0(x);
    const double residual = std::fabs(w * std::exp(w) - x);
    CHECK(residual <= 1e-12 * std::max(1.0, x));
  }
}

TEST_CASE("bracket construction enforces the sign change") {
  auto f = [](double x) { return x * x - 2.0; };
  const num::Bracket br = num::make_bracket(f, 1.0, 2.0);
  CHECK(br.f_lo < 0.0);
  CHECK(br.f_hi > 0.0);
  CHECK_THROWS_AS(num::make_bracket(f, 2.0, 3.0), BracketError);
  CHECK_THROWS_AS(num::make_bracket(f, 2.0, 1.0), BracketError);
}

TEST_CASE("bisection converges to the isolated root") {
  auto f = [](double x) { return x * x - 2.0; };
  const double root = num::bisect(f, num::make_bracket(f, 1.0, 2.0), 1e-12);
  CHECK(std::fabs(root - kSqrt2) <= 1e-11);
  CHECK_THROWS_AS(num::bisect(f, num::make_bracket(f, 1.0, 2.0), -1.0),
                  DomainError);
}

TEST_CASE("cubic root in interval on a factored polynomial") {
  // (x-1)(x-3)(x+2) = x^3 - 2x^2 - 5x + 6; the window [2,4] isolates x=3
  // and the cubic is convex there.
  const double root = num::cubic_root_in_interval(-2.0, -5.0, 6.0, 2.0, 4.0);
  CHECK(root == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("raw closed-form cubic evaluation") {
  double root = 0.0;
  // x^3 - 8: single real root.
  CHECK(num::detail::cardano_real_root(0.0, 0.0, -8.0, root));
  CHECK(root == doctest::Approx(2.0).epsilon(1e-12));
  // (x-1)^3: zero radicand.
  CHECK(num::detail::cardano_real_root(-3.0, 3.0, -1.0, root));
  CHECK(root == doctest::Approx(1.0).epsilon(1e-10));
  // (x-1)(x-2)(x-3): three real roots, negative radicand -> declined.
  CHECK_FALSE(num::detail::cardano_real_root(-6.0, 11.0, -6.0, root));
}

TEST_CASE("cubic solver agrees with bisection on random convex windows") {
  std::mt19937_64 gen(20260822u);
  std::uniform_real_distribution<double> coef(-4.0, 4.0);
  int tested = 0;
  for (int it = 0; it < 2000 && tested < 200; ++it) {
    const double a = coef(gen), b = coef(gen), c = coef(gen);
    auto k = [&](double x) { return ((x + a) * x + b) * x + c; };
    // Scan to the right of the inflection point -a/3 so the cubic is convex
    // on any window found there.
    const double start = std::max(-8.0, -a / 3.0);
    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (double x = start; x < 8.0; x += 0.25) {
      if (k(x) < 0.0 && k(x + 0.25) > 0.0) {
        lo = x;
        hi = x + 0.25;
        found = true;
        break;
      }
    }
    if (!found) continue;
    ++tested;
    const double root = num::cubic_root_in_interval(a, b, c, lo, hi);
    CHECK(root >= lo);
    CHECK(root <= hi);
    const double scale = std::max({1.0, std::fabs(k(lo)), std::fabs(k(hi))});
    CHECK(std::fabs(k(root)) <= 1e-9 * scale);
    const double ref = num::bisect(k, num::make_bracket(k, lo, hi), 1e-13);
    CHECK(std::fabs(root - ref) <= 1e-6);
  }
  CHECK(tested >= 200);
}
