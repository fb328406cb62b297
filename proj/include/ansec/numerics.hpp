#pragma once

#include <cmath>
#include <utility>

#include "ansec/errors.hpp"

namespace ansec::num {

// Default interval width for bisection in the optimizers.
inline constexpr double kDefaultTol = 1e-10;

// Gamma function on the positive axis (only (1,2) is exercised by beta).
double gamma_fn(double x);

// Principal Lambert-W on x >= 0: returns w >= 0 with w*e^w = x.
// Residual |w e^w - x| <= 1e-12 * max(1, x).
double lambert_w0(double x);

// A sign-change enclosure: lo < hi and f(lo)*f(hi) <= 0.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

// Evaluates f at both ends and checks the enclosure invariant.
template <class F>
Bracket make_bracket(F&& f, double lo, double hi) {
  if (!(lo < hi)) throw BracketError("bracket: lo must be < hi");
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo * f_hi > 0.0)
    throw BracketError("bracket: no sign change on [lo, hi]");
  return Bracket{lo, hi, f_lo, f_hi};
}

// Plain bisection to interval width <= tol; returns the final midpoint.
// Deterministic: the sequence of midpoints depends only on (bracket, tol).
template <class F>
double bisect(F&& f, Bracket br, double tol) {
  if (!(tol > 0.0)) throw DomainError("bisect: tol must be positive");
  if (!(br.lo < br.hi) || br.f_lo * br.f_hi > 0.0)
    throw BracketError("bisect: invalid bracket");
  double lo = br.lo, hi = br.hi, f_lo = br.f_lo;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating resolution
    double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Unique root of K(x) = x^3 + a x^2 + b x + c inside (lo, hi), given
// K(lo) < 0 < K(hi) and K convex on the interval. Fast path is the closed
// Cardano expression; when its discriminant goes negative (three real roots)
// or the closed-form value escapes the interval, falls back to bisection.
// Residual: |K(root)| <= 1e-9 * max(1, |K(lo)|, |K(hi)|).
double cubic_root_in_interval(double a, double b, double c, double lo,
                              double hi);

namespace detail {
// Raw Cardano evaluation x = cbrt(q+p) + cbrt(q-p) - a/3 with
// p = sqrt((b/3 - a^2/9)^3 + q^2), q = ab/6 - c/2 - a^3/27.
// Returns false when the radicand is negative (three real roots).
// Cube roots are real (sign-preserving), not complex principal values.
bool cardano_real_root(double a, double b, double c, double& root);
}  // namespace detail

}  // namespace ansec::num
