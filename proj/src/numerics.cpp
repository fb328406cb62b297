#include "ansec/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace ansec::num {

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double lambert_w0(double x) {
  if (!(x >= 0.0)) throw DomainError("lambert_w0: negative argument (principal branch only)");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x < std::exp(1.0)) {
    // Winitzki start, then Halley on f(w) = w e^w - x. No overflow: w < 1.
    const double l = std::log1p(x);
    w = l * (1.0 - std::log1p(l) / (2.0 + l));
    for (int i = 0; i < 50; ++i) {
      const double ew = std::exp(w);
      const double f = w * ew - x;
      const double d = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
      const double step = f / d;
      w -= step;
      if (std::abs(step) <= 1e-16 * std::max(w, 1.0)) break;
    }
  } else {
    // Log-domain Newton on g(w) = w + ln w - ln x; immune to e^w overflow.
    const double lx = std::log(x);
    w = lx - std::log(lx);
    if (!(w > 0.0)) w = 1.0;
    for (int i = 0; i < 50; ++i) {
      const double g = w + std::log(w) - lx;
      const double step = g / (1.0 + 1.0 / w);
      w -= step;
      if (std::abs(step) <= 1e-16 * w) break;
    }
  }
  return w;
}

namespace detail {

bool cardano_real_root(double a, double b, double c, double& root) {
  const double q = a * b / 6.0 - c / 2.0 - a * a * a / 27.0;
  const double m = b / 3.0 - a * a / 9.0;  // depressed-cubic p/3 term
  const double rad = m * m * m + q * q;
  if (rad < 0.0) return false;  // three real roots: closed form leaves R
  const double p = std::sqrt(rad);
  // q - p loses all digits when p ~ q; recover it from the product
  // (q-p)(q+p) = q^2 - p^2 = -m^3.
  double s_plus, s_minus;
  if (q >= 0.0) {
    s_plus = q + p;
    s_minus = (s_plus == 0.0) ? 0.0 : -(m * m * m) / s_plus;
  } else {
    s_minus = q - p;
    s_plus = (s_minus == 0.0) ? 0.0 : -(m * m * m) / s_minus;
  }
  root = std::cbrt(s_plus) + std::cbrt(s_minus) - a / 3.0;
  return true;
}

}  // namespace detail

double cubic_root_in_interval(double a, double b, double c, double lo,
                              double hi) {
  const auto K = [&](double x) { return ((x + a) * x + b) * x + c; };
  const double k_lo = K(lo);
  const double k_hi = K(hi);
  if (!(lo < hi) || !(k_lo < 0.0) || !(k_hi > 0.0))
    throw BracketError("cubic_root_in_interval: need K(lo) < 0 < K(hi)");
  const double scale = std::max({1.0, std::abs(k_lo), std::abs(k_hi)});

  double x;
  bool have = detail::cardano_real_root(a, b, c, x);
  if (have && x > lo - 1e-9 && x < hi + 1e-9) {
    x = std::clamp(x, lo, hi);
    // Newton polish with the bracket as a safety net.
    double blo = lo, bhi = hi;
    for (int i = 0; i < 60; ++i) {
      const double f = K(x);
      if (std::abs(f) <= 1e-12 * scale) break;
      if (f < 0.0) blo = std::max(blo, x); else bhi = std::min(bhi, x);
      const double df = (3.0 * x + 2.0 * a) * x + b;
      double nx = (df != 0.0) ? x - f / df : x;
      if (!(nx > blo && nx < bhi)) nx = 0.5 * (blo + bhi);
      if (nx == x) break;
      x = nx;
    }
  } else {
    x = bisect([&](double t) { return K(t); }, Bracket{lo, hi, k_lo, k_hi},
               1e-15 * std::max(1.0, std::abs(hi)));
  }
  if (std::abs(K(x)) > 1e-9 * scale)
    x = bisect([&](double t) { return K(t); }, Bracket{lo, hi, k_lo, k_hi},
               1e-15 * std::max(1.0, std::abs(hi)));
  return x;
}

}  // namespace ansec::num
