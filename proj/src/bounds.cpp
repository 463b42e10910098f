#include "wigner/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wigner/errors.hpp"

namespace wigner {

namespace {

void require_order(int n) {
  if (n < 2) throw RangeError("constants need n >= 2, got " + std::to_string(n));
}

// (a+1)(2a^2 + 4a + 3) with a = n - u.
double tail_factor(double a) { return (a + 1.0) * (2.0 * a * a + 4.0 * a + 3.0); }
double tail_factor_derivative(double a) { return 6.0 * a * a + 12.0 * a + 7.0; }

}  // namespace

double p_polynomial(int n, double u) {
  require_order(n);
  return u * u * tail_factor(n - u) / 3.0;
}

double p_polynomial_derivative(int n, double u) {
  require_order(n);
  const double a = n - u;
  return (2.0 * u * tail_factor(a) - u * u * tail_factor_derivative(a)) / 3.0;
}

std::int64_t p_polynomial_times3(int n, int u) {
  require_order(n);
  const std::int64_t a = n - u;
  return static_cast<std::int64_t>(u) * u * (a + 1) * (2 * a * a + 4 * a + 3);
}

double u0(int n) {
  require_order(n);
  const double x = n;
  const double root = std::sqrt(4 * x * x * x * x + 16 * x * x * x + 20 * x * x + 8 * x + 5);
  const double r = std::cbrt(4 * x * x * x + 12 * x * x + 5 * std::sqrt(2.0) * root + 22 * x + 14);
  return (4 * (x + 1) - r / std::cbrt(4.0) - (2 * x * x + 4 * x - 3) / (std::cbrt(2.0) * r)) / 5;
}

ConstantsRow constants_row(int n) {
  require_order(n);
  ConstantsRow row;
  row.n = n;
  row.u0 = u0(n);

  std::int64_t best = -1;
  for (int u = 1; u <= n - 1; ++u) {
    const std::int64_t v = p_polynomial_times3(n, u);
    if (v > best) {
      best = v;
      row.argmax_u = u;
    }
  }
  row.p_at_argmax = static_cast<double>(best) / 3.0;

  const std::int64_t den = 3 * static_cast<std::int64_t>(n) * n;
  const std::int64_t g = std::gcd(best, den);
  row.c_n_exact = Rational{best / g, den / g};
  row.c_n = row.c_n_exact.value();

  const double lo = std::floor(row.u0);
  const double hi = std::ceil(row.u0);
  row.floor_ceil_c_n =
      std::max(p_polynomial(n, lo), p_polynomial(n, hi)) / (static_cast<double>(n) * n);
  return row;
}

double dc2_bound_from_gap(int n, double gap) {
  if (gap < 0.0) throw PreconditionError("dc2_bound_from_gap: negative gap");
  return std::sqrt(constants_row(n).c_n) / 2.0 * std::sqrt(gap);
}

double dc2_bound_from_lhs(double lhs) {
  if (lhs < 0.0) throw PreconditionError("dc2_bound_from_lhs: negative input");
  return std::sqrt(lhs) / 2.0;
}

std::uint64_t catalan(int k) {
  if (k < 0 || k > 30) throw RangeError("catalan: k must lie in [0, 30]");
  std::uint64_t c = 1;
  for (int j = 0; j < k; ++j) {
    c = c * 2 * (2 * static_cast<std::uint64_t>(j) + 1) / (static_cast<std::uint64_t>(j) + 2);
  }
  return c;
}

double semicircle_moment(double t, int k) {
  if (!(t > 0.0)) throw PreconditionError("semicircle_moment: variance must be positive");
  if (k < 0) throw RangeError("semicircle_moment: k must be non-negative");
  if (k % 2 != 0) return 0.0;
  return std::pow(t, k / 2) * static_cast<double>(catalan(k / 2));
}

}  // namespace wigner
