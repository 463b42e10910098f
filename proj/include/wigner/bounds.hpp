#pragma once

// Constants of the fourth-moment bound and the d_C2 bound assembly.

#include <cstdint>

namespace wigner {

/// P_n(u) = u^2 (n-u+1) (2(n-u)^2 + 4(n-u) + 3) / 3.
double p_polynomial(int n, double u);
/// dP_n/du.
double p_polynomial_derivative(int n, double u);
/// 3 P_n(u) for integer u, exact.
std::int64_t p_polynomial_times3(int n, int u);

/// Closed-form stationary point of P_n used by the floor/ceil recipe.
double u0(int n);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct ConstantsRow {
  int n = 0;
  double u0 = 0.0;
  int argmax_u = 0;         // integer maximizer of P_n over [1, n-1]
  double p_at_argmax = 0.0;
  double c_n = 0.0;         // p_at_argmax / n^2
  Rational c_n_exact;       // same value, reduced fraction
  double floor_ceil_c_n = 0.0;  // max{P(floor u0), P(ceil u0)} / n^2
};

/// C_n by integer maximization of P_n over [1, n-1]; n >= 2.
ConstantsRow constants_row(int n);

/// (sqrt(C_n) / 2) sqrt(gap).
double dc2_bound_from_gap(int n, double gap);
/// sqrt(lhs) / 2, the Cauchy-Schwarz form of the gradient bound.
double dc2_bound_from_lhs(double lhs);

/// Catalan(k) by the integer recurrence; exact for k <= 30.
std::uint64_t catalan(int k);
/// k-th moment of the centered semicircular law with variance t.
double semicircle_moment(double t, int k);

}  // namespace wigner
