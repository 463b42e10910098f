#pragma once

// Free gradient on Wigner integrals, the number-operator pseudo-inverse, and
// the two routes to the left-hand side of the fourth-moment bound.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "wigner/bichaos.hpp"
#include "wigner/chaos.hpp"

namespace wigner {

struct GradientSlice {
  std::size_t cell = 0;
  BiChaosElement value;
};

/// nabla_s I_n(f) = sum_k I_{k-1} (x) I_{n-k}(f_s^{(k)}) with s the given cell.
GradientSlice gradient(int n, const Kernel& f, std::size_t cell);

/// N_0^{-1}: scales the order-n chaos by 1/n and removes the constant.
ChaosElement number_inverse(const ChaosElement& x);

/// h sum_s [c nabla_s I_n(f)] # (nabla_s I_n(f))*, with c = 1/n when
/// `apply_number_inverse` is set and 1 otherwise. No symmetry is assumed.
BiChaosElement gradient_quadratic_form(int n, const Kernel& f, bool apply_number_inverse);

/// gradient_quadratic_form(n, f, true) - 1 (x) 1.
BiChaosElement gradient_deviation(int n, const Kernel& f);

/// phi (x) phi(|gradient_deviation|^2), evaluated by bisometry.
double main_bound_lhs(int n, const Kernel& f);

/// (1/n^2) sum_u (sum_v c(u,v,n)^2) ||f contract_u f||^2 for fully symmetric
/// unit f. Throws PreconditionError for other inputs.
double closed_form_lhs(int n, const Kernel& f, Tolerance tol = {});

/// Number of bi-integrals I_v (x) I_{2(n-u)-v}(f contract_u f) collected in
/// the expansion of the gradient deviation, 1 <= u <= n-1, 0 <= v <= 2(n-u).
std::int64_t coefficient_c(int u, int v, int n);

struct BoundReport {
  int n = 0;
  double gap = 0.0;
  double lhs = 0.0;
  std::optional<double> lhs_closed_form;
  double c_n = 0.0;
  double dc2_from_gap = 0.0;
  double dc2_from_lhs = 0.0;
  bool bound_satisfied = false;
};

/// All quantities of the main bound for one unit, mirror-symmetric kernel;
/// the closed form is filled in only for fully symmetric kernels. n >= 2.
BoundReport bound_report(int n, const Kernel& f, Tolerance tol = {});

}  // namespace wigner
