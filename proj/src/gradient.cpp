#include "wigner/gradient.hpp"

#include <cmath>
#include <string>

#include "wigner/bounds.hpp"

namespace wigner {

namespace {

void require_kernel_order(int n, const Kernel& f, const char* op) {
  if (n < 1) throw RangeError(std::string(op) + ": order must be at least 1");
  if (f.order() != n) {
    throw ShapeError(std::string(op) + ": kernel order " + std::to_string(f.order()) +
                     " does not match n=" + std::to_string(n));
  }
}

}  // namespace

GradientSlice gradient(int n, const Kernel& f, std::size_t cell) {
  require_kernel_order(n, f, "gradient");
  GradientSlice out{cell, BiChaosElement(f.grid())};
  for (int k = 1; k <= n; ++k) out.value.add(slice(f, k, cell));
  return out;
}

ChaosElement number_inverse(const ChaosElement& x) {
  ChaosElement out(x.grid());
  for (const auto& [n, f] : x.terms()) {
    if (n == 0) continue;
    out.add(f * Scalar(1.0 / n));
  }
  return out;
}

BiChaosElement gradient_quadratic_form(int n, const Kernel& f, bool apply_number_inverse) {
  require_kernel_order(n, f, "gradient_quadratic_form");
  const GridSpec& grid = f.grid();
  const Scalar weight = grid.cell_width() * (apply_number_inverse ? 1.0 / n : 1.0);
  BiChaosElement total(grid);
  for (std::size_t s = 0; s < grid.cells(); ++s) {
    const BiChaosElement grad = gradient(n, f, s).value;
    total += sharp_multiply(grad, adjoint(grad));
  }
  total *= weight;
  return total;
}

BiChaosElement gradient_deviation(int n, const Kernel& f) {
  BiChaosElement d = gradient_quadratic_form(n, f, true);
  d -= BiChaosElement::constant(f.grid(), 1.0);
  return d;
}

double main_bound_lhs(int n, const Kernel& f) { return norm2(gradient_deviation(n, f)); }

std::int64_t coefficient_c(int u, int v, int n) {
  if (u < 1 || u > n - 1) throw RangeError("coefficient_c: u must lie in [1, n-1]");
  if (v < 0 || v > 2 * (n - u)) throw RangeError("coefficient_c: v must lie in [0, 2(n-u)]");
  return v <= n - u ? static_cast<std::int64_t>(u) * (v + 1)
                    : static_cast<std::int64_t>(u) * (2 * (n - u) - v + 1);
}

double closed_form_lhs(int n, const Kernel& f, Tolerance tol) {
  require_kernel_order(n, f, "closed_form_lhs");
  if (!is_symmetric(f, tol)) throw PreconditionError("closed_form_lhs: kernel is not symmetric");
  if (std::abs(norm_squared(f) - 1.0) > tol.at(1.0)) {
    throw PreconditionError("closed_form_lhs: kernel is not normalized");
  }
  double total = 0.0;
  for (int u = 1; u <= n - 1; ++u) {
    std::int64_t weight = 0;
    for (int v = 0; v <= 2 * (n - u); ++v) {
      const std::int64_t c = coefficient_c(u, v, n);
      weight += c * c;
    }
    total += static_cast<double>(weight) * norm_squared(contract(f, f, u));
  }
  return total / (static_cast<double>(n) * n);
}

BoundReport bound_report(int n, const Kernel& f, Tolerance tol) {
  require_kernel_order(n, f, "bound_report");
  if (n < 2) throw RangeError("bound_report: n must be at least 2");
  BoundReport report;
  report.n = n;
  report.gap = fourth_moment_gap(f, tol);
  report.lhs = main_bound_lhs(n, f);
  if (is_symmetric(f, tol)) report.lhs_closed_form = closed_form_lhs(n, f, tol);
  report.c_n = constants_row(n).c_n;
  report.dc2_from_gap = dc2_bound_from_gap(n, report.gap);
  report.dc2_from_lhs = dc2_bound_from_lhs(report.lhs);
  report.bound_satisfied = report.lhs <= report.c_n * report.gap + 1e-9;
  return report;
}

}  // namespace wigner
