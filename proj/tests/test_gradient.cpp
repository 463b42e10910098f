#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <tuple>

#include "wigner/bounds.hpp"
#include "wigner/errors.hpp"
#include "wigner/experiments.hpp"
#include "wigner/gradient.hpp"
#include "wigner/random_kernels.hpp"

using namespace wigner;

namespace {

// |{(p, r, k, q) : p + r = u - 1 < n - 1, 0 <= k, q <= n - 1 - p - r, k + q = v}|
std::int64_t count_quadruples(int u, int v, int n) {
  std::int64_t count = 0;
  for (int p = 0; p < n; ++p) {
    for (int r = 0; r < n; ++r) {
      if (p + r != u - 1 || p + r >= n - 1) continue;
      for (int k = 0; k <= n - 1 - p - r; ++k) {
        for (int q = 0; q <= n - 1 - p - r; ++q) {
          if (k + q == v) ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("gradient of a first-chaos element") {
  const GridSpec grid = GridSpec::unit(4);
  Kernel e = random_kernel(grid, 1, 1, 0);
  e *= Scalar(1.0 / norm(e));
  for (std::size_t s = 0; s < 4; ++s) {
    const GradientSlice g = gradient(1, e, s);
    CHECK(g.cell == s);
    CHECK(max_abs_diff(g.value, BiChaosElement::constant(grid, e[s])) == 0.0);
  }
  CHECK(max_abs_diff(gradient_quadratic_form(1, e, true), BiChaosElement::constant(grid, 1.0)) <= 1e-14);
  CHECK(main_bound_lhs(1, e) <= 1e-28);
  CHECK(closed_form_lhs(1, e) == 0.0);
  CHECK(fourth_moment_gap(e) == 0.0);
}

TEST_CASE("gradient of a symmetric kernel shares slice data across positions") {
  const GridSpec grid = GridSpec::unit(3);
  const Kernel f = random_symmetric_unit_kernel(grid, 3, 2, 0);
  const GradientSlice g = gradient(3, f, 1);
  CHECK(g.value.terms().size() == 3);
  const Kernel& first = *g.value.term({0, 2});
  CHECK(max_abs_diff(*g.value.term({1, 1}), first) <= 1e-15);
  CHECK(max_abs_diff(*g.value.term({2, 0}), first) <= 1e-15);
  CHECK_THROWS_AS(gradient(2, f, 0), ShapeError);
}

TEST_CASE("gradient of the counterexample against the three-term display") {
  // The display differentiates sqrt(N) sum_k I1(1_k) I1(1) I1(1_k), which is
  // I_3(f_N) + (2/sqrt(N)) I1(1); its gradient carries an extra (2/sqrt(N)) 1(x)1.
  for (std::size_t cells : {2u, 3u, 5u}) {
    const GridSpec grid = GridSpec::unit(cells);
    const Kernel f = counterexample_kernel(cells);
    const double root = std::sqrt(static_cast<double>(cells));
    const ChaosElement one = ChaosElement::constant(grid, 1.0);
    const ChaosElement b = ChaosElement::from_kernel(1, Kernel::constant(grid, 1, 1.0));
    BiChaosElement middle(grid);
    for (std::size_t j = 0; j < cells; ++j) {
      const ChaosElement aj = ChaosElement::from_kernel(1, Kernel::indicator(grid, j));
      middle += tensor(aj, aj);
    }
    for (std::size_t s = 0; s < cells; ++s) {
      const ChaosElement ak = ChaosElement::from_kernel(1, Kernel::indicator(grid, s));
      BiChaosElement display = tensor(one, b * ak) + middle + tensor(ak * b, one);
      display *= Scalar(root);
      BiChaosElement computed = gradient(3, f, s).value;
      computed += BiChaosElement::constant(grid, 2.0 / root);
      CHECK(max_abs_diff(computed, display) <= 1e-12);
    }
  }
}

TEST_CASE("number operator pseudo-inverse") {
  const GridSpec grid = GridSpec::unit(3);
  ChaosElement x = ChaosElement::constant(grid, 4.0);
  const Kernel f2 = random_kernel(grid, 2, 3, 0);
  const Kernel f3 = random_kernel(grid, 3, 3, 1);
  x.add(f2);
  x.add(f3);
  const ChaosElement y = number_inverse(x);
  CHECK(y.term(0) == nullptr);
  CHECK(max_abs_diff(*y.term(2), f2 * Scalar(0.5)) == 0.0);
  CHECK(max_abs_diff(*y.term(3), f3 * Scalar(1.0 / 3.0)) <= 1e-16);
  // N_0 N_0^{-1} = id on centered elements.
  ChaosElement back(grid);
  for (const auto& [n, k] : y.terms()) back.add(k * Scalar(static_cast<double>(n)));
  ChaosElement centered = x;
  centered -= ChaosElement::constant(grid, 4.0);
  CHECK(max_abs_diff(back, centered) <= 1e-15);
}

TEST_CASE("constant slot of the quadratic form") {
  for (int n = 2; n <= 4; ++n) {
    for (std::size_t cells : {2u, 3u}) {
      const Kernel f = random_symmetric_unit_kernel(GridSpec::unit(cells), n, 4, cells);
      const BiChaosElement q = gradient_quadratic_form(n, f, false);
      CHECK(std::abs(bitrace(q) - static_cast<double>(n)) <= 1e-10);
      CHECK(std::abs(bitrace(gradient_deviation(n, f))) <= 1e-10);
    }
  }
}

TEST_CASE("coefficient c(u, v) against the counting set") {
  for (int n = 2; n <= 8; ++n) {
    for (int u = 1; u <= n - 1; ++u) {
      std::int64_t sum_sq = 0;
      for (int v = 0; v <= 2 * (n - u); ++v) {
        const std::int64_t c = coefficient_c(u, v, n);
        CHECK(c == count_quadruples(u, v, n));
        CHECK(c == coefficient_c(u, 2 * (n - u) - v, n));
        sum_sq += c * c;
      }
      CHECK(3 * sum_sq == p_polynomial_times3(n, u));
    }
  }
  CHECK(std::tuple{coefficient_c(2, 0, 3), coefficient_c(2, 1, 3), coefficient_c(2, 2, 3)} ==
        std::tuple{2, 4, 2});
  CHECK(std::tuple{coefficient_c(1, 0, 2), coefficient_c(1, 1, 2), coefficient_c(1, 2, 2)} ==
        std::tuple{1, 2, 1});
  CHECK_THROWS_AS(coefficient_c(0, 0, 3), RangeError);
  CHECK_THROWS_AS(coefficient_c(1, 5, 3), RangeError);
}

TEST_CASE("n = 2: the bound is an equality") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const Kernel f = random_symmetric_unit_kernel(GridSpec::unit(2 + t % 4), 2, 5, t);
    const double gap = fourth_moment_gap(f);
    const double lhs = main_bound_lhs(2, f);
    CHECK(std::abs(lhs - 1.5 * gap) <= 1e-10);
    CHECK(std::abs(closed_form_lhs(2, f) - 0.25 * 6.0 * norm_squared(contract(f, f, 1))) <= 1e-12);
    CHECK(std::abs(lhs - closed_form_lhs(2, f)) <= 1e-10);
  }
}

TEST_CASE("closed form bounds the quadratic form for n >= 3") {
  // The closed form counts all contributions to a split slot as one kernel;
  // they are argument permutations of f contract_u f, so it is an upper bound
  // with equality when the grid has one cell.
  bool strict_seen = false;
  for (int n = 3; n <= 4; ++n) {
    for (std::size_t cells : {1u, 2u, 3u}) {
      for (std::uint64_t t = 0; t < 6; ++t) {
        const Kernel f = random_symmetric_unit_kernel(GridSpec::unit(cells), n, 6, t);
        const double lhs = main_bound_lhs(n, f);
        const double closed = closed_form_lhs(n, f);
        CHECK(lhs <= closed + 1e-10);
        CHECK(closed <= constants_row(n).c_n * fourth_moment_gap(f) + 1e-9);
        if (cells == 1) CHECK(std::abs(lhs - closed) <= 1e-10);
        if (closed - lhs > 1e-3) strict_seen = true;
      }
    }
  }
  CHECK(strict_seen);
  CHECK_THROWS_AS(closed_form_lhs(3, counterexample_kernel(2)), PreconditionError);
}

TEST_CASE("bound report") {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t t = 0; t < 5; ++t) {
      const Kernel f = random_symmetric_unit_kernel(GridSpec::unit(3), n, 7, t);
      const BoundReport r = bound_report(n, f);
      CHECK(r.n == n);
      CHECK(r.bound_satisfied);
      CHECK(r.lhs_closed_form.has_value());
      CHECK(r.c_n == constants_row(n).c_n);
      CHECK(r.dc2_from_lhs <= r.dc2_from_gap + 1e-9);
      CHECK(std::abs(r.dc2_from_gap - std::sqrt(r.c_n) / 2.0 * std::sqrt(r.gap)) <= 1e-15);
    }
  }
  const BoundReport cex = bound_report(3, counterexample_kernel(2));
  CHECK_FALSE(cex.lhs_closed_form.has_value());
  CHECK_THROWS_AS(bound_report(1, Kernel::indicator(GridSpec::unit(1), 0)), RangeError);
}

TEST_CASE("counterexample quadratic form") {
  // Exact values, cross-checked with an independent dense einsum evaluation.
  CHECK(main_bound_lhs(3, counterexample_kernel(2)) == doctest::Approx(31.0 / 18.0).epsilon(1e-12));
  CHECK(main_bound_lhs(3, counterexample_kernel(3)) == doctest::Approx(83.0 / 81.0).epsilon(1e-12));
  CHECK(main_bound_lhs(3, counterexample_kernel(4)) == doctest::Approx(53.0 / 72.0).epsilon(1e-12));
  // Every kernel in the expansion is non-negative, so the (2,2) slot of
  // (1/3) (Y # Y*) bounds the quantity below by 1/9 while the gap tends to 0.
  for (std::size_t cells : {2u, 4u, 8u, 16u}) {
    CHECK(main_bound_lhs(3, counterexample_kernel(cells)) >= 1.0 / 9.0);
  }
}
