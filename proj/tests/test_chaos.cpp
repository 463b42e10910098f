#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wigner/bounds.hpp"
#include "wigner/chaos.hpp"
#include "wigner/errors.hpp"
#include "wigner/experiments.hpp"
#include "wigner/random_kernels.hpp"

using namespace wigner;

namespace {

// Sum of up to three random chaos components of orders 0..max_order.
ChaosElement random_element(const GridSpec& grid, int max_order, std::uint64_t seed,
                            std::uint64_t trial) {
  ChaosElement x(grid);
  for (int n = 0; n <= max_order; ++n) {
    if (mix64(seed ^ (trial * 31 + static_cast<std::uint64_t>(n))) % 3 == 0) continue;
    x.add(random_kernel(grid, n, seed, trial * 16 + static_cast<std::uint64_t>(n), true));
  }
  if (x.empty()) x.add(random_kernel(grid, 1, seed, trial, true));
  return x;
}

Kernel unit_vector(const GridSpec& grid, std::uint64_t trial) {
  Kernel e = random_kernel(grid, 1, 99, trial);
  e *= Scalar(1.0 / norm(e));
  return e;
}

}  // namespace

TEST_CASE("construction") {
  const GridSpec grid = GridSpec::unit(3);
  const ChaosElement c = ChaosElement::constant(grid, 2.5);
  CHECK(trace(c) == Scalar(2.5));
  CHECK(c.max_order() == 0);
  CHECK_THROWS_AS(ChaosElement::from_kernel(2, random_kernel(grid, 3, 1, 0)), ShapeError);
  CHECK(ChaosElement(grid).max_order() == -1);

  const ChaosElement e = ChaosElement::from_kernel(1, unit_vector(grid, 0));
  CHECK(std::abs(moment(e, 2) - 1.0) <= 1e-12);
}

TEST_CASE("product rule examples") {
  const GridSpec grid = GridSpec::unit(4);
  const Kernel e = unit_vector(grid, 1);
  const ChaosElement x = ChaosElement::from_kernel(1, e);
  const ChaosElement sq = x * x;
  ChaosElement expected = ChaosElement::from_kernel(2, tensor(e, e));
  expected += ChaosElement::constant(grid, 1.0);
  CHECK(max_abs_diff(sq, expected) <= 1e-12);

  const ChaosElement y = random_element(grid, 3, 2, 0);
  CHECK(max_abs_diff(y * ChaosElement::constant(grid, 1.0), y) == 0.0);
  CHECK(max_abs_diff(ChaosElement::constant(grid, 1.0) * y, y) == 0.0);
}

TEST_CASE("associativity") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    const GridSpec grid = GridSpec::unit(1 + t % 4);
    const ChaosElement x = random_element(grid, 3, 10, t);
    const ChaosElement y = random_element(grid, 3, 11, t);
    const ChaosElement z = random_element(grid, 3, 12, t);
    CHECK(max_abs_diff((x * y) * z, x * (y * z)) <= 1e-10);
  }
}

TEST_CASE("traciality, orthogonality and positivity") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    const GridSpec grid = GridSpec::unit(1 + t % 4);
    const ChaosElement x = random_element(grid, 3, 20, t);
    const ChaosElement y = random_element(grid, 3, 21, t);
    CHECK(std::abs(trace(x * y) - trace(y * x)) <= 1e-10);
    CHECK(trace(x * adjoint(x)).real() >= -1e-12);
    CHECK(std::abs(trace(x * adjoint(x)).imag()) <= 1e-12);

    const int n = 1 + static_cast<int>(t % 3);
    const int m = 1 + static_cast<int>((t / 3) % 3);
    const Kernel f = random_kernel(grid, n, 22, t, true);
    const Kernel g = random_kernel(grid, m, 23, t, true);
    const Scalar tr = trace(ChaosElement::from_kernel(n, f) * adjoint(ChaosElement::from_kernel(m, g)));
    if (n == m) {
      CHECK(std::abs(tr - inner(f, g)) <= 1e-12);
    } else {
      CHECK(std::abs(tr) <= 1e-15);
    }
  }
}

TEST_CASE("adjoint and trace") {
  const GridSpec grid = GridSpec::unit(3);
  const ChaosElement x = random_element(grid, 3, 30, 0);
  CHECK(max_abs_diff(adjoint(adjoint(x)), x) == 0.0);
  CHECK(trace(adjoint(x)) == std::conj(trace(x)));
  const ChaosElement m = ChaosElement::from_kernel(3, random_mirror_unit_kernel(grid, 3, 30, 1, true));
  CHECK(is_self_adjoint(m));
  CHECK(max_abs_diff(adjoint(m), m) <= 1e-15);
  CHECK(trace(ChaosElement::from_kernel(2, random_kernel(grid, 2, 30, 2))) == Scalar(0.0));
  CHECK(trace(ChaosElement::constant(grid, 1.0)) == Scalar(1.0));
}

TEST_CASE("moments of known elements") {
  const GridSpec grid = GridSpec::unit(5);
  const ChaosElement s = ChaosElement::from_kernel(1, unit_vector(grid, 2));
  CHECK(std::abs(moment(s, 4) - 2.0) <= 1e-12);
  CHECK(std::abs(moment(s, 6) - 5.0) <= 1e-12);
  CHECK(std::abs(moment(s, 3)) <= 1e-12);

  for (std::size_t cells : {2u, 4u}) {
    const ChaosElement f = ChaosElement::from_kernel(3, counterexample_kernel(cells));
    const double inv = 1.0 / static_cast<double>(cells);
    CHECK(std::abs(moment(f, 2) - 1.0) <= 1e-12);
    CHECK(std::abs(moment(f, 4) - (2.0 + 2.0 * inv)) <= 1e-12);
  }
}

TEST_CASE("fourth-moment gap") {
  const GridSpec grid = GridSpec::unit(4);
  CHECK(fourth_moment_gap(unit_vector(grid, 3)) == 0.0);
  for (std::size_t cells : {2u, 4u, 8u, 16u}) {
    CHECK(fourth_moment_gap(counterexample_kernel(cells)) ==
          doctest::Approx(2.0 / static_cast<double>(cells)).epsilon(1e-12));
  }
  for (std::uint64_t t = 0; t < 10; ++t) {
    const Kernel f = random_symmetric_unit_kernel(grid, 2, 40, t);
    const double via_moment = moment(ChaosElement::from_kernel(2, f), 4).real() - 2.0;
    CHECK(std::abs(fourth_moment_gap(f) - via_moment) <= 1e-10);
  }
  for (std::uint64_t t = 0; t < 6; ++t) {
    const Kernel f = random_mirror_unit_kernel(GridSpec::unit(3), 3, 41, t, true);
    const double via_moment = moment(ChaosElement::from_kernel(3, f), 4).real() - 2.0;
    CHECK(std::abs(fourth_moment_gap(f) - via_moment) <= 1e-10);
  }
  CHECK_THROWS_AS(fourth_moment_gap(random_kernel(grid, 2, 1, 1)), PreconditionError);
  CHECK_THROWS_AS(fourth_moment_gap(random_symmetric_unit_kernel(grid, 2, 1, 1) * Scalar(2.0)),
                  PreconditionError);
}

TEST_CASE("oracle moment examples") {
  const GridSpec grid = GridSpec::unit(3);
  const Kernel e = unit_vector(grid, 4);
  const std::vector<Kernel> single{random_kernel(grid, 2, 50, 0)};
  CHECK(oracle_moment(single) == Scalar(0.0));
  const std::vector<Kernel> four{e, e, e, e};
  CHECK(std::abs(oracle_moment(four) - 2.0) <= 1e-12);

  const Kernel f = random_kernel(grid, 3, 51, 0, true);
  const Kernel g = random_kernel(grid, 3, 52, 0, true);
  const std::vector<Kernel> pair{f, g};
  // phi(I_n(f) I_n(g)) = <f, g*> by the isometry.
  CHECK(std::abs(oracle_moment(pair) - inner(f, adjoint(g))) <= 1e-12);

  const std::vector<Kernel> too_big{random_kernel(grid, 4, 1, 0), random_kernel(grid, 4, 1, 1),
                                    random_kernel(grid, 3, 1, 2)};
  CHECK_THROWS_AS(oracle_moment(too_big), SizeError);
}

TEST_CASE("oracle moment agrees with iterated products") {
  for (std::uint64_t t = 0; t < 60; ++t) {
    const GridSpec grid = GridSpec::unit(1 + t % 3);
    const std::size_t count = 2 + t % 3;
    std::vector<Kernel> factors;
    int total = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const int n = 1 + static_cast<int>(mix64(t * 7 + i) % 3);
      if (total + n > 10) break;
      total += n;
      factors.push_back(random_kernel(grid, n, 60, t * 8 + i, true));
    }
    ChaosElement product = ChaosElement::constant(grid, 1.0);
    for (const Kernel& f : factors) product = product * ChaosElement::from_kernel(f.order(), f);
    CHECK(std::abs(trace(product) - oracle_moment(factors)) <= 1e-9);
  }
}

TEST_CASE("order-2 moments from free cumulants") {
  for (std::uint64_t t = 0; t < 8; ++t) {
    const GridSpec grid = GridSpec::unit(2 + t % 3);
    const Kernel g = random_symmetric_unit_kernel(grid, 2, 70, t);
    const std::vector<double> fast = order2_moments(g, 6);
    const ChaosElement x = ChaosElement::from_kernel(2, g);
    CHECK(fast[0] == 1.0);
    CHECK(std::abs(fast[1]) <= 1e-15);
    for (int k = 2; k <= 6; ++k) CHECK(std::abs(fast[k] - moment(x, k).real()) <= 1e-10);
    const std::vector<Kernel> five(5, g);
    CHECK(std::abs(fast[5] - oracle_moment(five).real()) <= 1e-10);
  }
  CHECK_THROWS_AS(order2_moments(random_kernel(GridSpec::unit(2), 2, 1, 0), 4), PreconditionError);
}

TEST_CASE("semicircle helpers") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(3) == 5);
  CHECK(catalan(10) == 16796);
  CHECK(catalan(30) == 3814986502092304ULL);
  CHECK(semicircle_moment(1.0, 2) == 1.0);
  CHECK(semicircle_moment(1.0, 4) == 2.0);
  CHECK(semicircle_moment(1.0, 6) == 5.0);
  CHECK(semicircle_moment(2.0, 4) == 8.0);
  CHECK(semicircle_moment(1.0, 5) == 0.0);
}
