#include "wigner/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "pairwise.hpp"

namespace wigner {

ChaosElement::ChaosElement(GridSpec grid) : grid_(grid) {}

ChaosElement ChaosElement::constant(GridSpec grid, Scalar value) {
  ChaosElement x(grid);
  x.add(Kernel::scalar(grid, value));
  return x;
}

ChaosElement ChaosElement::from_kernel(int n, Kernel f) {
  if (f.order() != n) {
    throw ShapeError("from_kernel: kernel order " + std::to_string(f.order()) +
                     " does not match n=" + std::to_string(n));
  }
  ChaosElement x(f.grid());
  x.add(f);
  return x;
}

const Kernel* ChaosElement::term(int n) const {
  const auto it = terms_.find(n);
  return it == terms_.end() ? nullptr : &it->second;
}

int ChaosElement::max_order() const noexcept {
  return terms_.empty() ? -1 : terms_.rbegin()->first;
}

void ChaosElement::add(const Kernel& f) {
  if (!(f.grid() == grid_)) throw ShapeError("chaos element: grid mismatch");
  auto it = terms_.find(f.order());
  if (it == terms_.end()) {
    terms_.emplace(f.order(), f);
  } else {
    it->second += f;
  }
  prune();
}

ChaosElement& ChaosElement::operator+=(const ChaosElement& other) {
  if (!(other.grid_ == grid_)) throw ShapeError("chaos element: grid mismatch");
  for (const auto& [n, f] : other.terms_) {
    auto it = terms_.find(n);
    if (it == terms_.end()) {
      terms_.emplace(n, f);
    } else {
      it->second += f;
    }
  }
  prune();
  return *this;
}

ChaosElement& ChaosElement::operator-=(const ChaosElement& other) {
  ChaosElement negated = other;
  negated *= -1.0;
  return *this += negated;
}

ChaosElement& ChaosElement::operator*=(Scalar factor) {
  for (auto& [n, f] : terms_) f *= factor;
  prune();
  return *this;
}

void ChaosElement::prune() {
  std::erase_if(terms_, [](const auto& entry) { return entry.second.max_abs() < kPruneThreshold; });
}

ChaosElement multiply(const ChaosElement& x, const ChaosElement& y, int max_order) {
  if (!(x.grid() == y.grid())) throw ShapeError("multiply: grid mismatch");
  std::map<int, Kernel> acc;
  for (const auto& [n, f] : x.terms()) {
    for (const auto& [m, g] : y.terms()) {
      for (int p = 0; p <= std::min(n, m); ++p) {
        const int order = n + m - 2 * p;
        if (order > max_order) continue;
        Kernel c = contract(f, g, p);
        auto it = acc.find(order);
        if (it == acc.end()) {
          acc.emplace(order, std::move(c));
        } else {
          it->second += c;
        }
      }
    }
  }
  ChaosElement out(x.grid());
  for (const auto& [order, k] : acc) out.add(k);
  return out;
}

ChaosElement multiply(const ChaosElement& x, const ChaosElement& y) {
  return multiply(x, y, x.max_order() + y.max_order());
}

ChaosElement operator*(const ChaosElement& x, const ChaosElement& y) { return multiply(x, y); }

ChaosElement adjoint(const ChaosElement& x) {
  ChaosElement out(x.grid());
  for (const auto& [n, f] : x.terms()) out.add(adjoint(f));
  return out;
}

bool is_self_adjoint(const ChaosElement& x, Tolerance tol) {
  return std::all_of(x.terms().begin(), x.terms().end(),
                     [&](const auto& entry) { return is_mirror_symmetric(entry.second, tol); });
}

Scalar trace(const ChaosElement& x) {
  const Kernel* c = x.term(0);
  return c == nullptr ? Scalar{} : c->value();
}

Scalar moment(const ChaosElement& x, int k) {
  if (k < 0) throw RangeError("moment: k must be non-negative");
  if (k == 0) return 1.0;
  const int d = std::max(x.max_order(), 0);
  ChaosElement acc = x;
  for (int j = 2; j <= k; ++j) acc = multiply(acc, x, (k - j) * d);
  return trace(acc);
}

double fourth_moment_gap(const Kernel& f, Tolerance tol) {
  if (!is_mirror_symmetric(f, tol)) {
    throw PreconditionError("fourth_moment_gap: kernel is not mirror-symmetric");
  }
  const double ns = norm_squared(f);
  if (std::abs(ns - 1.0) > tol.at(1.0)) {
    throw PreconditionError("fourth_moment_gap: kernel norm^2 is " + std::to_string(ns) +
                            ", expected 1");
  }
  double gap = 0.0;
  for (int u = 1; u < f.order(); ++u) gap += norm_squared(contract(f, f, u));
  if (std::abs(gap) < 1e-12) gap = std::max(gap, 0.0);
  return gap;
}

namespace {

using Pairing = std::vector<std::pair<int, int>>;

// Non-crossing pairings of positions [lo, hi) that never join two positions
// owned by the same factor.
void enumerate_pairings(const std::vector<int>& owner, int lo, int hi, Pairing& current,
                        const std::function<void(const Pairing&)>& emit) {
  if (lo >= hi) {
    emit(current);
    return;
  }
  for (int j = lo + 1; j < hi; j += 2) {
    if (owner[lo] == owner[j]) continue;
    current.emplace_back(lo, j);
    // Positions strictly inside (lo, j) must pair among themselves, and so
    // must those after j; enumerate the inside first, then the outside.
    enumerate_pairings(owner, lo + 1, j, current, [&](const Pairing& with_inside) {
      Pairing copy = with_inside;
      enumerate_pairings(owner, j + 1, hi, copy, emit);
    });
    current.pop_back();
  }
}

}  // namespace

Scalar oracle_moment(std::span<const Kernel> factors) {
  if (factors.empty()) return 1.0;
  const GridSpec grid = factors.front().grid();
  std::vector<int> owner;
  Scalar scalar_part = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!(factors[i].grid() == grid)) throw ShapeError("oracle_moment: grid mismatch");
    if (factors[i].order() == 0) scalar_part *= factors[i].value();
    for (int a = 0; a < factors[i].order(); ++a) owner.push_back(static_cast<int>(i));
  }
  const int total = static_cast<int>(owner.size());
  if (total > 10) throw SizeError("oracle_moment: total order above 10");
  if (total % 2 != 0) return 0.0;

  const std::size_t cells = grid.cells();
  const int pairs = total / 2;
  const std::size_t assignments = dense_size(cells, pairs);
  const double weight = std::pow(grid.cell_width(), pairs);

  Scalar sum = 0.0;
  Pairing current;
  enumerate_pairings(owner, 0, total, current, [&](const Pairing& pairing) {
    std::vector<int> label(total);
    for (int k = 0; k < pairs; ++k) {
      label[pairing[k].first] = k;
      label[pairing[k].second] = k;
    }
    const Scalar contribution = detail::pairwise_sum(0, assignments, [&](std::size_t code) {
      std::vector<std::size_t> value(pairs);
      for (int k = pairs - 1; k >= 0; --k) {
        value[k] = code % cells;
        code /= cells;
      }
      Scalar product = 1.0;
      int pos = 0;
      for (const Kernel& f : factors) {
        std::size_t flat = 0;
        for (int a = 0; a < f.order(); ++a, ++pos) flat = flat * cells + value[label[pos]];
        if (f.order() > 0) product *= f[flat];
      }
      return product;
    });
    sum += contribution;
  });
  return sum * weight * scalar_part;
}

std::vector<double> order2_moments(const Kernel& g, int k_max) {
  if (g.order() != 2) throw ShapeError("order2_moments: kernel must have order 2");
  if (k_max < 0) throw RangeError("order2_moments: k_max must be non-negative");
  if (!is_symmetric(g)) throw PreconditionError("order2_moments: kernel must be real symmetric");

  const std::size_t n = g.grid().cells();
  const double h = g.grid().cell_width();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = h * g[i].real();

  // kappa_j = tr(A^j) for j >= 2; I_2(g) is centered so kappa_1 = 0.
  std::vector<double> kappa(k_max + 1, 0.0);
  std::vector<double> power = a;
  std::vector<double> next(n * n);
  for (int j = 2; j <= k_max; ++j) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = 0; k < n; ++k) {
        const double prk = power[r * n + k];
        for (std::size_t c = 0; c < n; ++c) next[r * n + c] += prk * a[k * n + c];
      }
    }
    power.swap(next);
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += power[i * n + i];
    kappa[j] = tr;
  }

  // m_k = sum_{s=1}^k kappa_s [z^{k-s}] M(z)^s with M(z) = sum_i m_i z^i.
  std::vector<double> m(k_max + 1, 0.0);
  m[0] = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    double mk = 0.0;
    std::vector<double> pw(k, 0.0);  // coefficients of M^s up to degree k-1
    pw[0] = 1.0;
    for (int s = 1; s <= k; ++s) {
      std::vector<double> prod(k, 0.0);
      for (int i = 0; i < k; ++i) {
        if (pw[i] == 0.0) continue;
        for (int j = 0; i + j < k; ++j) prod[i + j] += pw[i] * m[j];
      }
      pw.swap(prod);
      mk += kappa[s] * pw[k - s];
    }
    m[k] = mk;
  }
  return m;
}

double max_abs_diff(const ChaosElement& x, const ChaosElement& y) {
  if (!(x.grid() == y.grid())) throw ShapeError("max_abs_diff: grid mismatch");
  double worst = 0.0;
  for (const auto& [n, f] : x.terms()) {
    const Kernel* g = y.term(n);
    worst = std::max(worst, g == nullptr ? f.max_abs() : max_abs_diff(f, *g));
  }
  for (const auto& [n, g] : y.terms()) {
    if (x.term(n) == nullptr) worst = std::max(worst, g.max_abs());
  }
  return worst;
}

}  // namespace wigner
