#pragma once

// Finite Wigner chaos expansions X = sum_n I_n(f_n) and their algebra.

#include <map>
#include <span>
#include <vector>

#include "wigner/grid_kernel.hpp"

namespace wigner {

/// Kernels whose max-norm falls below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-14;

class ChaosElement {
 public:
  explicit ChaosElement(GridSpec grid);

  static ChaosElement constant(GridSpec grid, Scalar value);
  /// I_n(f); throws ShapeError unless f.order() == n.
  static ChaosElement from_kernel(int n, Kernel f);

  const GridSpec& grid() const noexcept { return grid_; }
  const std::map<int, Kernel>& terms() const noexcept { return terms_; }
  /// Kernel of order n, or nullptr when that chaos is empty.
  const Kernel* term(int n) const;
  bool empty() const noexcept { return terms_.empty(); }
  /// Highest order present, -1 for the zero element.
  int max_order() const noexcept;

  /// Adds I_{f.order()}(f).
  void add(const Kernel& f);

  ChaosElement& operator+=(const ChaosElement& other);
  ChaosElement& operator-=(const ChaosElement& other);
  ChaosElement& operator*=(Scalar factor);

  friend ChaosElement operator+(ChaosElement a, const ChaosElement& b) { return a += b; }
  friend ChaosElement operator-(ChaosElement a, const ChaosElement& b) { return a -= b; }
  friend ChaosElement operator*(ChaosElement a, Scalar s) { return a *= s; }
  friend ChaosElement operator*(Scalar s, ChaosElement a) { return a *= s; }

 private:
  void prune();

  GridSpec grid_;
  std::map<int, Kernel> terms_;
};

/// Product formula I_n(f) I_m(g) = sum_p I_{n+m-2p}(f contract_p g),
/// extended bilinearly.
ChaosElement multiply(const ChaosElement& x, const ChaosElement& y);
/// Same product with every output chaos of order above `max_order` skipped.
ChaosElement multiply(const ChaosElement& x, const ChaosElement& y, int max_order);
ChaosElement operator*(const ChaosElement& x, const ChaosElement& y);

ChaosElement adjoint(const ChaosElement& x);
bool is_self_adjoint(const ChaosElement& x, Tolerance tol = {});

/// phi(X): the order-0 coefficient.
Scalar trace(const ChaosElement& x);

/// phi(X^k) by left-folded products. Chaos components that cannot reach
/// order 0 with the remaining factors are dropped along the way.
Scalar moment(const ChaosElement& x, int k);

/// sum_{u=1}^{n-1} ||f contract_u f||^2, which equals phi(I_n(f)^4) - 2 for
/// mirror-symmetric unit f. Throws PreconditionError otherwise.
double fourth_moment_gap(const Kernel& f, Tolerance tol = {});

/// phi(I_{n_1}(f_1) ... I_{n_k}(f_k)) by summing over non-crossing pair
/// partitions of the concatenated arguments that never pair two arguments of
/// the same factor. Total order is limited to 10.
Scalar oracle_moment(std::span<const Kernel> factors);

/// Moments phi(I_2(g)^k), k = 0..k_max, for a real symmetric order-2 kernel,
/// from the free cumulants kappa_j = tr((hG)^j) (j >= 2) of I_2(g).
std::vector<double> order2_moments(const Kernel& g, int k_max);

/// Largest entrywise difference over all chaos orders present in either.
double max_abs_diff(const ChaosElement& x, const ChaosElement& y);

}  // namespace wigner
