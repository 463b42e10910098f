#pragma once

// Finite sums of Wigner bi-integrals sum I_a (x) I_b(w) and the sharp
// product (A (x) B) # (C (x) D) = AC (x) DB.

#include <map>
#include <utility>

#include "wigner/chaos.hpp"
#include "wigner/grid_kernel.hpp"

namespace wigner {

using Split = std::pair<int, int>;

class BiChaosElement {
 public:
  explicit BiChaosElement(GridSpec grid);

  /// 1 (x) 1 scaled by `value`.
  static BiChaosElement constant(GridSpec grid, Scalar value);
  static BiChaosElement from_split(SplitKernel w);

  const GridSpec& grid() const noexcept { return grid_; }
  /// Stored kernels keyed by split; each kernel has order a+b.
  const std::map<Split, Kernel>& terms() const noexcept { return terms_; }
  const Kernel* term(Split split) const;
  bool empty() const noexcept { return terms_.empty(); }

  void add(const SplitKernel& w);

  BiChaosElement& operator+=(const BiChaosElement& other);
  BiChaosElement& operator-=(const BiChaosElement& other);
  BiChaosElement& operator*=(Scalar factor);

  friend BiChaosElement operator+(BiChaosElement a, const BiChaosElement& b) { return a += b; }
  friend BiChaosElement operator-(BiChaosElement a, const BiChaosElement& b) { return a -= b; }
  friend BiChaosElement operator*(BiChaosElement a, Scalar s) { return a *= s; }
  friend BiChaosElement operator*(Scalar s, BiChaosElement a) { return a *= s; }

 private:
  void prune();

  GridSpec grid_;
  std::map<Split, Kernel> terms_;
};

/// A (x) B for chaos elements A and B.
BiChaosElement tensor(const ChaosElement& a, const ChaosElement& b);

/// Biproduct formula: sum over p <= n1^n2, r <= m1^m2 of
/// I_{n1+n2-2p} (x) I_{m1+m2-2r}(f bicontract_{p,r} g).
BiChaosElement sharp_multiply(const BiChaosElement& x, const BiChaosElement& y);

BiChaosElement adjoint(const BiChaosElement& x);

/// phi (x) phi: the (0,0) coefficient.
Scalar bitrace(const BiChaosElement& x);

/// phi (x) phi(X X*) = sum of squared kernel norms (bisometry).
double norm2(const BiChaosElement& x);

/// sum over shared splits of <w_x, w_y>; equals phi (x) phi(X Y*).
Scalar bi_inner(const BiChaosElement& x, const BiChaosElement& y);

double max_abs_diff(const BiChaosElement& x, const BiChaosElement& y);

}  // namespace wigner
