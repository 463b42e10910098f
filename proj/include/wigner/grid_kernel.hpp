#pragma once

// Step-function kernels on a uniform grid over [0, T].
//
// A kernel of order n is stored densely as N^n complex values in row-major
// order: the flat offset of (t_1, ..., t_n) is sum_i t_i * N^(n-i). Order 0 is
// a single scalar. Integrals become h-weighted sums, so every operation in
// this header is exact up to floating-point rounding.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "wigner/errors.hpp"

namespace wigner {

using Scalar = std::complex<double>;

/// Relative/absolute comparison tolerance used throughout the library.
struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;

  /// Absolute threshold for quantities of magnitude `scale`.
  double at(double scale) const noexcept { return abs + rel * scale; }
};

/// Dense entry cap shared by all operations (default 2^26 entries).
std::size_t entry_cap() noexcept;
void set_entry_cap(std::size_t cap) noexcept;

/// RAII override of the entry cap, restored on scope exit.
class ScopedEntryCap {
 public:
  explicit ScopedEntryCap(std::size_t cap) noexcept : previous_(entry_cap()) {
    set_entry_cap(cap);
  }
  ~ScopedEntryCap() { set_entry_cap(previous_); }
  ScopedEntryCap(const ScopedEntryCap&) = delete;
  ScopedEntryCap& operator=(const ScopedEntryCap&) = delete;

 private:
  std::size_t previous_;
};

/// N^order, throwing SizeError if it overflows or exceeds the entry cap.
std::size_t dense_size(std::size_t cells, int order);

class GridSpec {
 public:
  GridSpec(double total_length, std::size_t cells);

  /// [0, 1] split into `cells` intervals.
  static GridSpec unit(std::size_t cells) { return GridSpec(1.0, cells); }

  double total_length() const noexcept { return total_length_; }
  std::size_t cells() const noexcept { return cells_; }
  double cell_width() const noexcept { return cell_width_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double total_length_;
  std::size_t cells_;
  double cell_width_;
};

class Kernel {
 public:
  /// Zero kernel of the given order.
  Kernel(GridSpec grid, int order);
  Kernel(GridSpec grid, int order, std::vector<Scalar> data);

  static Kernel scalar(GridSpec grid, Scalar value);
  static Kernel constant(GridSpec grid, int order, Scalar value);
  /// Order-1 indicator of a single cell.
  static Kernel indicator(GridSpec grid, std::size_t cell);

  const GridSpec& grid() const noexcept { return grid_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const Scalar> data() const noexcept { return data_; }
  std::span<Scalar> data() noexcept { return data_; }

  Scalar operator[](std::size_t flat) const noexcept { return data_[flat]; }
  Scalar& operator[](std::size_t flat) noexcept { return data_[flat]; }

  Scalar at(std::span<const std::size_t> index) const;
  Scalar& at(std::span<const std::size_t> index);
  Scalar at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  Scalar& at(std::initializer_list<std::size_t> index) {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }

  /// Value of an order-0 kernel.
  Scalar value() const;

  double max_abs() const noexcept;
  bool is_real(double tol = 0.0) const noexcept;

  Kernel& operator+=(const Kernel& other);
  Kernel& operator-=(const Kernel& other);
  Kernel& operator*=(Scalar factor) noexcept;

  friend Kernel operator+(Kernel a, const Kernel& b) { return a += b; }
  friend Kernel operator-(Kernel a, const Kernel& b) { return a -= b; }
  friend Kernel operator*(Kernel a, Scalar s) { return a *= s; }
  friend Kernel operator*(Scalar s, Kernel a) { return a *= s; }

 private:
  GridSpec grid_;
  int order_;
  std::vector<Scalar> data_;
};

/// An order a+b kernel read as an element of L2(R^a) (x) L2(R^b): the first
/// `first` axes form the first leg, the remaining `second` axes the second.
class SplitKernel {
 public:
  SplitKernel(Kernel kernel, int first, int second);

  const Kernel& kernel() const noexcept { return kernel_; }
  Kernel& kernel() noexcept { return kernel_; }
  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }
  std::pair<int, int> split() const noexcept { return {first_, second_}; }

 private:
  Kernel kernel_;
  int first_;
  int second_;
};

void require_same_grid(const Kernel& f, const Kernel& g, const char* op);

/// f*(t_1..t_n) = conj f(t_n..t_1).
Kernel adjoint(const Kernel& f);
/// Blockwise adjoint: conjugate, reverse each leg's axes in place.
SplitKernel adjoint_split(const SplitKernel& w);

bool is_mirror_symmetric(const Kernel& f, double tol);
bool is_mirror_symmetric(const Kernel& f, Tolerance tol = {});
/// Real and invariant under all axis permutations (adjacent transpositions
/// only for order > 5).
bool is_symmetric(const Kernel& f, double tol);
bool is_symmetric(const Kernel& f, Tolerance tol = {});

/// Average of Re f over all n! axis permutations. Orders above 8 are
/// rejected. If `dropped_imaginary` is given it is set when f had a non-zero
/// imaginary part.
Kernel symmetrize(const Kernel& f, bool* dropped_imaginary = nullptr);

/// h^n sum f * conj(g).
Scalar inner(const Kernel& f, const Kernel& g);
double norm_squared(const Kernel& f);
double norm(const Kernel& f);
double max_abs_diff(const Kernel& f, const Kernel& g);

Kernel tensor(const Kernel& f, const Kernel& g);

/// Output axis i takes input axis axes[i].
Kernel permute_axes(const Kernel& f, std::span<const int> axes);

/// Nested contraction of the middle p variables of f (x) g, with g's
/// contracted block reversed. p = 0 is the tensor product.
Kernel contract(const Kernel& f, const Kernel& g, int p);

/// (p, r)-bicontraction. Output layout: f's leading n1-p axes, g's
/// remaining n2-p first-leg axes, g's remaining m2-r second-leg axes, f's
/// trailing m1-r axes; split (n1+n2-2p, m1+m2-2r).
SplitKernel bicontract(const SplitKernel& f, const SplitKernel& g, int p, int r);

/// Fix the k-th argument (1-based) of f to `cell`; split (k-1, n-k).
SplitKernel slice(const Kernel& f, int k, std::size_t cell);

}  // namespace wigner
