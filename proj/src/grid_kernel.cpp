#include "wigner/grid_kernel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pairwise.hpp"

namespace wigner {

namespace {

std::atomic<std::size_t> g_entry_cap{std::size_t{1} << 26};

std::string shape_message(const char* op, const std::string& detail) {
  return std::string(op) + ": " + detail;
}

std::size_t flat_index(const GridSpec& grid, int order, std::span<const std::size_t> index) {
  if (index.size() != static_cast<std::size_t>(order)) {
    throw ShapeError("index has " + std::to_string(index.size()) + " components, kernel order is " +
                     std::to_string(order));
  }
  std::size_t flat = 0;
  for (std::size_t i : index) {
    if (i >= grid.cells()) throw RangeError("cell index out of range");
    flat = flat * grid.cells() + i;
  }
  return flat;
}

}  // namespace

std::size_t entry_cap() noexcept { return g_entry_cap.load(std::memory_order_relaxed); }

void set_entry_cap(std::size_t cap) noexcept {
  g_entry_cap.store(cap, std::memory_order_relaxed);
}

std::size_t dense_size(std::size_t cells, int order) {
  if (order < 0) throw RangeError("negative kernel order");
  const std::size_t cap = entry_cap();
  std::size_t size = 1;
  for (int i = 0; i < order; ++i) {
    if (cells != 0 && size > std::numeric_limits<std::size_t>::max() / cells) {
      throw SizeError("kernel of order " + std::to_string(order) + " on " +
                      std::to_string(cells) + " cells overflows");
    }
    size *= cells;
  }
  if (size > cap) {
    throw SizeError("kernel of order " + std::to_string(order) + " on " + std::to_string(cells) +
                    " cells needs " + std::to_string(size) + " entries (cap " +
                    std::to_string(cap) + ")");
  }
  return size;
}

GridSpec::GridSpec(double total_length, std::size_t cells)
    : total_length_(total_length), cells_(cells), cell_width_(0.0) {
  if (!(total_length > 0.0) || !std::isfinite(total_length)) {
    throw PreconditionError("grid length must be positive and finite");
  }
  if (cells < 1) throw PreconditionError("grid needs at least one cell");
  cell_width_ = total_length / static_cast<double>(cells);
}

Kernel::Kernel(GridSpec grid, int order)
    : grid_(grid), order_(order), data_(dense_size(grid.cells(), order)) {}

Kernel::Kernel(GridSpec grid, int order, std::vector<Scalar> data)
    : grid_(grid), order_(order), data_(std::move(data)) {
  const std::size_t expected = dense_size(grid_.cells(), order_);
  if (data_.size() != expected) {
    throw ShapeError("kernel data has " + std::to_string(data_.size()) + " entries, expected " +
                     std::to_string(expected));
  }
  for (const Scalar& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw PreconditionError("kernel entries must be finite");
    }
  }
}

Kernel Kernel::scalar(GridSpec grid, Scalar value) {
  return Kernel(grid, 0, std::vector<Scalar>{value});
}

Kernel Kernel::constant(GridSpec grid, int order, Scalar value) {
  Kernel k(grid, order);
  std::fill(k.data_.begin(), k.data_.end(), value);
  return k;
}

Kernel Kernel::indicator(GridSpec grid, std::size_t cell) {
  if (cell >= grid.cells()) throw RangeError("indicator cell out of range");
  Kernel k(grid, 1);
  k.data_[cell] = 1.0;
  return k;
}

Scalar Kernel::at(std::span<const std::size_t> index) const {
  return data_[flat_index(grid_, order_, index)];
}

Scalar& Kernel::at(std::span<const std::size_t> index) {
  return data_[flat_index(grid_, order_, index)];
}

Scalar Kernel::value() const {
  if (order_ != 0) throw ShapeError("value() needs an order-0 kernel");
  return data_[0];
}

double Kernel::max_abs() const noexcept {
  double m = 0.0;
  for (const Scalar& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Kernel::is_real(double tol) const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [tol](const Scalar& v) { return std::abs(v.imag()) <= tol; });
}

Kernel& Kernel::operator+=(const Kernel& other) {
  require_same_grid(*this, other, "kernel addition");
  if (order_ != other.order_) throw ShapeError("kernel addition: order mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Kernel& Kernel::operator-=(const Kernel& other) {
  require_same_grid(*this, other, "kernel subtraction");
  if (order_ != other.order_) throw ShapeError("kernel subtraction: order mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Kernel& Kernel::operator*=(Scalar factor) noexcept {
  for (Scalar& v : data_) v *= factor;
  return *this;
}

SplitKernel::SplitKernel(Kernel kernel, int first, int second)
    : kernel_(std::move(kernel)), first_(first), second_(second) {
  if (first < 0 || second < 0 || first + second != kernel_.order()) {
    throw ShapeError("split (" + std::to_string(first) + "," + std::to_string(second) +
                     ") does not match kernel order " + std::to_string(kernel_.order()));
  }
}

void require_same_grid(const Kernel& f, const Kernel& g, const char* op) {
  if (!(f.grid() == g.grid())) throw ShapeError(shape_message(op, "grid mismatch"));
}

Kernel permute_axes(const Kernel& f, std::span<const int> axes) {
  const int n = f.order();
  if (axes.size() != static_cast<std::size_t>(n)) {
    throw ShapeError("permute_axes: axis list length differs from order");
  }
  std::vector<int> check(axes.begin(), axes.end());
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n; ++i) {
    if (check[i] != i) throw RangeError("permute_axes: not a permutation");
  }

  const std::size_t cells = f.grid().cells();
  std::vector<std::size_t> in_stride(n);
  std::size_t s = 1;
  for (int j = n - 1; j >= 0; --j) {
    in_stride[j] = s;
    s *= cells;
  }
  // Stride in the input for a unit step of each output axis.
  std::vector<std::size_t> step(n);
  for (int i = 0; i < n; ++i) step[i] = in_stride[axes[i]];

  Kernel out(f.grid(), n);
  auto src = f.data();
  auto dst = out.data();
  std::vector<std::size_t> digit(n, 0);
  std::size_t offset = 0;
  for (std::size_t flat = 0; flat < dst.size(); ++flat) {
    dst[flat] = src[offset];
    for (int i = n - 1; i >= 0; --i) {
      if (++digit[i] < cells) {
        offset += step[i];
        break;
      }
      offset -= (cells - 1) * step[i];
      digit[i] = 0;
    }
  }
  return out;
}

Kernel adjoint(const Kernel& f) {
  std::vector<int> axes(f.order());
  for (int i = 0; i < f.order(); ++i) axes[i] = f.order() - 1 - i;
  Kernel out = permute_axes(f, axes);
  for (Scalar& v : out.data()) v = std::conj(v);
  return out;
}

SplitKernel adjoint_split(const SplitKernel& w) {
  const int a = w.first();
  const int b = w.second();
  std::vector<int> axes(a + b);
  for (int i = 0; i < a; ++i) axes[i] = a - 1 - i;
  for (int i = 0; i < b; ++i) axes[a + i] = a + b - 1 - i;
  Kernel out = permute_axes(w.kernel(), axes);
  for (Scalar& v : out.data()) v = std::conj(v);
  return SplitKernel(std::move(out), a, b);
}

double max_abs_diff(const Kernel& f, const Kernel& g) {
  require_same_grid(f, g, "max_abs_diff");
  if (f.order() != g.order()) throw ShapeError("max_abs_diff: order mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

bool is_mirror_symmetric(const Kernel& f, double tol) {
  if (tol < 0.0) throw PreconditionError("tolerance must be non-negative");
  return max_abs_diff(f, adjoint(f)) <= tol;
}

bool is_mirror_symmetric(const Kernel& f, Tolerance tol) {
  return is_mirror_symmetric(f, tol.at(f.max_abs()));
}

bool is_symmetric(const Kernel& f, double tol) {
  if (tol < 0.0) throw PreconditionError("tolerance must be non-negative");
  if (!f.is_real(tol)) return false;
  const int n = f.order();
  if (n <= 1) return true;
  std::vector<int> axes(n);
  std::iota(axes.begin(), axes.end(), 0);
  if (n <= 5) {
    while (std::next_permutation(axes.begin(), axes.end())) {
      if (max_abs_diff(permute_axes(f, axes), f) > tol) return false;
    }
    return true;
  }
  for (int i = 0; i + 1 < n; ++i) {
    std::iota(axes.begin(), axes.end(), 0);
    std::swap(axes[i], axes[i + 1]);
    if (max_abs_diff(permute_axes(f, axes), f) > tol) return false;
  }
  return true;
}

bool is_symmetric(const Kernel& f, Tolerance tol) { return is_symmetric(f, tol.at(f.max_abs())); }

Kernel symmetrize(const Kernel& f, bool* dropped_imaginary) {
  const int n = f.order();
  if (n > 8) throw RangeError("symmetrize: order above 8 rejected");
  if (dropped_imaginary != nullptr) *dropped_imaginary = !f.is_real(0.0);

  Kernel real_part(f.grid(), n);
  for (std::size_t i = 0; i < f.size(); ++i) real_part[i] = f[i].real();

  Kernel sum(f.grid(), n);
  std::vector<int> axes(n);
  std::iota(axes.begin(), axes.end(), 0);
  double count = 0.0;
  do {
    sum += permute_axes(real_part, axes);
    count += 1.0;
  } while (std::next_permutation(axes.begin(), axes.end()));
  sum *= 1.0 / count;
  return sum;
}

Scalar inner(const Kernel& f, const Kernel& g) {
  require_same_grid(f, g, "inner");
  if (f.order() != g.order()) throw ShapeError("inner: order mismatch");
  const auto a = f.data();
  const auto b = g.data();
  const Scalar s = detail::pairwise_sum(0, a.size(), [&](std::size_t i) {
    return a[i] * std::conj(b[i]);
  });
  return s * std::pow(f.grid().cell_width(), f.order());
}

double norm_squared(const Kernel& f) {
  const auto a = f.data();
  const Scalar s = detail::pairwise_sum(0, a.size(), [&](std::size_t i) {
    return Scalar(std::norm(a[i]), 0.0);
  });
  return s.real() * std::pow(f.grid().cell_width(), f.order());
}

double norm(const Kernel& f) { return std::sqrt(norm_squared(f)); }

Kernel tensor(const Kernel& f, const Kernel& g) {
  require_same_grid(f, g, "tensor");
  Kernel out(f.grid(), f.order() + g.order());
  auto dst = out.data();
  const std::size_t ng = g.size();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Scalar fi = f[i];
    for (std::size_t j = 0; j < ng; ++j) dst[i * ng + j] = fi * g[j];
  }
  return out;
}

SplitKernel slice(const Kernel& f, int k, std::size_t cell) {
  const int n = f.order();
  if (k < 1 || k > n) throw RangeError("slice: k must lie in [1, order]");
  const std::size_t cells = f.grid().cells();
  if (cell >= cells) throw RangeError("slice: cell index out of range");

  Kernel out(f.grid(), n - 1);
  const std::size_t inner_block = dense_size(cells, n - k);
  const std::size_t outer_block = dense_size(cells, k - 1);
  auto dst = out.data();
  for (std::size_t a = 0; a < outer_block; ++a) {
    const std::size_t src = (a * cells + cell) * inner_block;
    for (std::size_t b = 0; b < inner_block; ++b) dst[a * inner_block + b] = f[src + b];
  }
  return SplitKernel(std::move(out), k - 1, n - k);
}

}  // namespace wigner
