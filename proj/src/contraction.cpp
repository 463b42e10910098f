// Nested contractions and bicontractions.
//
// Both are evaluated by the same three steps:
//   1. permute f to a matrix [free axes of f] x [s_1..s_p, y_1..y_r],
//   2. permute g to a matrix [s_1..s_p, y_1..y_r] x [free axes of g],
//   3. multiply with pairwise summation over the contracted block and put
//      the free axes into their output order.
// All index reversal lives in the two axis maps built in bicontract().

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "pairwise.hpp"
#include "wigner/grid_kernel.hpp"

namespace wigner {

namespace detail {

namespace {

using C = std::complex<double>;

// Accumulates scale-free row products a_row[k] * b[k, :] for k in [k0, k1)
// into acc, splitting the k range in halves. scratch[depth] holds the right
// half at each level.
void accumulate_row(const C* a_row, const C* b, std::size_t cols, std::size_t k0, std::size_t k1,
                    C* acc, std::vector<std::vector<C>>& scratch, std::size_t depth) {
  if (k1 - k0 <= kPairwiseLeaf) {
    // std::complex<double> is layout-compatible with double[2].
    double* acc_d = reinterpret_cast<double*>(acc);
    std::fill(acc_d, acc_d + 2 * cols, 0.0);
    for (std::size_t k = k0; k < k1; ++k) {
      const double ar = a_row[k].real();
      const double ai = a_row[k].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const double* b_row = reinterpret_cast<const double*>(b + k * cols);
      if (ai == 0.0) {
        for (std::size_t c = 0; c < 2 * cols; ++c) acc_d[c] += ar * b_row[c];
        continue;
      }
      for (std::size_t c = 0; c < cols; ++c) {
        const double br = b_row[2 * c];
        const double bi = b_row[2 * c + 1];
        acc_d[2 * c] += ar * br - ai * bi;
        acc_d[2 * c + 1] += ar * bi + ai * br;
      }
    }
    return;
  }
  const std::size_t mid = k0 + (k1 - k0) / 2;
  accumulate_row(a_row, b, cols, k0, mid, acc, scratch, depth + 1);
  if (scratch.size() <= depth) scratch.resize(depth + 1);
  scratch[depth].assign(cols, C{});
  C* right = scratch[depth].data();
  accumulate_row(a_row, b, cols, mid, k1, right, scratch, depth + 1);
  for (std::size_t c = 0; c < cols; ++c) acc[c] += right[c];
}

}  // namespace

void matmul_pairwise(const C* a, const C* b, std::size_t rows, std::size_t inner,
                     std::size_t cols, C scale, C* out) {
  std::vector<std::vector<C>> scratch;
  for (std::size_t r = 0; r < rows; ++r) {
    C* out_row = out + r * cols;
    accumulate_row(a + r * inner, b, cols, 0, inner, out_row, scratch, 0);
    for (std::size_t c = 0; c < cols; ++c) out_row[c] *= scale;
  }
}

}  // namespace detail

namespace {

bool is_identity(const std::vector<int>& axes) {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Kernel permuted(const Kernel& f, const std::vector<int>& axes) {
  return is_identity(axes) ? f : permute_axes(f, axes);
}

}  // namespace

SplitKernel bicontract(const SplitKernel& f, const SplitKernel& g, int p, int r) {
  require_same_grid(f.kernel(), g.kernel(), "bicontract");
  const int n1 = f.first();
  const int m1 = f.second();
  const int n2 = g.first();
  const int m2 = g.second();
  if (p < 0 || p > std::min(n1, n2)) {
    throw RangeError("bicontract: p=" + std::to_string(p) + " outside [0, " +
                     std::to_string(std::min(n1, n2)) + "]");
  }
  if (r < 0 || r > std::min(m1, m2)) {
    throw RangeError("bicontract: r=" + std::to_string(r) + " outside [0, " +
                     std::to_string(std::min(m1, m2)) + "]");
  }

  const GridSpec grid = f.kernel().grid();
  const std::size_t cells = grid.cells();
  const int f_lead = n1 - p;
  const int f_trail = m1 - r;
  const int g_first = n2 - p;
  const int g_second = m2 - r;
  const int out_first = f_lead + g_first;
  const int out_second = g_second + f_trail;

  // Fail before allocating anything large.
  const std::size_t rows = dense_size(cells, f_lead + f_trail);
  const std::size_t inner = dense_size(cells, p + r);
  const std::size_t cols = dense_size(cells, g_first + g_second);
  dense_size(cells, out_first + out_second);

  // f(t_lead, s_p..s_1, y_1..y_r, t_trail) -> [t_lead, t_trail | s_1..s_p, y_1..y_r]
  std::vector<int> f_axes;
  f_axes.reserve(n1 + m1);
  for (int i = 0; i < f_lead; ++i) f_axes.push_back(i);
  for (int i = 0; i < f_trail; ++i) f_axes.push_back(n1 + r + i);
  for (int k = 1; k <= p; ++k) f_axes.push_back(n1 - k);
  for (int k = 1; k <= r; ++k) f_axes.push_back(n1 + k - 1);

  // g(s_1..s_p, t_first, t_second, y_r..y_1) -> [s_1..s_p, y_1..y_r | t_first, t_second]
  std::vector<int> g_axes;
  g_axes.reserve(n2 + m2);
  for (int k = 1; k <= p; ++k) g_axes.push_back(k - 1);
  for (int k = 1; k <= r; ++k) g_axes.push_back(n2 + m2 - k);
  for (int i = 0; i < g_first; ++i) g_axes.push_back(p + i);
  for (int i = 0; i < g_second; ++i) g_axes.push_back(n2 + i);

  const Kernel fm = permuted(f.kernel(), f_axes);
  const Kernel gm = permuted(g.kernel(), g_axes);

  Kernel product(grid, out_first + out_second);
  const Scalar scale = std::pow(grid.cell_width(), p + r);
  detail::matmul_pairwise(fm.data().data(), gm.data().data(), rows, inner, cols, scale,
                          product.data().data());

  // product axes: [t_lead, t_trail, g_first, g_second] -> [t_lead, g_first, g_second, t_trail]
  std::vector<int> out_axes;
  out_axes.reserve(out_first + out_second);
  for (int i = 0; i < f_lead; ++i) out_axes.push_back(i);
  for (int i = 0; i < g_first + g_second; ++i) out_axes.push_back(f_lead + f_trail + i);
  for (int i = 0; i < f_trail; ++i) out_axes.push_back(f_lead + i);

  return SplitKernel(permuted(product, out_axes), out_first, out_second);
}

Kernel contract(const Kernel& f, const Kernel& g, int p) {
  require_same_grid(f, g, "contract");
  if (p < 0 || p > std::min(f.order(), g.order())) {
    throw RangeError("contract: p=" + std::to_string(p) + " outside [0, " +
                     std::to_string(std::min(f.order(), g.order())) + "]");
  }
  // With empty second legs the bicontraction is exactly the nested contraction.
  return bicontract(SplitKernel(f, f.order(), 0), SplitKernel(g, g.order(), 0), p, 0).kernel();
}

}  // namespace wigner
