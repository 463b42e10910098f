#pragma once

// Deterministic cascade summation. The traversal order depends only on the
// range length, never on threading or data.

#include <complex>
#include <cstddef>
#include <vector>

namespace wigner::detail {

inline constexpr std::size_t kPairwiseLeaf = 32;

/// sum_{i in [begin, end)} term(i), summed pairwise.
template <class Term>
std::complex<double> pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  if (end - begin <= kPairwiseLeaf) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::complex<double> v = term(i);
      re += v.real();
      im += v.imag();
    }
    return {re, im};
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

/// out[r, c] = scale * sum_k a[r, k] b[k, c] for row-major a (rows x inner)
/// and b (inner x cols), summed pairwise over k.
void matmul_pairwise(const std::complex<double>* a, const std::complex<double>* b,
                     std::size_t rows, std::size_t inner, std::size_t cols,
                     std::complex<double> scale, std::complex<double>* out);

}  // namespace wigner::detail
