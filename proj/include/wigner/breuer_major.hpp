#pragma once

// Free Breuer-Major experiment for increments of the free fractional Brownian
// motion: covariance, limit variance, Gram-equivalent increment kernels,
// fourth-moment gaps and decay-rate fits.

#include <cstddef>
#include <string>
#include <vector>

#include "wigner/chaos.hpp"
#include "wigner/grid_kernel.hpp"

namespace wigner {

enum class Normalization {
  asymptotic_sigma,  // g = (sigma sqrt(m))^{-1} sum_k f_k^{(x)n}
  exact_variance,    // same tensor sum scaled to unit norm
};

std::string to_string(Normalization normalization);
Normalization parse_normalization(const std::string& text);

struct BMConfig {
  int n = 2;
  double hurst = 0.3;
  std::vector<std::size_t> m_list;
  std::size_t truncation = 100000;
  Normalization normalization = Normalization::exact_variance;

  /// Throws PreconditionError when H is outside (0, (2n-1)/(2n)), n < 1 or
  /// the m list is not strictly increasing.
  void validate() const;
};

/// rho_H(k) = (|k+1|^{2H} + |k-1|^{2H} - 2|k|^{2H}) / 2.
double rho(double hurst, long long k);

struct Sigma2 {
  double value = 0.0;      // truncated signed sum of rho^n over |k| <= K
  double absolute = 0.0;   // truncated sum of |rho|^n
  double tail_bound = 0.0; // bound on the neglected |k| > K part of either sum
  std::size_t truncation = 0;
};

/// Limit variance sum_k rho_H(k)^n; requires H < (2n-1)/(2n) or H = 1/2, and K >= 1.
Sigma2 sigma2(int n, double hurst, std::size_t truncation);

/// m unit-width order-1 kernels whose Gram matrix is the Toeplitz matrix
/// rho_H(|i-j|): the rows of its Cholesky factor.
std::vector<Kernel> increment_kernels(double hurst, std::size_t m);

/// U_n(x) by the three-term recurrence.
double chebyshev_u(int n, double x);
/// U_n evaluated in the chaos algebra.
ChaosElement chebyshev_u(int n, const ChaosElement& x);

/// alpha(n, H) of the free Breuer-Major rate.
double alpha(int n, double hurst);

/// Dense order-n kernel g_{n,m,H}; needs m^n entries. Any H in (0, 1) is
/// accepted under exact_variance; asymptotic_sigma needs H < (2n-1)/(2n).
Kernel vm_kernel(const BMConfig& cfg, std::size_t m);

/// sum_{u=1}^{n-1} ||g contract_u g||^2 through the Gram identity
/// ||g contract_u g||^2 = c^4 tr(A_u B_u A_u B_u), A_u = rho^u, B_u = rho^{n-u}
/// entrywise, without forming g.
double gap_fast(const BMConfig& cfg, std::size_t m);

struct BMResult {
  BMConfig config;
  Sigma2 sigma;
  std::vector<std::size_t> m;
  std::vector<double> gaps;
  std::vector<double> dc2_bounds;     // (sqrt(C_n)/2) sqrt(gap)
  std::vector<double> running_slope;  // fit over the first i+1 points, NaN for i = 0
  double slope = 0.0;
  double alpha_theory = 0.0;
  double slope_theory = 0.0;  // 2 alpha
  double slope_error = 0.0;   // slope - slope_theory
};

/// Least-squares slope of log gap against log m. Needs n >= 2 and at least
/// four m values spanning two octaves.
BMResult rate_fit(const BMConfig& cfg);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wigner
