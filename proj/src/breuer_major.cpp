#include "wigner/breuer_major.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <limits>

#include "wigner/bounds.hpp"

namespace wigner {

namespace {

double admissible_hurst_limit(int n) { return (2.0 * n - 1.0) / (2.0 * n); }

void require_admissible(int n, double hurst, const char* op) {
  if (n < 1) throw PreconditionError(std::string(op) + ": n must be at least 1");
  if (!(hurst > 0.0) || !(hurst < admissible_hurst_limit(n))) {
    throw PreconditionError(std::string(op) + ": H=" + std::to_string(hurst) +
                            " outside (0, (2n-1)/(2n)) for n=" + std::to_string(n));
  }
}

// The tensor sum itself exists for any H in (0, 1); only the sigma
// normalization needs the summability condition.
void require_kernel_config(const BMConfig& cfg, const char* op) {
  if (cfg.normalization == Normalization::asymptotic_sigma) {
    require_admissible(cfg.n, cfg.hurst, op);
    return;
  }
  if (cfg.n < 1) throw PreconditionError(std::string(op) + ": n must be at least 1");
  if (!(cfg.hurst > 0.0) || !(cfg.hurst < 1.0)) {
    throw PreconditionError(std::string(op) + ": H must lie in (0, 1)");
  }
}

Eigen::MatrixXd covariance(double hurst, std::size_t m) {
  const Eigen::Index size = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd c(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) c(i, j) = rho(hurst, i - j);
  }
  return c;
}

// Squared normalizing constant c0^2 of g = c0 sum_k f_k^{(x)n}.
double scale_squared(const BMConfig& cfg, std::size_t m, const Eigen::MatrixXd& r) {
  if (cfg.normalization == Normalization::asymptotic_sigma) {
    return 1.0 / (sigma2(cfg.n, cfg.hurst, cfg.truncation).value * static_cast<double>(m));
  }
  return 1.0 / r.array().pow(cfg.n).sum();
}

}  // namespace

std::string to_string(Normalization normalization) {
  return normalization == Normalization::asymptotic_sigma ? "asymptotic_sigma" : "exact_variance";
}

Normalization parse_normalization(const std::string& text) {
  if (text == "asymptotic_sigma") return Normalization::asymptotic_sigma;
  if (text == "exact_variance") return Normalization::exact_variance;
  throw PreconditionError("unknown normalization '" + text + "'");
}

void BMConfig::validate() const {
  require_admissible(n, hurst, "BMConfig");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1) throw PreconditionError("BMConfig: sample sizes must be positive");
    if (i > 0 && m_list[i] <= m_list[i - 1]) {
      throw PreconditionError("BMConfig: m list must be strictly increasing");
    }
  }
  if (truncation < 1) throw PreconditionError("BMConfig: truncation must be at least 1");
}

double rho(double hurst, long long k) {
  if (!(hurst > 0.0) || !(hurst < 1.0)) throw PreconditionError("rho: H must lie in (0, 1)");
  if (hurst == 0.5) return k == 0 ? 1.0 : 0.0;
  const double a = std::abs(static_cast<double>(k));
  const double e = 2.0 * hurst;
  if (a < 2.0) return 0.5 * (std::pow(a + 1.0, e) + std::pow(std::abs(a - 1.0), e) - 2.0 * std::pow(a, e));
  // Factor out |k|^{2H} so the second difference does not cancel.
  const double x = 1.0 / a;
  return 0.5 * std::pow(a, e) * (std::expm1(e * std::log1p(x)) + std::expm1(e * std::log1p(-x)));
}

Sigma2 sigma2(int n, double hurst, std::size_t truncation) {
  if (truncation < 1) throw PreconditionError("sigma2: truncation must be at least 1");
  Sigma2 out;
  out.truncation = truncation;
  // Independent increments: the series is the single k = 0 term for every n,
  // including n = 1 where H = 1/2 sits on the boundary of the general range.
  if (hurst == 0.5 && n >= 1) {
    out.value = out.absolute = 1.0;
    return out;
  }
  require_admissible(n, hurst, "sigma2");
  double signed_tail = 0.0;
  double abs_tail = 0.0;
  for (std::size_t k = truncation; k >= 1; --k) {
    const double v = std::pow(rho(hurst, static_cast<long long>(k)), n);
    signed_tail += v;
    abs_tail += std::abs(v);
  }
  out.value = 1.0 + 2.0 * signed_tail;
  out.absolute = 1.0 + 2.0 * abs_tail;

  // |rho(k)| <= H|2H-1|(k-1)^{2H-2} <= H|2H-1| 2^{2-2H} k^{2H-2} for k >= 2.
  const double c = hurst * std::abs(2.0 * hurst - 1.0) * std::pow(2.0, 2.0 - 2.0 * hurst);
  const double decay = n * (2.0 - 2.0 * hurst);
  out.tail_bound = 2.0 * std::pow(c, n) *
                   std::pow(static_cast<double>(truncation), 1.0 - decay) / (decay - 1.0);
  return out;
}

std::vector<Kernel> increment_kernels(double hurst, std::size_t m) {
  if (!(hurst > 0.0) || !(hurst < 1.0)) {
    throw PreconditionError("increment_kernels: H must lie in (0, 1)");
  }
  if (m < 1) throw PreconditionError("increment_kernels: m must be positive");
  const Eigen::MatrixXd c = covariance(hurst, m);

  Eigen::MatrixXd lower;
  bool factored = false;
  for (double jitter : {0.0, 1e-12, 1e-10}) {
    Eigen::MatrixXd shifted = c;
    shifted.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      lower = llt.matrixL();
      factored = true;
      break;
    }
  }
  if (!factored) throw PreconditionError("increment_kernels: covariance is not positive definite");

  const GridSpec grid(static_cast<double>(m), m);
  std::vector<Kernel> rows;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Kernel f(grid, 1);
    for (std::size_t j = 0; j <= i; ++j) {
      f[j] = lower(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    rows.push_back(std::move(f));
  }
  return rows;
}

double chebyshev_u(int n, double x) {
  if (n < 0) throw RangeError("chebyshev_u: n must be non-negative");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ChaosElement chebyshev_u(int n, const ChaosElement& x) {
  if (n < 0) throw RangeError("chebyshev_u: n must be non-negative");
  ChaosElement prev = ChaosElement::constant(x.grid(), 1.0);
  if (n == 0) return prev;
  ChaosElement cur = x;
  for (int k = 1; k < n; ++k) {
    ChaosElement next = multiply(x, cur) - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double alpha(int n, double hurst) {
  require_admissible(n, hurst, "alpha");
  if (hurst <= 0.5) return -0.5;
  // n >= 2 here: for n = 1 the admissible range stops below 1/2.
  const double middle_end = (2.0 * n - 3.0) / (2.0 * n - 2.0);
  if (hurst <= middle_end) return hurst - 1.0;
  return n * hurst - n + 0.5;
}

Kernel vm_kernel(const BMConfig& cfg, std::size_t m) {
  require_kernel_config(cfg, "vm_kernel");
  const std::vector<Kernel> f = increment_kernels(cfg.hurst, m);
  const GridSpec grid = f.front().grid();
  Kernel sum(grid, cfg.n);  // checks the m^n entry cap up front
  for (const Kernel& fk : f) {
    Kernel power = fk;
    for (int j = 1; j < cfg.n; ++j) power = tensor(power, fk);
    sum += power;
  }
  if (cfg.normalization == Normalization::exact_variance) {
    sum *= 1.0 / norm(sum);
  } else {
    const double s2 = sigma2(cfg.n, cfg.hurst, cfg.truncation).value;
    sum *= 1.0 / std::sqrt(s2 * static_cast<double>(m));
  }
  return sum;
}

double gap_fast(const BMConfig& cfg, std::size_t m) {
  require_kernel_config(cfg, "gap_fast");
  if (m < 1) throw PreconditionError("gap_fast: m must be positive");
  const Eigen::MatrixXd r = covariance(cfg.hurst, m);
  const double c2 = scale_squared(cfg, m, r);
  double total = 0.0;
  for (int u = 1; u < cfg.n; ++u) {
    const Eigen::MatrixXd a = r.array().pow(u).matrix();
    const Eigen::MatrixXd b = r.array().pow(cfg.n - u).matrix();
    const Eigen::MatrixXd ab = a * b;
    // tr(ABAB) = sum_ij (AB)_ij (AB)_ji
    total += (ab.array() * ab.transpose().array()).sum();
  }
  return c2 * c2 * total;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionError("log_log_slope: need at least two paired points");
  }
  const double count = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw PreconditionError("log_log_slope: non-positive value");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

BMResult rate_fit(const BMConfig& cfg) {
  cfg.validate();
  if (cfg.n < 2) throw PreconditionError("rate_fit: the gap vanishes identically for n = 1");
  if (cfg.m_list.size() < 4) throw PreconditionError("rate_fit: need at least four values of m");
  if (cfg.m_list.back() < 4 * cfg.m_list.front()) {
    throw PreconditionError("rate_fit: m values must span at least two octaves");
  }

  BMResult out;
  out.config = cfg;
  out.sigma = sigma2(cfg.n, cfg.hurst, cfg.truncation);
  std::vector<double> ms;
  for (std::size_t m : cfg.m_list) {
    const double gap = gap_fast(cfg, m);
    out.m.push_back(m);
    out.gaps.push_back(gap);
    out.dc2_bounds.push_back(dc2_bound_from_gap(cfg.n, gap));
    ms.push_back(static_cast<double>(m));
    out.running_slope.push_back(ms.size() < 2 ? std::numeric_limits<double>::quiet_NaN()
                                              : log_log_slope(ms, out.gaps));
  }
  out.slope = out.running_slope.back();
  out.alpha_theory = alpha(cfg.n, cfg.hurst);
  out.slope_theory = 2.0 * out.alpha_theory;
  out.slope_error = out.slope - out.slope_theory;
  return out;
}

}  // namespace wigner
