#include "wigner/random_kernels.hpp"

#include "wigner/errors.hpp"

namespace wigner {

namespace {

constexpr double kRejectNorm = 1e-8;
constexpr int kMaxAttempts = 64;

std::uint64_t attempt_stream(std::uint64_t trial, int attempt) {
  return mix64(trial * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform_pm1(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept {
  const std::uint64_t bits = mix64(mix64(mix64(seed) ^ stream) ^ counter);
  // 53 random bits mapped onto [0, 1], then onto [-1, 1].
  const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

Kernel random_kernel(GridSpec grid, int order, std::uint64_t seed, std::uint64_t stream,
                     bool complex) {
  Kernel f(grid, order);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double re = uniform_pm1(seed, stream, 2 * i);
    const double im = complex ? uniform_pm1(seed, stream, 2 * i + 1) : 0.0;
    f[i] = Scalar(re, im);
  }
  return f;
}

Kernel random_symmetric_unit_kernel(GridSpec grid, int order, std::uint64_t seed,
                                    std::uint64_t trial) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Kernel f = symmetrize(random_kernel(grid, order, seed, attempt_stream(trial, attempt)));
    const double r = norm(f);
    if (r >= kRejectNorm) {
      f *= Scalar(1.0 / r);
      return f;
    }
  }
  throw PreconditionError("random_symmetric_unit_kernel: every draw was rejected");
}

Kernel random_mirror_unit_kernel(GridSpec grid, int order, std::uint64_t seed,
                                 std::uint64_t trial, bool complex) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Kernel raw = random_kernel(grid, order, seed, attempt_stream(trial, attempt) ^ 1, complex);
    Kernel f = raw + adjoint(raw);
    const double r = norm(f);
    if (r >= kRejectNorm) {
      f *= Scalar(1.0 / r);
      return f;
    }
  }
  throw PreconditionError("random_mirror_unit_kernel: every draw was rejected");
}

}  // namespace wigner
