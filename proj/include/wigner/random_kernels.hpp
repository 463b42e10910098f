#pragma once

// Seeded random kernels from a counter-based generator: entry i of draw
// (seed, stream) depends only on those three numbers, never on call order.

#include <cstddef>
#include <cstdint>

#include "wigner/grid_kernel.hpp"

namespace wigner {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Uniform double in [-1, 1] for the given (seed, stream, counter).
double uniform_pm1(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept;

/// i.i.d. uniform[-1,1] entries; imaginary parts too when `complex` is set.
Kernel random_kernel(GridSpec grid, int order, std::uint64_t seed, std::uint64_t stream,
                     bool complex = false);

/// Symmetrized, unit-norm random kernel for trial `trial`. Draws whose norm
/// falls below 1e-8 before normalization are rejected and redrawn.
Kernel random_symmetric_unit_kernel(GridSpec grid, int order, std::uint64_t seed,
                                    std::uint64_t trial);

/// (f + f*) / 2 rescaled to unit norm: a random mirror-symmetric unit kernel.
Kernel random_mirror_unit_kernel(GridSpec grid, int order, std::uint64_t seed,
                                 std::uint64_t trial, bool complex = false);

}  // namespace wigner
