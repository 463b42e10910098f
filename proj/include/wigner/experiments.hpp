#pragma once

// Experiment drivers behind the command-line tool. Every run produces a
// Report: echoed parameters, a numeric table and a list of asserted checks.
// Output is deterministic for a given set of inputs.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wigner/bichaos.hpp"
#include "wigner/breuer_major.hpp"
#include "wigner/grid_kernel.hpp"

namespace wigner {

inline constexpr const char* kReportSchema = "wigner-report/1";

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Check> checks;

  bool ok() const noexcept;
};

/// Comment-prefixed header lines, then a CSV table.
std::string render_csv(const Report& report);
std::string render_json(const Report& report);

/// f_N(a, b, c) = sqrt(N) [a == c] on the unit grid with N cells.
Kernel counterexample_kernel(std::size_t cells);

/// (sqrt(N) sum_k I1(1_k) (x) I1(1_k)) # (same)^*, evaluated with the
/// biproduct formula.
BiChaosElement counterexample_summand(std::size_t cells);

Report run_constants(int n_max);
Report run_counterexample(const std::vector<std::size_t>& cells, double tol);
Report run_bound_check(int n, std::size_t cells, std::size_t trials, std::uint64_t seed,
                       double tol);
Report run_breuer_major(const BMConfig& cfg);

}  // namespace wigner
