// Command-line driver for the kernel-calculus experiments.
//
// Exit status: 0 when every asserted identity holds, 1 when one fails,
// 2 on usage or input errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wigner/errors.hpp"
#include "wigner/experiments.hpp"

namespace {

struct GlobalOptions {
  std::string format = "csv";
  std::string out;
  double tol = 1e-9;
};

int emit(const wigner::Report& report, const GlobalOptions& g) {
  const std::string text = g.format == "json" ? wigner::render_json(report) : wigner::render_csv(report);
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(g.out, std::ios::binary);
    if (!file) throw wigner::Error("cannot open output file " + g.out);
    file << text;
  }
  for (const auto& c : report.checks) {
    if (!c.passed) std::cerr << "check failed: " << c.name << " (" << c.detail << ")\n";
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner chaos kernel calculus: constants, counterexample, bound checks, Breuer-Major rates"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Write the report to this path instead of stdout");
  app.add_option("--tol", g.tol, "Absolute tolerance for asserted identities")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  int n_max = 10;
  auto* constants = app.add_subcommand("constants", "Table of u0, the integer argmax and C_n");
  constants->add_option("--n-max", n_max, "Largest n")->check(CLI::Range(2, 1000))->capture_default_str();

  std::vector<std::size_t> cex_cells{2, 4, 8, 16};
  auto* counterexample =
      app.add_subcommand("counterexample", "Mirror-symmetric counterexample regression");
  counterexample->add_option("--N", cex_cells, "Grid sizes")->delimiter(',')->capture_default_str();

  int bc_n = 3;
  std::size_t bc_cells = 3;
  std::size_t bc_trials = 200;
  std::uint64_t bc_seed = 1;
  auto* bound_check =
      app.add_subcommand("bound-check", "Main bound on seeded random symmetric unit kernels");
  bound_check->add_option("--n", bc_n, "Chaos order")->check(CLI::Range(2, 12))->capture_default_str();
  bound_check->add_option("--grid", bc_cells, "Grid cells")->check(CLI::PositiveNumber)->capture_default_str();
  bound_check->add_option("--trials", bc_trials, "Number of kernels")->capture_default_str();
  bound_check->add_option("--seed", bc_seed, "Generator seed")->capture_default_str();

  wigner::BMConfig bm;
  bm.m_list = {16, 32, 64, 128, 256, 512};
  bm.normalization = wigner::Normalization::asymptotic_sigma;
  std::string bm_norm = "asymptotic_sigma";
  auto* breuer = app.add_subcommand("breuer-major", "Fourth-moment gap decay for free fBm increments");
  breuer->add_option("--n", bm.n, "Chebyshev degree")->check(CLI::Range(1, 64))->capture_default_str();
  breuer->add_option("--H", bm.hurst, "Hurst index")->capture_default_str();
  breuer->add_option("--m", bm.m_list, "Sample sizes")->delimiter(',')->capture_default_str();
  breuer->add_option("--truncation", bm.truncation, "Terms kept in the sigma^2 series")->capture_default_str();
  breuer->add_option("--normalization", bm_norm, "asymptotic_sigma or exact_variance")
      ->check(CLI::IsMember({"asymptotic_sigma", "exact_variance"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    wigner::Report report;
    if (*constants) {
      report = wigner::run_constants(n_max);
    } else if (*counterexample) {
      report = wigner::run_counterexample(cex_cells, g.tol);
    } else if (*bound_check) {
      report = wigner::run_bound_check(bc_n, bc_cells, bc_trials, bc_seed, g.tol);
    } else {
      bm.normalization = wigner::parse_normalization(bm_norm);
      report = wigner::run_breuer_major(bm);
    }
    return emit(report, g);
  } catch (const wigner::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
