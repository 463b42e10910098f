#include "wigner/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <exception>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wigner/bounds.hpp"
#include "wigner/chaos.hpp"
#include "wigner/gradient.hpp"
#include "wigner/random_kernels.hpp"
#include "wigner/serialization.hpp"

namespace wigner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, count) on a few threads. Each index writes only
// its own slot, so results do not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string fmt(double x) { return format_double(x); }

Check close_check(std::string name, double got, double want, double tol) {
  const bool ok = std::abs(got - want) <= tol;
  return {std::move(name), ok, "got " + fmt(got) + ", expected " + fmt(want) + " (tol " + fmt(tol) + ")"};
}

ChaosElement first_chaos_indicator(const GridSpec& grid, std::size_t cell) {
  return ChaosElement::from_kernel(1, Kernel::indicator(grid, cell));
}

}  // namespace

bool Report::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  out << "# " << kReportSchema << " " << report.command << "\n";
  for (const auto& [key, value] : report.params) out << "# " << key << "=" << value << "\n";
  for (const auto& note : report.notes) out << "# note: " << note << "\n";
  for (const auto& c : report.checks) {
    out << "# check " << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " (" << c.detail << ")\n";
  }
  out << "# status: " << (report.ok() ? "ok" : "failed") << "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << report.columns[i];
  }
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string render_json(const Report& report) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = report.command;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.params) j["params"][key] = value;
  j["notes"] = report.notes;
  j["columns"] = report.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double x : row) r.push_back(std::isfinite(x) ? nlohmann::ordered_json(x) : nullptr);
    j["rows"].push_back(std::move(r));
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["ok"] = report.ok();
  return j.dump(2) + "\n";
}

Kernel counterexample_kernel(std::size_t cells) {
  if (cells < 1) throw PreconditionError("counterexample_kernel: N must be at least 1");
  const GridSpec grid = GridSpec::unit(cells);
  Kernel f(grid, 3);
  const Scalar height(std::sqrt(static_cast<double>(cells)));
  for (std::size_t a = 0; a < cells; ++a) {
    for (std::size_t b = 0; b < cells; ++b) f.at({a, b, a}) = height;
  }
  return f;
}

BiChaosElement counterexample_summand(std::size_t cells) {
  if (cells < 1) throw PreconditionError("counterexample_summand: N must be at least 1");
  const GridSpec grid = GridSpec::unit(cells);
  BiChaosElement y(grid);
  for (std::size_t k = 0; k < cells; ++k) {
    const ChaosElement a = first_chaos_indicator(grid, k);
    y += tensor(a, a);
  }
  y *= Scalar(std::sqrt(static_cast<double>(cells)));
  return sharp_multiply(y, adjoint(y));
}

Report run_constants(int n_max) {
  if (n_max < 2) throw PreconditionError("constants: --n-max must be at least 2");
  Report r;
  r.command = "constants";
  r.params = {{"n_max", std::to_string(n_max)}};
  r.notes = {"C_n = max over integer u in [1, n-1] of P_n(u) / n^2",
             "floor_ceil_C_n evaluates P_n at floor(u0) and ceil(u0)"};
  r.columns = {"n", "u0", "argmax_u", "P", "C_n", "floor_ceil_C_n"};
  std::string off_recipe;
  for (int n = 2; n <= n_max; ++n) {
    const ConstantsRow row = constants_row(n);
    r.rows.push_back({static_cast<double>(n), row.u0, static_cast<double>(row.argmax_u),
                      row.p_at_argmax, row.c_n, row.floor_ceil_c_n});
    const int lo = static_cast<int>(std::floor(row.u0));
    const int hi = static_cast<int>(std::ceil(row.u0));
    if (row.argmax_u != lo && row.argmax_u != hi) off_recipe += " " + std::to_string(n);
  }
  r.checks.push_back({"argmax_near_u0", off_recipe.empty(),
                      off_recipe.empty() ? "integer argmax in {floor(u0), ceil(u0)} for every n"
                                         : "argmax away from u0 for n =" + off_recipe});
  r.checks.push_back({"C_2", constants_row(2).c_n_exact == Rational{3, 2},
                      "exact " + std::to_string(constants_row(2).c_n_exact.num) + "/" +
                          std::to_string(constants_row(2).c_n_exact.den) + ", expected 3/2"});
  if (n_max >= 4) {
    const Rational c4 = constants_row(4).c_n_exact;
    r.checks.push_back({"C_4", c4 == Rational{19, 4},
                        "exact " + std::to_string(c4.num) + "/" + std::to_string(c4.den) +
                            ", expected 19/4"});
  }
  if (n_max >= 3) {
    r.notes.push_back("C_3 = 8/3 by integer maximization, not the value 2 sometimes stated for it");
  }
  return r;
}

Report run_counterexample(const std::vector<std::size_t>& cells, double tol) {
  if (cells.empty()) throw PreconditionError("counterexample: empty N list");
  Report r;
  r.command = "counterexample";
  std::string list;
  for (std::size_t n : cells) list += (list.empty() ? "" : ";") + std::to_string(n);
  r.params = {{"N", list}, {"tol", fmt(tol)}};
  r.notes = {"summand_norm2 is phi(x)phi(|Y # Y^*|^2) with Y = sqrt(N) sum_k I1(1_k)(x)I1(1_k)",
             "summand_target is 1 + 3/N"};
  r.columns = {"N", "norm2", "gap", "summand_norm2", "summand_target", "lhs"};

  struct Row {
    double norm2, gap, summand, lhs;
  };
  std::vector<Row> rows(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const Kernel f = counterexample_kernel(cells[i]);
    rows[i] = {norm_squared(f), fourth_moment_gap(f), norm2(counterexample_summand(cells[i])),
               main_bound_lhs(3, f)};
  });

  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double n = static_cast<double>(cells[i]);
    const Row& row = rows[i];
    const double target = 1.0 + 3.0 / n;
    r.rows.push_back({n, row.norm2, row.gap, row.summand, target, row.lhs});
    const std::string tag = "_N" + std::to_string(cells[i]);
    r.checks.push_back(close_check("unit_norm" + tag, row.norm2, 1.0, tol));
    r.checks.push_back(close_check("gap_times_N" + tag, row.gap * n, 2.0, tol));
    r.checks.push_back(close_check("summand_norm2" + tag, row.summand, target, tol));
    r.checks.push_back({"lhs_above_one" + tag, row.lhs > 1.0, "lhs " + fmt(row.lhs)});
  }
  return r;
}

Report run_bound_check(int n, std::size_t cells, std::size_t trials, std::uint64_t seed,
                       double tol) {
  if (n < 2) throw PreconditionError("bound-check: n must be at least 2");
  if (cells < 1) throw PreconditionError("bound-check: grid must have at least one cell");
  dense_size(cells, 2 * n);  // largest intermediate is a sharp product of order 2n
  Report r;
  r.command = "bound-check";
  r.params = {{"n", std::to_string(n)},
              {"grid", std::to_string(cells)},
              {"trials", std::to_string(trials)},
              {"seed", std::to_string(seed)},
              {"tol", fmt(tol)}};
  r.columns = {"trial", "gap", "lhs", "lhs_closed_form", "C_n", "ratio", "dc2_from_lhs",
               "dc2_from_gap"};

  const GridSpec grid = GridSpec::unit(cells);
  std::vector<BoundReport> reports(trials);
  parallel_for(trials, [&](std::size_t t) {
    reports[t] = bound_report(n, random_symmetric_unit_kernel(grid, n, seed, t));
  });

  double max_ratio = 0.0;
  double max_dual = 0.0;
  double max_chain = -std::numeric_limits<double>::infinity();
  double max_tight = 0.0;
  bool all_bounded = true;
  for (std::size_t t = 0; t < trials; ++t) {
    const BoundReport& b = reports[t];
    const double closed = b.lhs_closed_form.value_or(kNaN);
    const double ratio = b.gap > 0.0 ? b.lhs / (b.c_n * b.gap) : kNaN;
    r.rows.push_back({static_cast<double>(t), b.gap, b.lhs, closed, b.c_n, ratio, b.dc2_from_lhs,
                      b.dc2_from_gap});
    all_bounded = all_bounded && b.bound_satisfied;
    if (std::isfinite(ratio)) max_ratio = std::max(max_ratio, ratio);
    max_dual = std::max(max_dual, std::abs(b.lhs - closed));
    max_chain = std::max(max_chain, b.dc2_from_lhs - b.dc2_from_gap);
    if (n == 2) max_tight = std::max(max_tight, std::abs(b.lhs - 1.5 * b.gap));
  }
  r.params.emplace_back("max_ratio", fmt(max_ratio));
  r.checks.push_back({"bound_holds", all_bounded, "max lhs/(C_n gap) = " + fmt(max_ratio)});
  r.checks.push_back({"closed_form_agrees", max_dual <= tol, "max |lhs - closed| = " + fmt(max_dual)});
  r.checks.push_back({"dc2_chain_ordered", trials == 0 || max_chain <= tol,
                      "max dc2_from_lhs - dc2_from_gap = " + fmt(max_chain)});
  if (n == 2) {
    r.checks.push_back({"n2_equality", max_tight <= tol, "max |lhs - 1.5 gap| = " + fmt(max_tight)});
  }
  return r;
}

Report run_breuer_major(const BMConfig& cfg) {
  const BMResult res = rate_fit(cfg);
  Report r;
  r.command = "breuer-major";
  std::string list;
  for (std::size_t m : cfg.m_list) list += (list.empty() ? "" : ";") + std::to_string(m);
  r.params = {{"n", std::to_string(cfg.n)},
              {"H", fmt(cfg.hurst)},
              {"m", list},
              {"truncation", std::to_string(cfg.truncation)},
              {"normalization", to_string(cfg.normalization)},
              {"sigma2", fmt(res.sigma.value)},
              {"sigma2_tail_bound", fmt(res.sigma.tail_bound)},
              {"slope", fmt(res.slope)},
              {"slope_theory", fmt(res.slope_theory)},
              {"slope_error", fmt(res.slope_error)}};
  r.notes = {"rate measured on the fourth-moment gap, whose exponent is 2*alpha(n,H)",
             "sqrt_gap_bound = sqrt(C_n)/2 * sqrt(gap)"};
  r.columns = {"m", "gap", "sqrt_gap_bound", "slope_running", "alpha_theory"};
  for (std::size_t i = 0; i < res.m.size(); ++i) {
    r.rows.push_back({static_cast<double>(res.m[i]), res.gaps[i], res.dc2_bounds[i],
                      res.running_slope[i], res.alpha_theory});
  }
  return r;
}

}  // namespace wigner
