// Command-line driver: run, convergence, compare, selftest.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "dgshock/analysis.hpp"
#include "dgshock/config.hpp"
#include "dgshock/errors.hpp"
#include "dgshock/output.hpp"
#include "dgshock/problems.hpp"
#include "dgshock/simulation.hpp"
#include "selftest.hpp"

namespace {

using namespace dgshock;

struct Flags {
  std::string config_file;
  std::optional<std::string> problem;
  std::optional<int> k;
  std::optional<int> n;
  std::optional<std::string> indicator;
  std::optional<std::string> mode;
  std::optional<double> param;
  std::optional<double> cfl;
  std::optional<double> tfinal;
  std::optional<int> scale;
  std::optional<std::string> cadence;
  std::string out_dir = "out";
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "key = value file; flags override it");
  cmd->add_option("--problem", f.problem, "advect_sine, euler_sine, sod, lax, blast, shu_osher, double_mach");
  cmd->add_option("--k", f.k, "polynomial degree");
  cmd->add_option("--n", f.n, "refinement level (2^n elements)");
  cmd->add_option("--indicator", f.indicator, "multiwavelet, kxrcf or minmod");
  cmd->add_option("--mode", f.mode, "fixed or outlier");
  cmd->add_option("--param", f.param, "fixed-mode parameter: C, KXRCF threshold or M");
  cmd->add_option("--cfl", f.cfl, "CFL number");
  cmd->add_option("--tfinal", f.tfinal, "final time");
  cmd->add_option("--scale", f.scale, "2D: reduce both refinement levels by this amount");
  cmd->add_option("--limit-cadence", f.cadence, "stage or step");
}

RunConfig build_config(const Flags& f) {
  RunConfig c;
  if (!f.config_file.empty()) {
    c = load_config(f.config_file);
  }
  if (f.problem) c.problem = *f.problem;
  if (f.k) c.degree = *f.k;
  if (f.n) c.level = *f.n;
  if (f.indicator) c.indicator.kind = parse_indicator(*f.indicator);
  if (f.mode) c.indicator.mode = parse_mode(*f.mode);
  if (f.cfl) c.cfl = *f.cfl;
  if (f.tfinal) c.t_final = *f.tfinal;
  if (f.scale) c.scale = *f.scale;
  if (f.cadence) c.cadence = parse_cadence(*f.cadence);
  if (f.param) {
    if (c.indicator.mode != ThresholdMode::fixed) {
      throw CLI::ValidationError("--param", "only applies with --mode fixed");
    }
    c.indicator.set_parameter(*f.param);
  }
  const ProblemSpec spec = make_problem(c.problem);
  if (c.scale != 0 && spec.dimension != 2) {
    throw CLI::ValidationError("--scale", "only applies to two-dimensional problems");
  }
  if (c.scale < 0) {
    throw CLI::ValidationError("--scale", "must be non-negative");
  }
  if (c.indicator.kind == IndicatorKind::multiwavelet && c.degree > 3) {
    throw CLI::ValidationError("--k", "the multiwavelet indicator supports k <= 3");
  }
  if (!(c.cfl > 0.0)) {
    throw CLI::ValidationError("--cfl", "must be positive");
  }
  return c;
}

int cmd_run(const Flags& f) {
  const RunConfig c = build_config(f);
  const ProblemSpec spec = make_problem(c.problem);
  const std::filesystem::path dir = f.out_dir;
  if (spec.dimension == 1) {
    const Result1D r = run_1d(spec, c);
    output::write_run(dir, c, r);
    fmt::print("{}: {} steps to t = {}, {} flagged cell-steps, {:.3f} s\n", spec.name,
               r.stats.steps, r.stats.final_time, r.history.total_flags(), r.timing.total);
    if (r.stats.safeguarded > 0) {
      fmt::print("{} unflagged cell-stages limited for positivity\n", r.stats.safeguarded);
    }
    if (spec.exact) {
      fmt::print("density L1 error {:.6e}\n",
                 analysis::l1_error(r.field, r.disc, spec.exact, r.stats.final_time, 0));
    }
  } else {
    const Result2D r = run_2d(spec, c);
    output::write_run(dir, c, r);
    fmt::print("{}: {}x{} elements, {} steps to t = {}, mean flagged fraction {:.4f}, {:.3f} s\n",
               spec.name, r.field.nx(), r.field.ny(), r.stats.steps, r.stats.final_time,
               r.stats.mean_flagged_fraction, r.timing.total);
  }
  fmt::print("outputs in {}\n", dir.string());
  return 0;
}

int cmd_convergence(const Flags& f, int coarse_levels) {
  RunConfig c = build_config(f);
  if (!f.problem) {
    c.problem = "advect_sine";
  }
  const ProblemSpec spec = make_problem(c.problem);
  if (!spec.exact || spec.dimension != 1) {
    throw CLI::ValidationError("--problem", "convergence needs a 1D problem with a closed-form solution");
  }
  const int finest = c.level >= 0 ? c.level : 7;
  std::vector<int> levels;
  for (int n = finest - coarse_levels; n <= finest; ++n) {
    levels.push_back(n);
  }
  const auto rows = analysis::convergence_study(c.problem, c.degree, levels, c.t_final, c.cfl);
  fmt::print("{:>6} {:>10} {:>14} {:>8}\n", "n", "elements", "L2 error", "order");
  for (const auto& r : rows) {
    fmt::print("{:>6} {:>10} {:>14.6e} {:>8.3f}\n", r.level, 1 << r.level, r.error, r.order);
  }
  return 0;
}

int cmd_compare(const Flags& f, int repeats) {
  const RunConfig c = build_config(f);
  const auto rows = analysis::compare_modes(c, repeats);
  fmt::print("{} (k = {}, median of {} runs)\n", c.problem, c.degree, repeats);
  fmt::print("{:<14} {:>10} {:>10} {:>10} {:>12} {:>12}\n", "indicator", "fixed [s]",
             "outlier [s]", "overhead", "fixed frac", "outlier frac");
  for (const auto& r : rows) {
    fmt::print("{:<14} {:>10.3f} {:>10.3f} {:>9.1f}% {:>12.4f} {:>12.4f}\n", to_string(r.kind),
               r.fixed_seconds, r.outlier_seconds, r.overhead_percent, r.fixed_mean_fraction,
               r.outlier_mean_fraction);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Troubled-cell indication by outlier detection for modal DG schemes"};
  app.require_subcommand(1);
  Flags flags;

  auto* run = app.add_subcommand("run", "run one problem with one indicator and mode");
  add_common(run, flags);
  run->add_option("--out-dir", flags.out_dir, "directory for history.csv, final.csv, timing.txt");

  int coarse_levels = 2;
  auto* conv = app.add_subcommand("convergence", "unlimited refinement study, --n is the finest level");
  add_common(conv, flags);
  conv->add_option("--levels", coarse_levels, "number of coarser levels")->check(CLI::Range(1, 6));

  int repeats = 3;
  auto* cmp = app.add_subcommand("compare", "fixed against outlier mode for all indicators");
  add_common(cmp, flags);
  cmp->add_option("--repeats", repeats, "timing repeats (median)")->check(CLI::Range(1, 50));

  std::uint64_t seed = 12345;
  auto* self = app.add_subcommand("selftest", "property checks");
  self->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(flags);
    if (*conv) return cmd_convergence(flags, coarse_levels);
    if (*cmp) return cmd_compare(flags, repeats);
    if (*self) return dgshock::tools::run_selftest(seed) == 0 ? 0 : 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const dgshock::AdmissibilityError& e) {
    std::cerr << "admissibility failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
