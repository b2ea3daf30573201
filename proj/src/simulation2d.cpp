#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dgshock/errors.hpp"
#include "dgshock/indicators.hpp"
#include "dgshock/simulation.hpp"

namespace dgshock {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void track_minima_2d(const AdmissibilityScan2D& scan, RunStats& stats) {
  stats.min_density = std::min(stats.min_density, scan.min_density);
  stats.min_pressure = std::min(stats.min_pressure, scan.min_pressure);
}

}  // namespace

Result2D run_2d(const ProblemSpec& problem, const RunConfig& config,
                const StepObserver2D& observer) {
  if (problem.dimension != 2) {
    throw std::invalid_argument("run_2d: problem '" + problem.name + "' is not two-dimensional");
  }
  const int level_x = (config.level >= 0 ? config.level : problem.level) - config.scale;
  const int level_y = problem.level_y - config.scale;
  if (level_x < 1 || level_y < 1) {
    throw std::invalid_argument("run_2d: --scale leaves fewer than two elements per axis");
  }
  const double t_final = config.t_final > 0.0 ? config.t_final : problem.t_final;
  const Mesh2D mesh(level_x, level_y, problem.x0, problem.x1, problem.y0, problem.y1);
  Discretization2D disc(mesh, config.degree, problem.physics.gamma, problem.ghost);
  const IndicatorSettings settings = resolved_indicator(problem, config);
  const int nx = mesh.nx();
  const int ncells = mesh.size();

  Result2D result{disc, project_l2(problem.initial_2d, mesh, disc.basis, 4),
                  TroubledCellHistory{2, nx, mesh.ny(), {}}, PhaseTimes{}, RunStats{}};
  DGField2D& u = result.field;
  RunStats& stats = result.stats;
  PhaseTimes& timing = result.timing;
  stats.min_density = std::numeric_limits<double>::infinity();
  stats.min_pressure = std::numeric_limits<double>::infinity();
  if (config.limiting) {
    auto start = Clock::now();
    TroubledCellMask mask = indicators::indicate_2d(u, disc, 0.0, settings);
    timing.indicate += seconds_since(start);
    for (int c : scan_admissibility_2d(u, disc).bad) {
      mask[c] = 1;
    }
    start = Clock::now();
    stats.limiter += limiter::limit_flagged_2d(u, disc, mask);
    timing.limit += seconds_since(start);
  }
  track_minima_2d(scan_admissibility_2d(u, disc), stats);

  TroubledCellMask step_mask(ncells, 0);
  int stage = 0;
  int step = 0;

  const RhsFunction2D rhs = [&](const DGField2D& x, double t, DGField2D& out) {
    const auto start = Clock::now();
    semidiscrete_rhs_2d(x, disc, t, out);
    timing.rhs += seconds_since(start);
  };
  const PostProcess2D post = [&](DGField2D& x, double t) {
    ++stage;
    const bool active =
        config.limiting && (config.cadence == LimitCadence::stage || stage % 3 == 0);
    if (active) {
      auto start = Clock::now();
      const TroubledCellMask mask = indicators::indicate_2d(x, disc, t, settings);
      timing.indicate += seconds_since(start);
      start = Clock::now();
      stats.limiter += limiter::limit_flagged_2d(x, disc, mask);
      timing.limit += seconds_since(start);
      TroubledCellMask extra(ncells, 0);
      int count = 0;
      for (int c : scan_admissibility_2d(x, disc).bad) {
        if (!mask[c]) {
          extra[c] = 1;
          ++count;
        }
      }
      if (count > 0) {
        start = Clock::now();
        stats.safeguarded += count;
        stats.limiter += limiter::limit_flagged_2d(x, disc, extra);
        timing.limit += seconds_since(start);
      }
      for (int c = 0; c < ncells; ++c) {
        step_mask[c] |= mask[c];
      }
    }
    const AdmissibilityScan2D scan = scan_admissibility_2d(x, disc);
    if (!scan.bad.empty()) {
      const int c = scan.bad.front();
      throw AdmissibilityError("run_2d: inadmissible state in element (" +
                                   std::to_string(c % nx) + ", " + std::to_string(c / nx) +
                                   ") at step " + std::to_string(step),
                               c, step);
    }
    track_minima_2d(scan, stats);
  };

  const auto run_start = Clock::now();
  double t = 0.0;
  double fraction_sum = 0.0;
  while (t_final - t > 1e-12 * t_final) {
    double dt =
        config.fixed_dt > 0.0 ? config.fixed_dt : stable_time_step_2d(u, disc, config.cfl);
    if (t + dt > t_final) {
      dt = t_final - t;
    }
    ++step;
    std::fill(step_mask.begin(), step_mask.end(), 0);
    try {
      ssprk3_step_2d(u, t, dt, rhs, post);
    } catch (const AdmissibilityError& e) {
      if (e.step() >= 0) {
        throw;
      }
      throw AdmissibilityError(std::string(e.what()) + " at step " + std::to_string(step),
                               e.element(), step);
    }
    t = (t_final - (t + dt) < 1e-12 * t_final) ? t_final : t + dt;
    HistoryEntry entry{step, t, {}};
    for (int c = 0; c < ncells; ++c) {
      if (step_mask[c]) {
        entry.cells.push_back(c);
      }
    }
    const double fraction = static_cast<double>(entry.cells.size()) / ncells;
    fraction_sum += fraction;
    stats.max_flagged_fraction = std::max(stats.max_flagged_fraction, fraction);
    result.history.entries.push_back(std::move(entry));
    if (observer) {
      observer(step, t, u, step_mask);
    }
  }
  timing.total = seconds_since(run_start);
  stats.steps = step;
  stats.final_time = t;
  stats.mean_flagged_fraction = step > 0 ? fraction_sum / step : 0.0;
  return result;
}

}  // namespace dgshock
