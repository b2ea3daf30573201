#include "dgshock/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dgshock/errors.hpp"
#include "dgshock/indicators.hpp"

namespace dgshock {

std::string_view to_string(LimitCadence c) { return c == LimitCadence::stage ? "stage" : "step"; }

LimitCadence parse_cadence(std::string_view name) {
  if (name == "stage") {
    return LimitCadence::stage;
  }
  if (name == "step") {
    return LimitCadence::step;
  }
  throw std::invalid_argument("unknown limit cadence '" + std::string(name) + "'");
}

int TroubledCellHistory::total_flags() const {
  int n = 0;
  for (const auto& e : entries) {
    n += static_cast<int>(e.cells.size());
  }
  return n;
}

IndicatorSettings resolved_indicator(const ProblemSpec& problem, const RunConfig& config) {
  IndicatorSettings s = config.indicator;
  if (s.variables.empty()) {
    if (s.kind == IndicatorKind::multiwavelet) {
      s.variables = problem.mw_variables;
    } else if (s.kind == IndicatorKind::kxrcf) {
      s.variables = problem.kxrcf_variables;
    }
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void track_minima(const AdmissibilityScan1D& scan, RunStats& stats) {
  stats.min_density = std::min(stats.min_density, scan.min_density);
  stats.min_pressure = std::min(stats.min_pressure, scan.min_pressure);
}

}  // namespace

Result1D run_1d(const ProblemSpec& problem, const RunConfig& config,
                const StepObserver1D& observer) {
  if (problem.dimension != 1) {
    throw std::invalid_argument("run_1d: problem '" + problem.name + "' is not one-dimensional");
  }
  const int level = config.level >= 0 ? config.level : problem.level;
  const double t_final = config.t_final > 0.0 ? config.t_final : problem.t_final;
  const Mesh1D mesh(level, problem.x0, problem.x1);
  Discretization1D disc(mesh, config.degree, problem.physics, problem.bc);
  const IndicatorSettings settings = resolved_indicator(problem, config);
  const bool periodic = disc.bc == Boundary::periodic;
  const int n = mesh.size();

  Result1D result{disc, project_l2(problem.initial, mesh, disc.basis, problem.physics.num_vars()),
                  TroubledCellHistory{1, n, 1, {}}, PhaseTimes{}, RunStats{}};
  DGField1D& u = result.field;
  RunStats& stats = result.stats;
  PhaseTimes& timing = result.timing;
  stats.min_density = std::numeric_limits<double>::infinity();
  stats.min_pressure = std::numeric_limits<double>::infinity();

  const auto indicate = [&](const DGField1D& x) {
    auto start = Clock::now();
    if (settings.mode == ThresholdMode::fixed) {
      TroubledCellMask mask = indicators::fixed_mask(x, disc, settings);
      timing.indicate += seconds_since(start);
      return mask;
    }
    const auto vectors = indicators::indication_vectors(settings.kind, x, disc, settings);
    timing.indicate += seconds_since(start);
    start = Clock::now();
    TroubledCellMask mask = indicators::detect_vectors(vectors, n, periodic, settings.detector);
    timing.detect += seconds_since(start);
    return mask;
  };

  // A jump inside an element projects with over- and undershoots; treat the
  // projected data like a stage result, plus any element that is already
  // inadmissible.
  if (config.limiting) {
    TroubledCellMask mask = indicate(u);
    for (int j : scan_admissibility(u, disc).bad) {
      mask[j] = 1;
    }
    const auto start = Clock::now();
    stats.limiter += limiter::limit_flagged(u, disc, mask);
    timing.limit += seconds_since(start);
  }
  track_minima(scan_admissibility(u, disc), stats);

  TroubledCellMask step_mask(n, 0);
  int stage = 0;
  int step = 0;

  const RhsFunction rhs = [&](const DGField1D& x, DGField1D& out) {
    const auto start = Clock::now();
    semidiscrete_rhs(x, disc, out);
    timing.rhs += seconds_since(start);
  };
  const auto accept = [&](const AdmissibilityScan1D& scan) {
    if (!scan.bad.empty()) {
      const int j = scan.bad.front();
      throw AdmissibilityError("run_1d: inadmissible state in element " + std::to_string(j) +
                                   " at step " + std::to_string(step),
                               j, step);
    }
    track_minima(scan, stats);
  };
  const PostProcess post = [&](DGField1D& x) {
    ++stage;
    const bool active =
        config.limiting && (config.cadence == LimitCadence::stage || stage % 3 == 0);
    if (!active) {
      accept(scan_admissibility(x, disc));
      return;
    }
    const TroubledCellMask mask = indicate(x);
    auto start = Clock::now();
    stats.limiter += limiter::limit_flagged(x, disc, mask);
    timing.limit += seconds_since(start);
    auto scan = scan_admissibility(x, disc);
    TroubledCellMask extra(n, 0);
    int count = 0;
    for (int j : scan.bad) {
      if (!mask[j]) {
        extra[j] = 1;
        ++count;
      }
    }
    if (count > 0) {
      start = Clock::now();
      stats.safeguarded += count;
      stats.limiter += limiter::limit_flagged(x, disc, extra);
      timing.limit += seconds_since(start);
      scan = scan_admissibility(x, disc);
    }
    for (int j = 0; j < n; ++j) {
      step_mask[j] |= mask[j];
    }
    accept(scan);
  };

  const auto run_start = Clock::now();
  double t = 0.0;
  double fraction_sum = 0.0;
  while (t_final - t > 1e-12 * t_final) {
    double dt = config.fixed_dt > 0.0 ? config.fixed_dt : stable_time_step(u, disc, config.cfl);
    if (t + dt > t_final) {
      dt = t_final - t;
    }
    ++step;
    std::fill(step_mask.begin(), step_mask.end(), 0);
    const State before = domain_integral(u);
    try {
      ssprk3_step(u, dt, rhs, post);
    } catch (const AdmissibilityError& e) {
      if (e.step() >= 0) {
        throw;
      }
      throw AdmissibilityError(std::string(e.what()) + " at step " + std::to_string(step),
                               e.element(), step);
    }
    t = (t + dt > t_final || t_final - (t + dt) < 1e-12 * t_final) ? t_final : t + dt;
    const State after = domain_integral(u);
    for (int v = 0; v < u.num_vars(); ++v) {
      stats.max_conservation_drift =
          std::max(stats.max_conservation_drift, std::abs(after[v] - before[v]));
    }
    HistoryEntry entry{step, t, {}};
    for (int j = 0; j < n; ++j) {
      if (step_mask[j]) {
        entry.cells.push_back(j);
      }
    }
    const double fraction = static_cast<double>(entry.cells.size()) / n;
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
