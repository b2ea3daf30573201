#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dgshock/field.hpp"
#include "dgshock/indicator_types.hpp"
#include "dgshock/limiter.hpp"
#include "dgshock/problems.hpp"
#include "dgshock/solver1d.hpp"
#include "dgshock/solver2d.hpp"

namespace dgshock {

/// When indication and limiting run inside an SSP-RK3 step.
enum class LimitCadence { stage, step };

/// One experiment: problem, discretization and indicator choice.
struct RunConfig {
  std::string problem = "sod";
  int degree = 2;
  int level = -1;         ///< elements 2^level; -1 keeps the problem default
  int scale = 0;          ///< 2D: both levels reduced by this amount
  IndicatorSettings indicator;
  bool limiting = true;   ///< false runs the unlimited scheme
  double cfl = 0.3;
  double t_final = -1.0;  ///< -1 keeps the problem default
  double fixed_dt = 0.0;  ///< > 0 replaces the CFL rule
  LimitCadence cadence = LimitCadence::stage;

  bool operator==(const RunConfig&) const = default;
};

std::string_view to_string(LimitCadence c);
LimitCadence parse_cadence(std::string_view name);

/// Wall-clock seconds per phase, summed over the run.
struct PhaseTimes {
  double rhs = 0.0;
  double indicate = 0.0;
  double detect = 0.0;
  double limit = 0.0;
  double total = 0.0;
};

struct HistoryEntry {
  int step = 0;
  double time = 0.0;
  std::vector<int> cells;  ///< flagged elements (2D: j * nx + i), ascending
};

/// Troubled cells per time step: the union over the stages of that step.
struct TroubledCellHistory {
  int dimension = 1;
  int nx = 0;
  int ny = 1;
  std::vector<HistoryEntry> entries;

  int total_flags() const;
};

struct RunStats {
  int steps = 0;
  double final_time = 0.0;
  limiter::LimiterReport limiter;
  double mean_flagged_fraction = 0.0;
  double max_flagged_fraction = 0.0;
  /// Minima over every quadrature point and element endpoint after every stage.
  double min_density = 0.0;
  double min_pressure = 0.0;
  /// Unflagged elements sent through the limiter only because they were
  /// inadmissible after indication-driven limiting; not part of the history.
  int safeguarded = 0;
  /// Largest per-step change of any domain integral (1D only).
  double max_conservation_drift = 0.0;
};

struct Result1D {
  Discretization1D disc;
  DGField1D field;
  TroubledCellHistory history;
  PhaseTimes timing;
  RunStats stats;
};

struct Result2D {
  Discretization2D disc;
  DGField2D field;
  TroubledCellHistory history;
  PhaseTimes timing;
  RunStats stats;
};

using StepObserver1D =
    std::function<void(int step, double t, const DGField1D&, const TroubledCellMask&)>;
using StepObserver2D =
    std::function<void(int step, double t, const DGField2D&, const TroubledCellMask&)>;

/// Indicator settings with the problem's default variables filled in.
IndicatorSettings resolved_indicator(const ProblemSpec& problem, const RunConfig& config);

/// Runs a 1D problem to its final time. Throws AdmissibilityError (with the
/// step number) if a state loses positivity.
Result1D run_1d(const ProblemSpec& problem, const RunConfig& config,
                const StepObserver1D& observer = {});

Result2D run_2d(const ProblemSpec& problem, const RunConfig& config,
                const StepObserver2D& observer = {});

}  // namespace dgshock
