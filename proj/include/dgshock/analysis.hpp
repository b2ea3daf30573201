#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dgshock/simulation.hpp"

namespace dgshock::analysis {

using ExactSolution = std::function<State(double x, double t)>;

/// Error norms of conserved variable `var` against an exact solution at
/// time t, by (k + 4)-point Gauss quadrature per element.
double l1_error(const DGField1D& u, const Discretization1D& d, const ExactSolution& exact,
                double t, int var = 0);
double l2_error(const DGField1D& u, const Discretization1D& d, const ExactSolution& exact,
                double t, int var = 0);

struct ConvergenceRow {
  int level = 0;
  double error = 0.0;
  double order = 0.0;  ///< 0 on the first row
};

/// Unlimited runs of a problem with a closed-form solution on each level;
/// L2 error of variable 0 at the final time.
std::vector<ConvergenceRow> convergence_study(const std::string& problem, int degree,
                                              const std::vector<int>& levels,
                                              double t_final = -1.0, double cfl = 0.3);

struct CompareRow {
  IndicatorKind kind{};
  double fixed_seconds = 0.0;    ///< median total wall time
  double outlier_seconds = 0.0;  ///< median total wall time
  double overhead_percent = 0.0;
  double fixed_mean_fraction = 0.0;
  double outlier_mean_fraction = 0.0;
  int fixed_flags = 0;    ///< sum of flagged cells over steps
  int outlier_flags = 0;
};

/// Fixed against outlier mode for every indicator, median of `repeats` interleaved runs.
/// The fixed-mode parameters of `base` are used.
std::vector<CompareRow> compare_modes(const RunConfig& base, int repeats = 3);

}  // namespace dgshock::analysis
