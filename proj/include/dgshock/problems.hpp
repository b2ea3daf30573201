#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dgshock/field.hpp"
#include "dgshock/physics.hpp"
#include "dgshock/solver1d.hpp"
#include "dgshock/solver2d.hpp"

namespace dgshock {

/// A benchmark: domain, initial data, boundary treatment, final time and
/// default resolution.
struct ProblemSpec {
  std::string name;
  int dimension = 1;
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;
  int level = 7;    ///< 2^level elements (x direction in 2D)
  int level_y = 0;  ///< 2D only
  double t_final = 1.0;
  Physics1D physics;
  Boundary bc = Boundary::periodic;
  InitialCondition1D initial;
  InitialCondition2D initial_2d;
  GhostState ghost;
  /// Exact solution (x, t), empty when no closed form is available.
  std::function<State(double, double)> exact;
  /// Conserved variables fed to the multiwavelet and KXRCF indicators.
  std::vector<int> mw_variables{0};
  std::vector<int> kxrcf_variables{0, 2};

  int elements() const { return 1 << level; }
};

std::vector<std::string> problem_names();

/// Throws std::invalid_argument for unknown names.
ProblemSpec make_problem(std::string_view name);

/// Post-shock state of the Mach 10 double-Mach-reflection setup.
State double_mach_post_shock(double gamma = euler::kDefaultGamma);
State double_mach_pre_shock(double gamma = euler::kDefaultGamma);
/// x position of the incident shock at height y and time t.
double double_mach_shock_x(double y, double t);

}  // namespace dgshock
