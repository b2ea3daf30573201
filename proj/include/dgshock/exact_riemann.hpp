#pragma once

#include "dgshock/physics.hpp"

namespace dgshock {

/// Exact solution of the 1D Euler Riemann problem (ideal gas).
class ExactRiemann {
 public:
  ExactRiemann(euler::Primitive1D left, euler::Primitive1D right, double gamma);

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }
  /// Primitive state on the ray x / t = s.
  euler::Primitive1D sample(double s) const;
  /// Conserved state at (x, t) for a discontinuity initially at x0.
  State at(double x, double t, double x0 = 0.0) const;

 private:
  // Pressure function f_K(p) of one side and its derivative.
  void side_function(double p, const euler::Primitive1D& w, double c, double& f,
                     double& df) const;

  euler::Primitive1D l_;
  euler::Primitive1D r_;
  double gamma_;
  double cl_;
  double cr_;
  double p_star_ = 0.0;
  double u_star_ = 0.0;
};

}  // namespace dgshock
