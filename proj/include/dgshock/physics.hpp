#pragma once

#include <array>

namespace dgshock {

inline constexpr int kMaxVars = 4;

/// Conserved vector. 1D Euler uses (rho, rho u, E); 2D Euler uses
/// (rho, rho u, rho v, E); scalar laws use slot 0 only.
using State = std::array<double, kMaxVars>;
using Matrix = std::array<std::array<double, kMaxVars>, kMaxVars>;

/// Right eigenvectors and their inverse; the characteristic variables are
/// w = Rinv * u. Only the leading `size` rows/columns are meaningful.
struct CharFrame {
  int size = 1;
  Matrix R{};
  Matrix Rinv{};

  static CharFrame identity(int n);
  State to_characteristic(const State& u) const;
  State from_characteristic(const State& w) const;
};

namespace euler {

inline constexpr double kDefaultGamma = 1.4;

struct Primitive1D {
  double rho;
  double u;
  double p;
};

struct Primitive2D {
  double rho;
  double u;
  double v;
  double p;
};

/// Roe-averaged state together with the flux-Jacobian eigenbasis.
struct RoePair {
  double u = 0.0;
  double v = 0.0;
  double H = 0.0;
  double c = 0.0;
  CharFrame frame;
};

double pressure(const State& u, double gamma);
double pressure_2d(const State& u, double gamma);
bool admissible(const State& u, double gamma);
bool admissible_2d(const State& u, double gamma);

Primitive1D to_primitive(const State& u, double gamma);
State to_conserved(const Primitive1D& w, double gamma);
Primitive2D to_primitive_2d(const State& u, double gamma);
State to_conserved_2d(const Primitive2D& w, double gamma);

/// (rho u, rho u^2 + p, u (E + p)). Throws AdmissibilityError.
State flux(const State& u, double gamma);
/// |u| + c.
double wave_speed(const State& u, double gamma);
double max_wave_speed(const State& left, const State& right, double gamma);

RoePair roe_decomposition(const State& left, const State& right, double gamma);

/// Flux in direction `axis` (0 = x, 1 = y).
State flux_2d(const State& u, int axis, double gamma);
double wave_speed_2d(const State& u, int axis, double gamma);
RoePair roe_decomposition_2d(const State& left, const State& right, int axis, double gamma);

}  // namespace euler

enum class Equation { advection, burgers, euler };

/// One-dimensional conservation law u_t + f(u)_x = 0.
struct Physics1D {
  Equation equation = Equation::euler;
  double speed = 1.0;  ///< advection velocity
  double gamma = euler::kDefaultGamma;

  int num_vars() const { return equation == Equation::euler ? 3 : 1; }
  State flux(const State& u) const;
  double max_wave_speed(const State& left, const State& right) const;
  /// Largest characteristic speed of a single state, for the CFL rule.
  double wave_speed(const State& u) const;
  bool admissible(const State& u) const;
  /// Characteristic frame between two states (identity for scalar laws).
  CharFrame frame(const State& left, const State& right) const;
  /// Signed transport velocity across an interface, used to orient inflow edges.
  double interface_velocity(const State& left, const State& right) const;
};

}  // namespace dgshock
