#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dgshock/basis.hpp"
#include "dgshock/field.hpp"
#include "dgshock/mesh.hpp"
#include "dgshock/physics.hpp"

namespace dgshock {

enum class Boundary { periodic, transmissive, reflective };

/// Largest polynomial degree supported by the element kernels.
inline constexpr int kMaxDegree = 7;
inline constexpr int kMaxModes = kMaxDegree + 1;

inline int checked_degree(int k) {
  if (k < 0 || k > kMaxDegree) {
    throw std::invalid_argument("polynomial degree must be in [0, 7]");
  }
  return k;
}

/// Everything the 1D kernels need besides the state itself.
struct Discretization1D {
  Mesh1D mesh;
  LegendreBasis basis;
  Physics1D physics;
  Boundary bc = Boundary::periodic;

  Discretization1D(Mesh1D m, int degree, Physics1D p, Boundary b)
      : mesh(m), basis(checked_degree(degree)), physics(p), bc(b) {}

  DGField1D make_field() const { return DGField1D(mesh, basis.degree(), physics.num_vars()); }
};

/// Local Lax-Friedrichs flux 1/2 (f(l) + f(r) - a (r - l)), a = max wave speed.
State llf_flux(const State& left, const State& right, const Physics1D& physics);

/// Left and right traces (u^-, u^+) at interface x_{i-1/2}, i = 0..N.
std::pair<State, State> interface_traces(const DGField1D& u, const Discretization1D& d,
                                         int interface);

/// Coefficients of the neighbor of `cell` on side -1 (left) or +1 (right).
/// Out-of-domain neighbors are ghost copies: wrapped under periodic BCs,
/// copied under transmissive BCs, and copied with the momentum negated at
/// reflective walls.
void neighbor_modes(const DGField1D& u, const Discretization1D& d, int cell, int side, int var,
                    std::span<double> out);
State neighbor_average(const DGField1D& u, const Discretization1D& d, int cell, int side);

/// Semidiscrete DG operator L(u), element-parallel.
void semidiscrete_rhs(const DGField1D& u, const Discretization1D& d, DGField1D& out);
/// Serial reference: one flux per interface, then element assembly.
void semidiscrete_rhs_reference(const DGField1D& u, const Discretization1D& d, DGField1D& out);

using RhsFunction = std::function<void(const DGField1D&, DGField1D&)>;
using PostProcess = std::function<void(DGField1D&)>;

/// Three-stage SSP Runge-Kutta step in Shu-Osher form. `post` (indicate and
/// limit) is applied after every stage when set.
void ssprk3_step(DGField1D& u, double dt, const RhsFunction& rhs, const PostProcess& post = {});

/// CFL * dx / ((2k + 1) * max wave speed).
double stable_time_step(const DGField1D& u, const Discretization1D& d, double cfl);

/// First element with an inadmissible value at any Gauss point or endpoint.
std::optional<int> find_inadmissible(const DGField1D& u, const Discretization1D& d);
bool cell_admissible(const DGField1D& u, const Discretization1D& d, int cell);

struct AdmissibilityScan1D {
  double min_density = 0.0;   ///< Euler only; +inf otherwise
  double min_pressure = 0.0;  ///< over points with positive density
  std::vector<int> bad;       ///< inadmissible elements, ascending
};
/// One pass over the Gauss points and endpoints of every element.
AdmissibilityScan1D scan_admissibility(const DGField1D& u, const Discretization1D& d);
/// Integral of each conserved variable over the domain.
State domain_integral(const DGField1D& u);

}  // namespace dgshock
