#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dgshock/basis.hpp"
#include "dgshock/field.hpp"
#include "dgshock/mesh.hpp"
#include "dgshock/physics.hpp"

namespace dgshock {

enum class Side { left, right, bottom, top };

/// Ghost state across a non-periodic boundary face, given the interior trace,
/// the face point and the stage time.
using GhostState = std::function<State(const State& inside, double x, double y, double t, Side)>;

/// 2D compressible Euler on a rectangle with Q^k elements.
struct Discretization2D {
  Mesh2D mesh;
  LegendreBasis basis;
  double gamma = euler::kDefaultGamma;
  bool periodic_x = false;
  bool periodic_y = false;
  GhostState ghost;

  Discretization2D(Mesh2D m, int degree, double g, GhostState gs, bool px = false, bool py = false)
      : mesh(m), basis(degree), gamma(g), periodic_x(px), periodic_y(py), ghost(std::move(gs)) {}

  DGField2D make_field() const { return DGField2D(mesh, basis.degree(), 4); }
};

/// Ghost states for the standard wall/outflow sides.
State reflect_wall(const State& inside, Side side);
State transmissive(const State& inside);

/// Local Lax-Friedrichs flux in direction `axis`.
State llf_flux_2d(const State& left, const State& right, int axis, double gamma);

/// Semidiscrete operator at stage time t, element-parallel.
void semidiscrete_rhs_2d(const DGField2D& u, const Discretization2D& d, double t, DGField2D& out);
/// Serial reference assembling face fluxes once per face.
void semidiscrete_rhs_2d_reference(const DGField2D& u, const Discretization2D& d, double t,
                                   DGField2D& out);

using RhsFunction2D = std::function<void(const DGField2D&, double t, DGField2D&)>;
using PostProcess2D = std::function<void(DGField2D&, double t)>;

/// SSP-RK3 step from t to t + dt; `post` sees each stage and its time.
void ssprk3_step_2d(DGField2D& u, double t, double dt, const RhsFunction2D& rhs,
                    const PostProcess2D& post = {});

/// cfl / ((2k + 1) (s_x / dx + s_y / dy)) with s the largest wave speeds.
double stable_time_step_2d(const DGField2D& u, const Discretization2D& d, double cfl);
bool cell_admissible_2d(const DGField2D& u, const Discretization2D& d, int i, int j);
std::optional<std::pair<int, int>> find_inadmissible_2d(const DGField2D& u,
                                                        const Discretization2D& d);

struct AdmissibilityScan2D {
  double min_density = 0.0;
  double min_pressure = 0.0;  ///< over points with positive density
  std::vector<int> bad;       ///< inadmissible elements j * nx + i, ascending
};

/// One pass over tensor Gauss points and edge Gauss points of every element.
AdmissibilityScan2D scan_admissibility_2d(const DGField2D& u, const Discretization2D& d);

/// Cell-mean state of the neighbor in direction (di, dj); copies the cell
/// itself across non-periodic boundaries.
State neighbor_average_2d(const DGField2D& u, const Discretization2D& d, int i, int j, int di,
                          int dj);
/// Neighbor cell index with the same boundary convention.
std::pair<int, int> neighbor_index_2d(const Discretization2D& d, int i, int j, int di, int dj);

}  // namespace dgshock
