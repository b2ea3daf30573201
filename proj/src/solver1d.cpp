#include "dgshock/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <vector>

#include "dgshock/errors.hpp"
#include "parallel.hpp"

namespace dgshock {

State llf_flux(const State& left, const State& right, const Physics1D& physics) {
  const State fl = physics.flux(left);
  const State fr = physics.flux(right);
  const double a = physics.max_wave_speed(left, right);
  State f{};
  for (int v = 0; v < physics.num_vars(); ++v) {
    f[v] = 0.5 * (fl[v] + fr[v] - a * (right[v] - left[v]));
  }
  return f;
}

namespace {

State right_trace(const DGField1D& u, const LegendreBasis& basis, int cell) {
  State s{};
  for (int v = 0; v < u.num_vars(); ++v) {
    double acc = 0.0;
    for (int l = 0; l < u.num_modes(); ++l) {
      acc += u(cell, v, l) * basis.phi_right(l);
    }
    s[v] = acc;
  }
  return s;
}

State left_trace(const DGField1D& u, const LegendreBasis& basis, int cell) {
  State s{};
  for (int v = 0; v < u.num_vars(); ++v) {
    double acc = 0.0;
    for (int l = 0; l < u.num_modes(); ++l) {
      acc += u(cell, v, l) * basis.phi_left(l);
    }
    s[v] = acc;
  }
  return s;
}

State wall_ghost(State s, const Discretization1D& d) {
  if (d.bc == Boundary::reflective && d.physics.equation == Equation::euler) {
    s[1] = -s[1];
  }
  return s;
}

}  // namespace

std::pair<State, State> interface_traces(const DGField1D& u, const Discretization1D& d,
                                         int interface) {
  const int n = u.num_cells();
  if (interface > 0 && interface < n) {
    return {right_trace(u, d.basis, interface - 1), left_trace(u, d.basis, interface)};
  }
  if (d.bc == Boundary::periodic) {
    return {right_trace(u, d.basis, n - 1), left_trace(u, d.basis, 0)};
  }
  if (interface == 0) {
    const State inner = left_trace(u, d.basis, 0);
    return {wall_ghost(inner, d), inner};
  }
  const State inner = right_trace(u, d.basis, n - 1);
  return {inner, wall_ghost(inner, d)};
}

void neighbor_modes(const DGField1D& u, const Discretization1D& d, int cell, int side, int var,
                    std::span<double> out) {
  const int n = u.num_cells();
  int nb = cell + side;
  bool ghost = false;
  if (nb < 0 || nb >= n) {
    if (d.bc == Boundary::periodic) {
      nb = (nb + n) % n;
    } else {
      nb = cell;
      ghost = true;
    }
  }
  const auto src = u.modes(nb, var);
  std::copy(src.begin(), src.end(), out.begin());
  if (ghost && var == 1 && d.bc == Boundary::reflective &&
      d.physics.equation == Equation::euler) {
    for (double& c : out) {
      c = -c;
    }
  }
}

State neighbor_average(const DGField1D& u, const Discretization1D& d, int cell, int side) {
  const int n = u.num_cells();
  const int nb = cell + side;
  if (nb >= 0 && nb < n) {
    return u.average_state(nb);
  }
  if (d.bc == Boundary::periodic) {
    return u.average_state((nb + n) % n);
  }
  return wall_ghost(u.average_state(cell), d);
}

namespace {

// Volume term plus boundary fluxes for one element, scaled by the inverse
// mass matrix 2 / dx.
void assemble_element(const DGField1D& u, const Discretization1D& d, int j, const State& f_left,
                      const State& f_right, DGField1D& out) {
  const LegendreBasis& basis = d.basis;
  const Quadrature& q = basis.quadrature();
  const int nv = u.num_vars();
  const int nm = u.num_modes();
  const double scale = 2.0 / d.mesh.dx();
  // The operator is invariant under f -> f - const; subtracting the flux of
  // the mean makes it vanish exactly on constant states.
  State mean{};
  for (int v = 0; v < nv; ++v) {
    mean[v] = u(j, v, 0) * basis.phi_left(0);
  }
  const State f_ref = d.physics.admissible(mean) ? d.physics.flux(mean) : State{};
  std::array<std::array<double, kMaxVars>, kMaxModes> acc{};
  for (int p = 0; p < q.size(); ++p) {
    State s{};
    for (int v = 0; v < nv; ++v) {
      double val = 0.0;
      for (int l = 0; l < nm; ++l) {
        val += u(j, v, l) * basis.phi_at_node(p, l);
      }
      s[v] = val;
    }
    if (!d.physics.admissible(s)) {
      throw AdmissibilityError("semidiscrete_rhs: inadmissible state in element " +
                                   std::to_string(j),
                               j);
    }
    const State f = d.physics.flux(s);
    for (int l = 0; l < nm; ++l) {
      const double wd = q.weights[p] * basis.dphi_at_node(p, l);
      for (int v = 0; v < nv; ++v) {
        acc[l][v] += wd * (f[v] - f_ref[v]);
      }
    }
  }
  for (int v = 0; v < nv; ++v) {
    for (int l = 0; l < nm; ++l) {
      out(j, v, l) =
          scale * (acc[l][v] + (f_left[v] - f_ref[v]) * basis.phi_left(l) -
                   (f_right[v] - f_ref[v]) * basis.phi_right(l));
    }
  }
}

State interface_flux(const DGField1D& u, const Discretization1D& d, int interface) {
  const auto [l, r] = interface_traces(u, d, interface);
  if (!d.physics.admissible(l) || !d.physics.admissible(r)) {
    const int cell = std::clamp(interface, 0, u.num_cells() - 1);
    throw AdmissibilityError("semidiscrete_rhs: inadmissible trace at interface " +
                                 std::to_string(interface),
                             cell);
  }
  return llf_flux(l, r, d.physics);
}

}  // namespace

void semidiscrete_rhs(const DGField1D& u, const Discretization1D& d, DGField1D& out) {
  const int n = u.num_cells();
  detail::ExceptionCollector errors;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    errors.run([&] {
      const State fl = interface_flux(u, d, j);
      const State fr = interface_flux(u, d, j + 1);
      assemble_element(u, d, j, fl, fr, out);
    });
  }
  errors.rethrow();
}

void semidiscrete_rhs_reference(const DGField1D& u, const Discretization1D& d, DGField1D& out) {
  const int n = u.num_cells();
  std::vector<State> fluxes(n + 1);
  for (int i = 0; i <= n; ++i) {
    fluxes[i] = interface_flux(u, d, i);
  }
  for (int j = 0; j < n; ++j) {
    assemble_element(u, d, j, fluxes[j], fluxes[j + 1], out);
  }
}

void ssprk3_step(DGField1D& u, double dt, const RhsFunction& rhs, const PostProcess& post) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ssprk3_step: time step must be positive");
  }
  const std::vector<double> u0 = u.data();
  DGField1D L = u;
  auto& x0 = u0;
  auto& x = u.data();
  const std::size_t size = x.size();

  // u1 = u + dt L(u)
  rhs(u, L);
  for (std::size_t i = 0; i < size; ++i) {
    x[i] = x0[i] + dt * L.data()[i];
  }
  if (post) {
    post(u);
  }
  // u2 = 3/4 u + 1/4 (u1 + dt L(u1)), written as an increment of u
  rhs(u, L);
  for (std::size_t i = 0; i < size; ++i) {
    x[i] = x0[i] + 0.25 * (x[i] + dt * L.data()[i] - x0[i]);
  }
  if (post) {
    post(u);
  }
  // u^{n+1} = 1/3 u + 2/3 (u2 + dt L(u2))
  rhs(u, L);
  for (std::size_t i = 0; i < size; ++i) {
    x[i] = x0[i] + (2.0 / 3.0) * (x[i] + dt * L.data()[i] - x0[i]);
  }
  if (post) {
    post(u);
  }
}

double stable_time_step(const DGField1D& u, const Discretization1D& d, double cfl) {
  double smax = 0.0;
  for (int j = 0; j < u.num_cells(); ++j) {
    smax = std::max(smax, d.physics.wave_speed(u.average_state(j)));
    smax = std::max(smax, d.physics.wave_speed(left_trace(u, d.basis, j)));
    smax = std::max(smax, d.physics.wave_speed(right_trace(u, d.basis, j)));
  }
  if (!(smax > 0.0)) {
    smax = 1.0;
  }
  return cfl * d.mesh.dx() / ((2.0 * d.basis.degree() + 1.0) * smax);
}

bool cell_admissible(const DGField1D& u, const Discretization1D& d, int cell) {
  const Quadrature& q = d.basis.quadrature();
  for (int p = 0; p < q.size(); ++p) {
    State s{};
    for (int v = 0; v < u.num_vars(); ++v) {
      double val = 0.0;
      for (int l = 0; l < u.num_modes(); ++l) {
        val += u(cell, v, l) * d.basis.phi_at_node(p, l);
      }
      s[v] = val;
    }
    if (!d.physics.admissible(s)) {
      return false;
    }
  }
  return d.physics.admissible(left_trace(u, d.basis, cell)) &&
         d.physics.admissible(right_trace(u, d.basis, cell));
}

std::optional<int> find_inadmissible(const DGField1D& u, const Discretization1D& d) {
  for (int j = 0; j < u.num_cells(); ++j) {
    if (!cell_admissible(u, d, j)) {
      return j;
    }
  }
  return std::nullopt;
}

AdmissibilityScan1D scan_admissibility(const DGField1D& u, const Discretization1D& d) {
  const int n = u.num_cells();
  const int nv = u.num_vars();
  const int nm = u.num_modes();
  const LegendreBasis& b = d.basis;
  const int nq = b.quadrature().size();
  const bool euler = d.physics.equation == Equation::euler;
  const double gamma = d.physics.gamma;
  double rho_min = std::numeric_limits<double>::infinity();
  double p_min = std::numeric_limits<double>::infinity();
  std::vector<std::uint8_t> bad(n, 0);
#pragma omp parallel for reduction(min : rho_min, p_min) schedule(static)
  for (int j = 0; j < n; ++j) {
    bool ok = true;
    // points 0..nq-1 are Gauss nodes, then the two endpoints
    for (int p = 0; p < nq + 2; ++p) {
      State s{};
      for (int v = 0; v < nv; ++v) {
        double val = 0.0;
        for (int l = 0; l < nm; ++l) {
          const double w = p < nq ? b.phi_at_node(p, l) : (p == nq ? b.phi_left(l) : b.phi_right(l));
          val += u(j, v, l) * w;
        }
        s[v] = val;
      }
      if (euler) {
        rho_min = std::min(rho_min, s[0]);
        if (s[0] > 0.0) {
          p_min = std::min(p_min, euler::pressure(s, gamma));
        }
      }
      ok = ok && d.physics.admissible(s);
    }
    bad[j] = ok ? 0 : 1;
  }
  AdmissibilityScan1D out;
  out.min_density = rho_min;
  out.min_pressure = p_min;
  for (int j = 0; j < n; ++j) {
    if (bad[j]) {
      out.bad.push_back(j);
    }
  }
  return out;
}

State domain_integral(const DGField1D& u) {
  State total{};
  const double dx = u.mesh().dx();
  for (int j = 0; j < u.num_cells(); ++j) {
    for (int v = 0; v < u.num_vars(); ++v) {
      total[v] += u.average(j, v) * dx;
    }
  }
  return total;
}

}  // namespace dgshock
