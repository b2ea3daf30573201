#include "dgshock/solver2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgshock/errors.hpp"
#include "parallel.hpp"

namespace dgshock {

State reflect_wall(const State& inside, Side side) {
  State g = inside;
  if (side == Side::left || side == Side::right) {
    g[1] = -g[1];
  } else {
    g[2] = -g[2];
  }
  return g;
}

State transmissive(const State& inside) { return inside; }

State llf_flux_2d(const State& left, const State& right, int axis, double gamma) {
  const State fl = euler::flux_2d(left, axis, gamma);
  const State fr = euler::flux_2d(right, axis, gamma);
  const double a =
      std::max(euler::wave_speed_2d(left, axis, gamma), euler::wave_speed_2d(right, axis, gamma));
  State f{};
  for (int v = 0; v < 4; ++v) {
    f[v] = 0.5 * (fl[v] + fr[v] - a * (right[v] - left[v]));
  }
  return f;
}

namespace {

constexpr int kMaxDegree2D = 6;
constexpr int kMaxPoints = 16;
using Row = std::array<double, kMaxPoints>;

// sum_ab u_ab ex[a] ey[b]
State eval(const DGField2D& u, int i, int j, const double* ex, const double* ey) {
  const int n = u.num_modes_1d();
  State s{};
  for (int v = 0; v < 4; ++v) {
    const auto m = u.modes(i, j, v);
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
      double inner = 0.0;
      for (int b = 0; b < n; ++b) {
        inner += m[a * n + b] * ey[b];
      }
      acc += ex[a] * inner;
    }
    s[v] = acc;
  }
  return s;
}

// Basis values on the quadrature nodes and at the endpoints.
struct Tables {
  int n = 0;
  int q = 0;
  std::vector<Row> node;   // node[p][l] = phi_l(x_p)
  std::vector<Row> dnode;  // dnode[p][l] = phi_l'(x_p)
  Row left{};
  Row right{};

  explicit Tables(const LegendreBasis& b) : n(b.size()), q(b.quadrature().size()) {
    node.resize(q);
    dnode.resize(q);
    for (int p = 0; p < q; ++p) {
      for (int l = 0; l < n; ++l) {
        node[p][l] = b.phi_at_node(p, l);
        dnode[p][l] = b.dphi_at_node(p, l);
      }
    }
    for (int l = 0; l < n; ++l) {
      left[l] = b.phi_left(l);
      right[l] = b.phi_right(l);
    }
  }
};

const Tables& tables_for(const LegendreBasis& b) {
  static const std::vector<Tables> cache = [] {
    std::vector<Tables> t;
    for (int k = 0; k <= kMaxDegree2D; ++k) {
      t.emplace_back(LegendreBasis(k));
    }
    return t;
  }();
  return cache.at(b.degree());
}

// Visits every point the admissibility test looks at; stops early when
// `visit` returns false.
template <class Visit>
bool for_each_check_point(const DGField2D& u, const Tables& tb, int i, int j, Visit&& visit) {
  for (int p = 0; p < tb.q; ++p) {
    for (int r = 0; r < tb.q; ++r) {
      if (!visit(eval(u, i, j, tb.node[p].data(), tb.node[r].data()))) return false;
    }
    const double* e = tb.node[p].data();
    if (!visit(eval(u, i, j, tb.left.data(), e)) || !visit(eval(u, i, j, tb.right.data(), e)) ||
        !visit(eval(u, i, j, e, tb.left.data())) || !visit(eval(u, i, j, e, tb.right.data()))) {
      return false;
    }
  }
  return true;
}

void require_admissible(const State& s, double gamma, int i, int j, const char* where) {
  if (!euler::admissible_2d(s, gamma)) {
    throw AdmissibilityError(std::string(where) + ": inadmissible state in element (" +
                                 std::to_string(i) + ", " + std::to_string(j) + ")",
                             -1);
  }
}

// Numerical flux at the quadrature points of the x-face x_{i-1/2} in row j
// (i = 0..nx) or the y-face y_{j-1/2} in column i (j = 0..ny).
void face_flux(const DGField2D& u, const Discretization2D& d, const Tables& tb, double t,
               int axis, int i, int j, std::vector<State>& out) {
  const int nx = u.nx();
  const int ny = u.ny();
  const Mesh2D& mesh = d.mesh;
  out.resize(tb.q);
  for (int p = 0; p < tb.q; ++p) {
    const double s = d.basis.quadrature().nodes[p];
    State minus;
    State plus;
    if (axis == 0) {
      const double* ey = tb.node[p].data();
      const bool lo = i == 0;
      const bool hi = i == nx;
      if ((lo || hi) && !d.periodic_x) {
        const double y = mesh.y().to_physical(j, s);
        if (lo) {
          plus = eval(u, 0, j, tb.left.data(), ey);
          minus = d.ghost(plus, mesh.x().a(), y, t, Side::left);
        } else {
          minus = eval(u, nx - 1, j, tb.right.data(), ey);
          plus = d.ghost(minus, mesh.x().b(), y, t, Side::right);
        }
      } else {
        const int im = (i - 1 + nx) % nx;
        const int ip = i % nx;
        minus = eval(u, im, j, tb.right.data(), ey);
        plus = eval(u, ip, j, tb.left.data(), ey);
      }
    } else {
      const double* ex = tb.node[p].data();
      const bool lo = j == 0;
      const bool hi = j == ny;
      if ((lo || hi) && !d.periodic_y) {
        const double x = mesh.x().to_physical(i, s);
        if (lo) {
          plus = eval(u, i, 0, ex, tb.left.data());
          minus = d.ghost(plus, x, mesh.y().a(), t, Side::bottom);
        } else {
          minus = eval(u, i, ny - 1, ex, tb.right.data());
          plus = d.ghost(minus, x, mesh.y().b(), t, Side::top);
        }
      } else {
        const int jm = (j - 1 + ny) % ny;
        const int jp = j % ny;
        minus = eval(u, i, jm, ex, tb.right.data());
        plus = eval(u, i, jp, ex, tb.left.data());
      }
    }
    if (!euler::admissible_2d(minus, d.gamma) || !euler::admissible_2d(plus, d.gamma)) {
      throw AdmissibilityError("semidiscrete_rhs_2d: inadmissible face trace near element (" +
                                   std::to_string(std::min(i, nx - 1)) + ", " +
                                   std::to_string(std::min(j, ny - 1)) + ")",
                               -1);
    }
    out[p] = llf_flux_2d(minus, plus, axis, d.gamma);
  }
}

struct FaceFluxes {
  const std::vector<State>* left;
  const std::vector<State>* right;
  const std::vector<State>* bottom;
  const std::vector<State>* top;
};

void assemble_element_2d(const DGField2D& u, const Discretization2D& d, const Tables& tb, int i,
                         int j, const FaceFluxes& faces, DGField2D& out) {
  const int n = tb.n;
  const int q = tb.q;
  const auto& w = d.basis.quadrature().weights;
  const double sx = 2.0 / d.mesh.dx();
  const double sy = 2.0 / d.mesh.dy();

  // Subtracting the flux of the mean makes the operator vanish exactly on
  // constant states.
  State mean{};
  for (int v = 0; v < 4; ++v) {
    mean[v] = u(i, j, v, 0, 0) * tb.left[0] * tb.left[0];
  }
  const bool ok = euler::admissible_2d(mean, d.gamma);
  const State fref = ok ? euler::flux_2d(mean, 0, d.gamma) : State{};
  const State gref = ok ? euler::flux_2d(mean, 1, d.gamma) : State{};

  std::array<std::array<double, 4>, 64> acc{};
  for (int p = 0; p < q; ++p) {
    for (int r = 0; r < q; ++r) {
      const State s = eval(u, i, j, tb.node[p].data(), tb.node[r].data());
      require_admissible(s, d.gamma, i, j, "semidiscrete_rhs_2d");
      const State F = euler::flux_2d(s, 0, d.gamma);
      const State G = euler::flux_2d(s, 1, d.gamma);
      const double ww = w[p] * w[r];
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const double cx = ww * sx * tb.dnode[p][a] * tb.node[r][b];
          const double cy = ww * sy * tb.node[p][a] * tb.dnode[r][b];
          auto& c = acc[a * n + b];
          for (int v = 0; v < 4; ++v) {
            c[v] += cx * (F[v] - fref[v]) + cy * (G[v] - gref[v]);
          }
        }
      }
    }
  }
  for (int p = 0; p < q; ++p) {
    const State& fl = (*faces.left)[p];
    const State& fr = (*faces.right)[p];
    const State& gb = (*faces.bottom)[p];
    const State& gt = (*faces.top)[p];
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        // x faces: point p runs along y; y faces: along x.
        const double cxl = sx * w[p] * tb.left[a] * tb.node[p][b];
        const double cxr = sx * w[p] * tb.right[a] * tb.node[p][b];
        const double cyb = sy * w[p] * tb.node[p][a] * tb.left[b];
        const double cyt = sy * w[p] * tb.node[p][a] * tb.right[b];
        auto& c = acc[a * n + b];
        for (int v = 0; v < 4; ++v) {
          c[v] += cxl * (fl[v] - fref[v]) - cxr * (fr[v] - fref[v]) + cyb * (gb[v] - gref[v]) -
                  cyt * (gt[v] - gref[v]);
        }
      }
    }
  }
  for (int v = 0; v < 4; ++v) {
    auto m = out.modes(i, j, v);
    for (int c = 0; c < n * n; ++c) {
      m[c] = acc[c][v];
    }
  }
}

void check_degree(const DGField2D& u) {
  if (u.degree() > kMaxDegree2D || u.num_vars() != 4) {
    throw std::invalid_argument("2D solver supports 4 variables and k <= 6");
  }
}

}  // namespace

void semidiscrete_rhs_2d(const DGField2D& u, const Discretization2D& d, double t, DGField2D& out) {
  check_degree(u);
  const Tables tb(d.basis);
  const int nx = u.nx();
  const int ny = u.ny();
  detail::ExceptionCollector errors;
#pragma omp parallel
  {
    std::vector<State> fl, fr, gb, gt;
#pragma omp for schedule(static) collapse(2)
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        errors.run([&] {
          face_flux(u, d, tb, t, 0, i, j, fl);
          face_flux(u, d, tb, t, 0, i + 1, j, fr);
          face_flux(u, d, tb, t, 1, i, j, gb);
          face_flux(u, d, tb, t, 1, i, j + 1, gt);
          assemble_element_2d(u, d, tb, i, j, {&fl, &fr, &gb, &gt}, out);
        });
      }
    }
  }
  errors.rethrow();
}

void semidiscrete_rhs_2d_reference(const DGField2D& u, const Discretization2D& d, double t,
                                   DGField2D& out) {
  check_degree(u);
  const Tables tb(d.basis);
  const int nx = u.nx();
  const int ny = u.ny();
  // x faces indexed j * (nx + 1) + i, y faces j * nx + i.
  std::vector<std::vector<State>> xf(static_cast<std::size_t>(nx + 1) * ny);
  std::vector<std::vector<State>> yf(static_cast<std::size_t>(nx) * (ny + 1));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      face_flux(u, d, tb, t, 0, i, j, xf[static_cast<std::size_t>(j) * (nx + 1) + i]);
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      face_flux(u, d, tb, t, 1, i, j, yf[static_cast<std::size_t>(j) * nx + i]);
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const FaceFluxes faces{&xf[static_cast<std::size_t>(j) * (nx + 1) + i],
                             &xf[static_cast<std::size_t>(j) * (nx + 1) + i + 1],
                             &yf[static_cast<std::size_t>(j) * nx + i],
                             &yf[static_cast<std::size_t>(j + 1) * nx + i]};
      assemble_element_2d(u, d, tb, i, j, faces, out);
    }
  }
}

void ssprk3_step_2d(DGField2D& u, double t, double dt, const RhsFunction2D& rhs,
                    const PostProcess2D& post) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ssprk3_step_2d: time step must be positive");
  }
  const std::vector<double> x0 = u.data();
  DGField2D L = u;
  auto& x = u.data();
  const std::size_t size = x.size();

  rhs(u, t, L);
  for (std::size_t i = 0; i < size; ++i) {
    x[i] = x0[i] + dt * L.data()[i];
  }
  if (post) {
    post(u, t + dt);
  }
  rhs(u, t + dt, L);
  for (std::size_t i = 0; i < size; ++i) {
    x[i] = x0[i] + 0.25 * (x[i] + dt * L.data()[i] - x0[i]);
  }
  if (post) {
    post(u, t + 0.5 * dt);
  }
  rhs(u, t + 0.5 * dt, L);
  for (std::size_t i = 0; i < size; ++i) {
    x[i] = x0[i] + (2.0 / 3.0) * (x[i] + dt * L.data()[i] - x0[i]);
  }
  if (post) {
    post(u, t + dt);
  }
}

double stable_time_step_2d(const DGField2D& u, const Discretization2D& d, double cfl) {
  const Tables tb(d.basis);
  double sx = 0.0;
  double sy = 0.0;
  const int n = u.num_modes_1d();
  std::array<double, kMaxPoints> mid{};
  for (int l = 0; l < n; ++l) {
    mid[l] = d.basis.phi(l, 0.0);
  }
#pragma omp parallel for reduction(max : sx, sy) schedule(static)
  for (int c = 0; c < u.nx() * u.ny(); ++c) {
    const int i = c % u.nx();
    const int j = c / u.nx();
    const std::array<const double*, 3> pts{tb.left.data(), mid.data(), tb.right.data()};
    for (const double* ex : pts) {
      for (const double* ey : pts) {
        const State s = eval(u, i, j, ex, ey);
        if (euler::admissible_2d(s, d.gamma)) {
          sx = std::max(sx, euler::wave_speed_2d(s, 0, d.gamma));
          sy = std::max(sy, euler::wave_speed_2d(s, 1, d.gamma));
        }
      }
    }
  }
  const double rate = sx / d.mesh.dx() + sy / d.mesh.dy();
  if (!(rate > 0.0)) {
    return cfl * std::min(d.mesh.dx(), d.mesh.dy()) / (2.0 * u.degree() + 1.0);
  }
  return cfl / ((2.0 * u.degree() + 1.0) * rate);
}

bool cell_admissible_2d(const DGField2D& u, const Discretization2D& d, int i, int j) {
  return for_each_check_point(u, tables_for(d.basis), i, j,
                              [&](const State& s) { return euler::admissible_2d(s, d.gamma); });
}

std::optional<std::pair<int, int>> find_inadmissible_2d(const DGField2D& u,
                                                        const Discretization2D& d) {
  const AdmissibilityScan2D scan = scan_admissibility_2d(u, d);
  if (scan.bad.empty()) {
    return std::nullopt;
  }
  return std::make_pair(scan.bad.front() % u.nx(), scan.bad.front() / u.nx());
}

AdmissibilityScan2D scan_admissibility_2d(const DGField2D& u, const Discretization2D& d) {
  const Tables& tb = tables_for(d.basis);
  const int nx = u.nx();
  const int count = nx * u.ny();
  std::vector<std::uint8_t> bad(count, 0);
  double rho_min = std::numeric_limits<double>::infinity();
  double p_min = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : rho_min, p_min) schedule(static)
  for (int c = 0; c < count; ++c) {
    for_each_check_point(u, tb, c % nx, c / nx, [&](const State& s) {
      rho_min = std::min(rho_min, s[0]);
      if (s[0] > 0.0) {
        p_min = std::min(p_min, euler::pressure_2d(s, d.gamma));
      }
      if (!euler::admissible_2d(s, d.gamma)) {
        bad[c] = 1;
      }
      return true;
    });
  }
  AdmissibilityScan2D out{rho_min, p_min, {}};
  for (int c = 0; c < count; ++c) {
    if (bad[c]) {
      out.bad.push_back(c);
    }
  }
  return out;
}

std::pair<int, int> neighbor_index_2d(const Discretization2D& d, int i, int j, int di, int dj) {
  const int nx = d.mesh.nx();
  const int ny = d.mesh.ny();
  int ni = i + di;
  int nj = j + dj;
  if (ni < 0 || ni >= nx) {
    ni = d.periodic_x ? (ni + nx) % nx : i;
  }
  if (nj < 0 || nj >= ny) {
    nj = d.periodic_y ? (nj + ny) % ny : j;
  }
  return {ni, nj};
}

State neighbor_average_2d(const DGField2D& u, const Discretization2D& d, int i, int j, int di,
                          int dj) {
  const auto [ni, nj] = neighbor_index_2d(d, i, j, di, dj);
  return u.average_state(ni, nj);
}

}  // namespace dgshock
