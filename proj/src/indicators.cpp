#include "dgshock/indicators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "dgshock/errors.hpp"
#include "parallel.hpp"

namespace dgshock {

std::string_view to_string(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::multiwavelet:
      return "multiwavelet";
    case IndicatorKind::kxrcf:
      return "kxrcf";
    case IndicatorKind::minmod_tvb:
      return "minmod";
  }
  return "?";
}

std::string_view to_string(ThresholdMode mode) {
  return mode == ThresholdMode::fixed ? "fixed" : "outlier";
}

IndicatorKind parse_indicator(std::string_view name) {
  if (name == "multiwavelet" || name == "mw") {
    return IndicatorKind::multiwavelet;
  }
  if (name == "kxrcf") {
    return IndicatorKind::kxrcf;
  }
  if (name == "minmod" || name == "minmod_tvb" || name == "tvb") {
    return IndicatorKind::minmod_tvb;
  }
  throw std::invalid_argument("unknown indicator '" + std::string(name) + "'");
}

ThresholdMode parse_mode(std::string_view name) {
  if (name == "fixed") {
    return ThresholdMode::fixed;
  }
  if (name == "outlier") {
    return ThresholdMode::outlier;
  }
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

double IndicatorSettings::parameter() const {
  switch (kind) {
    case IndicatorKind::multiwavelet:
      return mw_fraction;
    case IndicatorKind::kxrcf:
      return kxrcf_threshold;
    case IndicatorKind::minmod_tvb:
      return tvb_constant;
  }
  return 0.0;
}

void IndicatorSettings::set_parameter(double value) {
  switch (kind) {
    case IndicatorKind::multiwavelet:
      if (value < 0.0 || value > 1.0) {
        throw std::invalid_argument("multiwavelet fraction C must lie in [0, 1]");
      }
      mw_fraction = value;
      break;
    case IndicatorKind::kxrcf:
      kxrcf_threshold = value;
      break;
    case IndicatorKind::minmod_tvb:
      if (value < 0.0) {
        throw std::invalid_argument("TVB constant M must be non-negative");
      }
      tvb_constant = value;
      break;
  }
}

}  // namespace dgshock

namespace dgshock::indicators {

namespace {

// "Modified" test for the TVB minmod, absorbing round-off.
constexpr double kModifiedTolerance = 1e-13;

bool modified(double before, double after) {
  return std::abs(after - before) > kModifiedTolerance * std::max(1.0, std::abs(before));
}

// Characteristic projections of a field that lives in one wave family leave
// the other families at round-off level; left alone the exact quartile test
// singles out noise. Entries this far below the largest one become zero.
constexpr double kRoundoffFloor = 1e-10;

// Normal velocities this small against the local signal speed count as
// stagnant: neither side is inflow. Fluid at rest would otherwise pick its
// inflow edges by the sign of round-off.
constexpr double kStagnation = 1e-10;

// |v| + c without the admissibility checks of the flux code; traces may be
// inadmissible before limiting.
double signal_speed(const State& s, int axis, int nv, double gamma) {
  if (!(s[0] > 0.0)) {
    return std::abs(s[1 + axis]);
  }
  const double v = s[1 + axis] / s[0];
  double kinetic = 0.0;
  for (int a = 1; a < nv - 1; ++a) {
    kinetic += 0.5 * s[a] * s[a] / s[0];
  }
  const double p = (gamma - 1.0) * (s[nv - 1] - kinetic);
  return std::abs(v) + std::sqrt(std::max(0.0, gamma * p / s[0]));
}

double signal_speed_1d(const Physics1D& physics, const State& s) {
  if (physics.equation != Equation::euler) {
    return physics.wave_speed(s);
  }
  return signal_speed(s, 0, 3, physics.gamma);
}

template <class Range>
void chop_roundoff(std::vector<Range*>& groups) {
  double scale = 0.0;
  for (const Range* g : groups) {
    for (double x : *g) scale = std::max(scale, std::abs(x));
  }
  const double floor = kRoundoffFloor * scale;
  for (Range* g : groups) {
    for (double& x : *g) {
      if (std::abs(x) <= floor) x = 0.0;
    }
  }
}

const multiwavelet::AlpertBasis& alpert(int degree) {
  static const std::array<multiwavelet::AlpertBasis, multiwavelet::AlpertBasis::kMaxDegree + 1>
      bases{multiwavelet::AlpertBasis(0), multiwavelet::AlpertBasis(1),
            multiwavelet::AlpertBasis(2), multiwavelet::AlpertBasis(3)};
  if (degree < 0 || degree > multiwavelet::AlpertBasis::kMaxDegree) {
    throw std::invalid_argument("multiwavelet indicator supports k <= 3");
  }
  return bases[degree];
}

void merge(TroubledCellMask& into, const TroubledCellMask& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    into[i] |= from[i];
  }
}

}  // namespace

double minmod(std::span<const double> a) {
  if (a.empty()) {
    throw std::invalid_argument("minmod: no arguments");
  }
  const double s = a[0] > 0.0 ? 1.0 : (a[0] < 0.0 ? -1.0 : 0.0);
  if (s == 0.0) {
    return 0.0;
  }
  double m = std::abs(a[0]);
  for (double v : a.subspan(1)) {
    if (v * s <= 0.0) {
      return 0.0;
    }
    m = std::min(m, std::abs(v));
  }
  return s * m;
}

double minmod(std::initializer_list<double> a) {
  return minmod(std::span<const double>(a.begin(), a.size()));
}

double tvb_minmod(double a1, double a2, double a3, double gate) {
  if (std::abs(a1) <= gate) {
    return a1;
  }
  return minmod({a1, a2, a3});
}

TroubledCellMask flags_to_cells(Geometry geometry, std::span<const int> flagged, int num_cells,
                                bool periodic) {
  TroubledCellMask mask(num_cells, 0);
  for (int j : flagged) {
    mask[j] = 1;
    if (geometry == Geometry::interface) {
      if (j + 1 < num_cells) {
        mask[j + 1] = 1;
      } else if (periodic) {
        mask[0] = 1;
      }
    }
  }
  return mask;
}

TroubledCellMask mw_fixed(std::span<const double> top, double C, bool periodic) {
  const int n = static_cast<int>(top.size());
  double dmax = 0.0;
  for (double v : top) {
    dmax = std::max(dmax, std::abs(v));
  }
  std::vector<int> flagged;
  for (int j = 0; j < n; ++j) {
    if (std::abs(top[j]) > C * dmax) {
      flagged.push_back(j);
    }
  }
  return flags_to_cells(Geometry::interface, flagged, n, periodic);
}

KxrcfValues kxrcf(const DGField1D& u, const Discretization1D& d, int var) {
  const int n = u.num_cells();
  const int k = u.degree();
  const double h = 0.5 * d.mesh.dx();
  const double hscale = std::pow(h, 0.5 * (k + 1));
  std::vector<std::pair<State, State>> traces(n + 1);
  for (int i = 0; i <= n; ++i) {
    traces[i] = interface_traces(u, d, i);
  }
  KxrcfValues out;
  out.raw.assign(n, 0.0);
  out.normalized.assign(n, 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    const auto& [lm, lp] = traces[j];
    const auto& [rm, rp] = traces[j + 1];
    double sum = 0.0;
    int edges = 0;
    const double tol_l =
        kStagnation * std::max(signal_speed_1d(d.physics, lm), signal_speed_1d(d.physics, lp));
    const double tol_r =
        kStagnation * std::max(signal_speed_1d(d.physics, rm), signal_speed_1d(d.physics, rp));
    if (d.physics.interface_velocity(lm, lp) > tol_l) {
      sum += lp[var] - lm[var];
      ++edges;
    }
    if (d.physics.interface_velocity(rm, rp) < -tol_r) {
      sum += rm[var] - rp[var];
      ++edges;
    }
    const double I = std::abs(sum);
    const double norm = std::abs(u.average(j, var));
    out.raw[j] = I;
    out.normalized[j] = (edges == 0 || norm == 0.0) ? 0.0 : I / (hscale * edges * norm);
  }
  return out;
}

MinmodValues minmod_tvb(const DGField1D& u, const Discretization1D& d, double M,
                        bool with_mask) {
  const int n = u.num_cells();
  const int nv = u.num_vars();
  const int nm = u.num_modes();
  const LegendreBasis& basis = d.basis;
  const double gate = M * d.mesh.dx() * d.mesh.dx();

  std::vector<State> means(n);
  for (int j = 0; j < n; ++j) {
    means[j] = u.average_state(j);
  }
  // Frame of interface x_{j-1/2}, j = 0..n, between the flanking means.
  std::vector<CharFrame> frames(n + 1);
  detail::ExceptionCollector errors;
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= n; ++i) {
    errors.run([&] {
      const State left = i > 0 ? means[i - 1] : neighbor_average(u, d, 0, -1);
      const State right = i < n ? means[i] : neighbor_average(u, d, n - 1, 1);
      frames[i] = d.physics.frame(left, right);
    });
  }
  errors.rethrow();

  MinmodValues out;
  out.mask.assign(n, 0);
  out.d1.assign(nv, std::vector<double>(n));
  out.d2.assign(nv, std::vector<double>(n));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    State tilde{};
    State dtilde{};
    for (int v = 0; v < nv; ++v) {
      double t = 0.0;
      double tt = 0.0;
      for (int l = 1; l < nm; ++l) {
        t += u(j, v, l) * basis.phi_right(l);
        tt -= u(j, v, l) * basis.phi_left(l);
      }
      tilde[v] = t;
      dtilde[v] = tt;
    }
    const CharFrame& fr = frames[j + 1];
    const CharFrame& fl = frames[j];
    const State wt = fr.to_characteristic(tilde);
    const State wtt = fl.to_characteristic(dtilde);
    for (int f = 0; f < nv; ++f) {
      out.d1[f][j] = wt[f];
      out.d2[f][j] = wtt[f];
    }
    if (!with_mask) {
      continue;
    }
    const State left_mean = j > 0 ? means[j - 1] : neighbor_average(u, d, j, -1);
    const State right_mean = j + 1 < n ? means[j + 1] : neighbor_average(u, d, j, 1);
    State fwd{};
    State bwd{};
    for (int v = 0; v < nv; ++v) {
      fwd[v] = right_mean[v] - means[j][v];
      bwd[v] = means[j][v] - left_mean[v];
    }
    const State wf_r = fr.to_characteristic(fwd);
    const State wb_r = fr.to_characteristic(bwd);
    const State wf_l = fl.to_characteristic(fwd);
    const State wb_l = fl.to_characteristic(bwd);
    bool flag = false;
    for (int f = 0; f < nv; ++f) {
      flag = flag || modified(wt[f], tvb_minmod(wt[f], wf_r[f], wb_r[f], gate)) ||
             modified(wtt[f], tvb_minmod(wtt[f], wf_l[f], wb_l[f], gate));
    }
    out.mask[j] = flag ? 1 : 0;
  }
  std::vector<std::vector<double>*> groups;
  for (int f = 0; f < nv; ++f) {
    groups.push_back(&out.d1[f]);
    groups.push_back(&out.d2[f]);
  }
  chop_roundoff(groups);
  return out;
}

std::vector<int> default_variables(IndicatorKind kind, const Physics1D& physics) {
  if (physics.equation != Equation::euler) {
    return {0};
  }
  return kind == IndicatorKind::kxrcf ? std::vector<int>{0, 2} : std::vector<int>{0};
}

std::string variable_name(const Physics1D& physics, int var) {
  if (physics.equation != Equation::euler) {
    return "u";
  }
  static const char* names[] = {"density", "momentum", "energy"};
  return names[var];
}

namespace {

std::vector<int> variables_for(IndicatorKind kind, const Physics1D& physics,
                               const IndicatorSettings& settings) {
  auto vars = settings.variables.empty() ? default_variables(kind, physics) : settings.variables;
  for (int v : vars) {
    if (v < 0 || v >= physics.num_vars()) {
      throw std::invalid_argument("indicator variable index out of range");
    }
  }
  return vars;
}

}  // namespace

std::vector<IndicationVector> indication_vectors(IndicatorKind kind, const DGField1D& u,
                                                 const Discretization1D& d,
                                                 const IndicatorSettings& settings) {
  std::vector<IndicationVector> out;
  const bool periodic = d.bc == Boundary::periodic;
  switch (kind) {
    case IndicatorKind::multiwavelet:
      for (int v : variables_for(kind, d.physics, settings)) {
        const auto coeffs =
            multiwavelet::level_coefficients_1d(u, v, alpert(u.degree()), periodic);
        out.push_back({coeffs.top(), Geometry::interface, variable_name(d.physics, v)});
      }
      break;
    case IndicatorKind::kxrcf:
      for (int v : variables_for(kind, d.physics, settings)) {
        out.push_back({kxrcf(u, d, v).raw, Geometry::element, variable_name(d.physics, v)});
      }
      break;
    case IndicatorKind::minmod_tvb: {
      // the TVB test itself is not needed here
      auto mm = minmod_tvb(u, d, settings.tvb_constant, false);
      for (int f = 0; f < u.num_vars(); ++f) {
        const std::string name = "characteristic" + std::to_string(f);
        out.push_back({std::move(mm.d1[f]), Geometry::element, name + ":right"});
        out.push_back({std::move(mm.d2[f]), Geometry::element, name + ":left"});
      }
      break;
    }
  }
  return out;
}

TroubledCellMask detect_vectors(const std::vector<IndicationVector>& vectors, int num_cells,
                                bool periodic, const outlier::DetectorOptions& options) {
  TroubledCellMask mask(num_cells, 0);
  for (const auto& vec : vectors) {
    const auto flagged = outlier::detect_1d(vec.values, options);
    merge(mask, flags_to_cells(vec.geometry, flagged, num_cells, periodic));
  }
  return mask;
}

TroubledCellMask fixed_mask(const DGField1D& u, const Discretization1D& d,
                            const IndicatorSettings& settings) {
  const int n = u.num_cells();
  const bool periodic = d.bc == Boundary::periodic;
  TroubledCellMask mask(n, 0);
  switch (settings.kind) {
    case IndicatorKind::multiwavelet:
      for (int v : variables_for(settings.kind, d.physics, settings)) {
        const auto coeffs =
            multiwavelet::level_coefficients_1d(u, v, alpert(u.degree()), periodic);
        merge(mask, mw_fixed(coeffs.top(), settings.mw_fraction, periodic));
      }
      break;
    case IndicatorKind::kxrcf:
      for (int v : variables_for(settings.kind, d.physics, settings)) {
        const auto values = kxrcf(u, d, v);
        for (int j = 0; j < n; ++j) {
          if (values.normalized[j] > settings.kxrcf_threshold) {
            mask[j] = 1;
          }
        }
      }
      break;
    case IndicatorKind::minmod_tvb:
      mask = minmod_tvb(u, d, settings.tvb_constant).mask;
      break;
  }
  return mask;
}

TroubledCellMask indicate(const DGField1D& u, const Discretization1D& d,
                          const IndicatorSettings& settings) {
  if (settings.mode == ThresholdMode::fixed) {
    return fixed_mask(u, d, settings);
  }
  return detect_vectors(indication_vectors(settings.kind, u, d, settings), u.num_cells(),
                        d.bc == Boundary::periodic, settings.detector);
}

// ---------------------------------------------------------------- 2D ------

void mark_mode_cells(multiwavelet::Mode mode, const outlier::Mask2D& flags, int nx, int ny,
                     bool periodic_x, bool periodic_y, TroubledCellMask& mask) {
  auto mark = [&](int i, int j) {
    if (i >= nx) {
      if (!periodic_x) return;
      i -= nx;
    }
    if (j >= ny) {
      if (!periodic_y) return;
      j -= ny;
    }
    mask[static_cast<std::size_t>(j) * nx + i] = 1;
  };
  switch (mode) {
    case multiwavelet::Mode::alpha:
      // entry (i, j): x-pair (2i, 2i+1) across y_{j+1/2}
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx / 2; ++i) {
          if (flags[static_cast<std::size_t>(j) * (nx / 2) + i]) {
            mark(2 * i, j);
            mark(2 * i + 1, j);
            mark(2 * i, j + 1);
            mark(2 * i + 1, j + 1);
          }
        }
      }
      break;
    case multiwavelet::Mode::beta:
      // entry (i, j): y-pair (2j, 2j+1) across x_{i+1/2}
      for (int j = 0; j < ny / 2; ++j) {
        for (int i = 0; i < nx; ++i) {
          if (flags[static_cast<std::size_t>(j) * nx + i]) {
            mark(i, 2 * j);
            mark(i, 2 * j + 1);
            mark(i + 1, 2 * j);
            mark(i + 1, 2 * j + 1);
          }
        }
      }
      break;
    case multiwavelet::Mode::gamma:
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          if (flags[static_cast<std::size_t>(j) * nx + i]) {
            mark(i, j);
            mark(i + 1, j);
            mark(i, j + 1);
            mark(i + 1, j + 1);
          }
        }
      }
      break;
  }
}

namespace {

outlier::Mask2D threshold(const outlier::IndicationMatrix& m, double C) {
  double dmax = 0.0;
  for (int j = 0; j < m.ny(); ++j) {
    for (int i = 0; i < m.nx(); ++i) {
      dmax = std::max(dmax, std::abs(m(i, j)));
    }
  }
  outlier::Mask2D flags(static_cast<std::size_t>(m.nx()) * m.ny(), 0);
  for (int j = 0; j < m.ny(); ++j) {
    for (int i = 0; i < m.nx(); ++i) {
      flags[static_cast<std::size_t>(j) * m.nx() + i] = std::abs(m(i, j)) > C * dmax;
    }
  }
  return flags;
}

}  // namespace

TroubledCellMask mw_fixed_2d(const outlier::IndicationMatrix& alpha,
                             const outlier::IndicationMatrix& beta,
                             const outlier::IndicationMatrix& gamma, double C, int nx, int ny,
                             bool periodic_x, bool periodic_y) {
  TroubledCellMask mask(static_cast<std::size_t>(nx) * ny, 0);
  mark_mode_cells(multiwavelet::Mode::alpha, threshold(alpha, C), nx, ny, periodic_x, periodic_y,
                  mask);
  mark_mode_cells(multiwavelet::Mode::beta, threshold(beta, C), nx, ny, periodic_x, periodic_y,
                  mask);
  mark_mode_cells(multiwavelet::Mode::gamma, threshold(gamma, C), nx, ny, periodic_x, periodic_y,
                  mask);
  return mask;
}

namespace {

// Trace of cell (i, j) on `side` at edge parameter s in [-1, 1].
State edge_trace(const DGField2D& u, const LegendreBasis& basis, int i, int j, Side side,
                 double s) {
  switch (side) {
    case Side::left:
      return u.value(basis, i, j, -1.0, s);
    case Side::right:
      return u.value(basis, i, j, 1.0, s);
    case Side::bottom:
      return u.value(basis, i, j, s, -1.0);
    case Side::top:
      break;
  }
  return u.value(basis, i, j, s, 1.0);
}

Side opposite(Side s) {
  switch (s) {
    case Side::left:
      return Side::right;
    case Side::right:
      return Side::left;
    case Side::bottom:
      return Side::top;
    case Side::top:
      break;
  }
  return Side::bottom;
}

// Density-weighted velocity component normal to the edge.
double roe_velocity(const State& a, const State& b, int axis) {
  if (a[0] > 0.0 && b[0] > 0.0) {
    const double wa = std::sqrt(a[0]);
    const double wb = std::sqrt(b[0]);
    return (a[1 + axis] / wa + b[1 + axis] / wb) / (wa + wb);
  }
  return a[1 + axis] + b[1 + axis];
}

}  // namespace

Kxrcf2DValues kxrcf_2d(const DGField2D& u, const Discretization2D& d, double t, int var) {
  const int nx = u.nx();
  const int ny = u.ny();
  const int k = u.degree();
  const LegendreBasis& basis = d.basis;
  const Quadrature& q = basis.quadrature();
  const double dx = d.mesh.dx();
  const double dy = d.mesh.dy();
  const double h = 0.5 * std::hypot(dx, dy);
  const double hscale = std::pow(h, 0.5 * (k + 1));
  Kxrcf2DValues out{outlier::IndicationMatrix(nx, ny), outlier::IndicationMatrix(nx, ny)};

  constexpr std::array<Side, 4> sides{Side::left, Side::right, Side::bottom, Side::top};
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double sum = 0.0;
      double measure = 0.0;
      for (Side side : sides) {
        const int axis = (side == Side::left || side == Side::right) ? 0 : 1;
        const int di = side == Side::left ? -1 : (side == Side::right ? 1 : 0);
        const int dj = side == Side::bottom ? -1 : (side == Side::top ? 1 : 0);
        const bool outward_positive = side == Side::right || side == Side::top;
        const int ni = i + di;
        const int nj = j + dj;
        const bool inside_x = ni >= 0 && ni < nx;
        const bool inside_y = nj >= 0 && nj < ny;
        const bool wrap = (!inside_x && d.periodic_x) || (!inside_y && d.periodic_y);
        const bool boundary = !(inside_x && inside_y) && !wrap;
        const double length = axis == 0 ? dy : dx;
        double velocity = 0.0;
        double signal = 0.0;
        double jump = 0.0;
        for (int p = 0; p < q.size(); ++p) {
          const double s = q.nodes[p];
          const State own = edge_trace(u, basis, i, j, side, s);
          State other;
          if (boundary) {
            const double x = axis == 0 ? (side == Side::left ? d.mesh.x().boundary(i)
                                                             : d.mesh.x().boundary(i + 1))
                                       : d.mesh.x().to_physical(i, s);
            const double y = axis == 1 ? (side == Side::bottom ? d.mesh.y().boundary(j)
                                                               : d.mesh.y().boundary(j + 1))
                                       : d.mesh.y().to_physical(j, s);
            other = d.ghost(own, x, y, t, side);
          } else {
            const int wi = (ni + nx) % nx;
            const int wj = (nj + ny) % ny;
            other = edge_trace(u, basis, wi, wj, opposite(side), s);
          }
          velocity += q.weights[p] * roe_velocity(own, other, axis);
          signal += q.weights[p] * signal_speed(own, axis, 4, d.gamma);
          jump += q.weights[p] * 0.5 * length * (own[var] - other[var]);
        }
        // Inflow: normal velocity points into the element.
        const double tol = kStagnation * signal;
        const bool inflow = outward_positive ? velocity < -tol : velocity > tol;
        if (inflow) {
          sum += jump;
          measure += length;
        }
      }
      double norm = 0.0;
      for (int p = 0; p < q.size(); ++p) {
        for (int r = 0; r < q.size(); ++r) {
          norm = std::max(norm, std::abs(u.value(basis, i, j, q.nodes[p], q.nodes[r])[var]));
        }
      }
      const double I = std::abs(sum);
      out.raw(i, j) = I;
      out.normalized(i, j) = (measure == 0.0 || norm == 0.0) ? 0.0 : I / (hscale * measure * norm);
    }
  }
  return out;
}

Minmod2DValues minmod_tvb_2d(const DGField2D& u, const Discretization2D& d, double M) {
  const int nx = u.nx();
  const int ny = u.ny();
  const int nm = u.num_modes_1d();
  const LegendreBasis& basis = d.basis;
  const double phi0 = basis.phi_left(0);
  const double gate_x = M * d.mesh.dx() * d.mesh.dx();
  const double gate_y = M * d.mesh.dy() * d.mesh.dy();

  Minmod2DValues out;
  out.mask.assign(static_cast<std::size_t>(nx) * ny, 0);
  for (int f = 0; f < 4; ++f) {
    out.x_slopes.emplace_back(nx, ny);
    out.y_slopes.emplace_back(nx, ny);
  }
  detail::ExceptionCollector errors;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      errors.run([&] {
        const State mean = u.average_state(i, j);
        bool flag = false;
        for (int axis = 0; axis < 2; ++axis) {
          const int di = axis == 0 ? 1 : 0;
          const int dj = axis == 0 ? 0 : 1;
          const State next = neighbor_average_2d(u, d, i, j, di, dj);
          const State prev = neighbor_average_2d(u, d, i, j, -di, -dj);
          State slope{};
          State tilde{};
          State dtilde{};
          State fwd{};
          State bwd{};
          for (int v = 0; v < 4; ++v) {
            slope[v] = axis == 0 ? u(i, j, v, 1, 0) : u(i, j, v, 0, 1);
            double t = 0.0;
            double tt = 0.0;
            for (int a = 1; a < nm; ++a) {
              const double c = axis == 0 ? u(i, j, v, a, 0) : u(i, j, v, 0, a);
              t += c * basis.phi_right(a);
              tt -= c * basis.phi_left(a);
            }
            tilde[v] = phi0 * t;
            dtilde[v] = phi0 * tt;
            fwd[v] = next[v] - mean[v];
            bwd[v] = mean[v] - prev[v];
          }
          const CharFrame own = euler::roe_decomposition_2d(mean, mean, axis, d.gamma).frame;
          const CharFrame fr = euler::roe_decomposition_2d(mean, next, axis, d.gamma).frame;
          const CharFrame fl = euler::roe_decomposition_2d(prev, mean, axis, d.gamma).frame;
          const State w = own.to_characteristic(slope);
          const State wt = fr.to_characteristic(tilde);
          const State wf_r = fr.to_characteristic(fwd);
          const State wb_r = fr.to_characteristic(bwd);
          const State wtt = fl.to_characteristic(dtilde);
          const State wf_l = fl.to_characteristic(fwd);
          const State wb_l = fl.to_characteristic(bwd);
          const double gate = axis == 0 ? gate_x : gate_y;
          for (int f = 0; f < 4; ++f) {
            (axis == 0 ? out.x_slopes : out.y_slopes)[f](i, j) = w[f];
            flag = flag || modified(wt[f], tvb_minmod(wt[f], wf_r[f], wb_r[f], gate)) ||
                   modified(wtt[f], tvb_minmod(wtt[f], wf_l[f], wb_l[f], gate));
          }
        }
        out.mask[static_cast<std::size_t>(j) * nx + i] = flag ? 1 : 0;
      });
    }
  }
  errors.rethrow();
  std::vector<outlier::IndicationMatrix*> groups;
  for (int f = 0; f < 4; ++f) {
    groups.push_back(&out.x_slopes[f]);
    groups.push_back(&out.y_slopes[f]);
  }
  chop_roundoff(groups);
  return out;
}

namespace {

std::vector<int> variables_2d(IndicatorKind kind, const IndicatorSettings& settings) {
  if (!settings.variables.empty()) {
    for (int v : settings.variables) {
      if (v < 0 || v >= 4) {
        throw std::invalid_argument("indicator variable index out of range");
      }
    }
    return settings.variables;
  }
  return kind == IndicatorKind::kxrcf ? std::vector<int>{0, 3} : std::vector<int>{0};
}

void merge_mask(TroubledCellMask& into, const outlier::Mask2D& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    into[i] |= from[i];
  }
}

}  // namespace

TroubledCellMask indicate_2d(const DGField2D& u, const Discretization2D& d, double t,
                             const IndicatorSettings& settings) {
  const int nx = u.nx();
  const int ny = u.ny();
  const bool px = d.periodic_x;
  const bool py = d.periodic_y;
  const bool fixed = settings.mode == ThresholdMode::fixed;
  const auto& opt = settings.detector;
  TroubledCellMask mask(static_cast<std::size_t>(nx) * ny, 0);
  switch (settings.kind) {
    case IndicatorKind::multiwavelet: {
      const auto& basis = alpert(u.degree());
      for (int v : variables_2d(settings.kind, settings)) {
        using multiwavelet::Mode;
        auto alpha = multiwavelet::mode_coefficients_2d(u, v, basis, Mode::alpha, px, py);
        auto beta = multiwavelet::mode_coefficients_2d(u, v, basis, Mode::beta, px, py);
        if (fixed) {
          const auto gamma = multiwavelet::mode_coefficients_2d(u, v, basis, Mode::gamma, px, py);
          merge_mask(mask, mw_fixed_2d(alpha, beta, gamma, settings.mw_fraction, nx, ny, px, py));
        } else {
          // one scale for both modes: a flow without y structure leaves only noise in alpha
          std::vector<outlier::IndicationMatrix*> modes{&alpha, &beta};
          chop_roundoff(modes);
          mark_mode_cells(Mode::alpha, outlier::detect_2d(alpha, outlier::Axis::y, opt), nx, ny,
                          px, py, mask);
          mark_mode_cells(Mode::beta, outlier::detect_2d(beta, outlier::Axis::x, opt), nx, ny, px,
                          py, mask);
        }
      }
      break;
    }
    case IndicatorKind::kxrcf:
      for (int v : variables_2d(settings.kind, settings)) {
        const auto values = kxrcf_2d(u, d, t, v);
        if (fixed) {
          for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
              if (values.normalized(i, j) > settings.kxrcf_threshold) {
                mask[static_cast<std::size_t>(j) * nx + i] = 1;
              }
            }
          }
        } else {
          merge_mask(mask, outlier::detect_2d(values.raw, outlier::Axis::x, opt));
          merge_mask(mask, outlier::detect_2d(values.raw, outlier::Axis::y, opt));
        }
      }
      break;
    case IndicatorKind::minmod_tvb: {
      const auto values = minmod_tvb_2d(u, d, settings.tvb_constant);
      if (fixed) {
        mask = values.mask;
      } else {
        for (int f = 0; f < 4; ++f) {
          merge_mask(mask, outlier::detect_2d(values.x_slopes[f], outlier::Axis::x, opt));
          merge_mask(mask, outlier::detect_2d(values.y_slopes[f], outlier::Axis::y, opt));
        }
      }
      break;
    }
  }
  return mask;
}

}  // namespace dgshock::indicators
