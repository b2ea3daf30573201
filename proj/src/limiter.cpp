#include "dgshock/limiter.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dgshock/errors.hpp"
#include "parallel.hpp"

namespace dgshock::limiter {

double beta(int l) { return std::sqrt(l - 0.5) / std::sqrt(l + 0.5); }

namespace {

// minmod(a, b, c) plus whether the first argument was returned unchanged.
struct Limited {
  double value;
  bool kept;
};

Limited minmod3(double a, double b, double c) {
  if ((a > 0.0 && b > 0.0 && c > 0.0) || (a < 0.0 && b < 0.0 && c < 0.0)) {
    const double m = std::min({std::abs(a), std::abs(b), std::abs(c)});
    if (m == std::abs(a)) {
      return {a, true};
    }
    return {std::copysign(m, a), false};
  }
  return {0.0, a == 0.0};
}

Limited minmod4(double a, double b, double c, double e) {
  const Limited first = minmod3(a, b, c);
  if (first.value == 0.0) {
    return first;
  }
  if ((first.value > 0.0) != (e > 0.0) || e == 0.0) {
    return {0.0, false};
  }
  if (std::abs(e) < std::abs(first.value)) {
    return {e, false};
  }
  return first;
}

// Coefficients of one cell as states: [l][var]; modes past the degree stay zero.
using Modes1D = std::array<State, kMaxModes>;

Modes1D gather(const DGField1D& u, const Discretization1D& d, int cell, int side) {
  const int nm = u.num_modes();
  Modes1D m{};
  std::array<double, kMaxModes> buf{};
  for (int v = 0; v < u.num_vars(); ++v) {
    std::span<double> out(buf.data(), nm);
    if (side == 0) {
      const auto src = u.modes(cell, v);
      std::copy(src.begin(), src.end(), out.begin());
    } else {
      neighbor_modes(u, d, cell, side, v, out);
    }
    for (int l = 0; l < nm; ++l) {
      m[l][v] = buf[l];
    }
  }
  return m;
}

void to_characteristic(const CharFrame& f, Modes1D& m, int nm) {
  for (int l = 0; l < nm; ++l) {
    m[l] = f.to_characteristic(m[l]);
  }
}

struct CellOutcome {
  bool modified = false;
  bool fallback = false;
};

// Limit cell j of `src` into `dst`; neighbors are read from `src`.
CellOutcome limit_cell(const DGField1D& src, const Discretization1D& d, int j, DGField1D& dst) {
  const int nv = src.num_vars();
  const int nm = src.num_modes();
  const CharFrame frame =
      d.physics.frame(neighbor_average(src, d, j, -1), neighbor_average(src, d, j, 1));
  Modes1D own = gather(src, d, j, 0);
  Modes1D left = gather(src, d, j, -1);
  Modes1D right = gather(src, d, j, 1);
  to_characteristic(frame, own, nm);
  to_characteristic(frame, left, nm);
  to_characteristic(frame, right, nm);

  CellOutcome outcome;
  std::array<double, kMaxModes> w{};
  std::array<double, kMaxModes> wl{};
  std::array<double, kMaxModes> wr{};
  for (int f = 0; f < nv; ++f) {
    for (int l = 0; l < nm; ++l) {
      w[l] = own[l][f];
      wl[l] = left[l][f];
      wr[l] = right[l][f];
    }
    if (moment_limit_cell(std::span<double>(w.data(), nm), std::span<const double>(wl.data(), nm),
                          std::span<const double>(wr.data(), nm))) {
      outcome.modified = true;
      for (int l = 1; l < nm; ++l) {
        own[l][f] = w[l];
      }
    }
  }
  if (outcome.modified) {
    for (int l = 1; l < nm; ++l) {
      const State c = frame.from_characteristic(own[l]);
      for (int v = 0; v < nv; ++v) {
        dst(j, v, l) = c[v];
      }
    }
  }
  if (cell_admissible(dst, d, j)) {
    return outcome;
  }

  // Positivity fallback: drop the quadratic and higher modes, re-limit the slope.
  outcome.fallback = true;
  outcome.modified = true;
  for (int v = 0; v < nv; ++v) {
    for (int l = 2; l < nm; ++l) {
      dst(j, v, l) = 0.0;
    }
  }
  if (nm > 1) {
    State u1{};
    for (int v = 0; v < nv; ++v) {
      u1[v] = dst(j, v, 1);
    }
    State w1 = frame.to_characteristic(u1);
    bool changed = false;
    for (int f = 0; f < nv; ++f) {
      const double b = beta(1);
      const Limited r =
          minmod3(w1[f], b * (right[0][f] - own[0][f]), b * (own[0][f] - left[0][f]));
      if (!r.kept) {
        w1[f] = r.value;
        changed = true;
      }
    }
    if (changed) {
      const State c = frame.from_characteristic(w1);
      for (int v = 0; v < nv; ++v) {
        dst(j, v, 1) = c[v];
      }
    }
    if (!cell_admissible(dst, d, j)) {
      for (int v = 0; v < nv; ++v) {
        dst(j, v, 1) = 0.0;
      }
    }
  }
  if (!cell_admissible(dst, d, j)) {
    throw AdmissibilityError("limiter: cell mean of element " + std::to_string(j) +
                                 " is not admissible",
                             j);
  }
  return outcome;
}

}  // namespace

bool moment_limit_cell(std::span<double> u, std::span<const double> left,
                       std::span<const double> right) {
  const int k = static_cast<int>(u.size()) - 1;
  bool changed = false;
  for (int l = k; l >= 1; --l) {
    const double b = beta(l);
    const Limited r = minmod3(u[l], b * (right[l - 1] - u[l - 1]), b * (u[l - 1] - left[l - 1]));
    if (r.kept) {
      break;
    }
    u[l] = r.value;
    changed = true;
  }
  return changed;
}

LimiterReport limit_flagged(DGField1D& u, const Discretization1D& d, const TroubledCellMask& mask) {
  if (static_cast<int>(mask.size()) != u.num_cells()) {
    throw std::invalid_argument("limit_flagged: mask size does not match the mesh");
  }
  std::vector<int> cells;
  for (int j = 0; j < u.num_cells(); ++j) {
    if (mask[j]) {
      cells.push_back(j);
    }
  }
  LimiterReport report;
  report.flagged = static_cast<int>(cells.size());
  if (cells.empty()) {
    return report;
  }
  const DGField1D snapshot = u;
  const int count = static_cast<int>(cells.size());
  std::vector<CellOutcome> outcomes(count);
  detail::ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic, 16)
  for (int c = 0; c < count; ++c) {
    errors.run([&] { outcomes[c] = limit_cell(snapshot, d, cells[c], u); });
  }
  errors.rethrow();
  for (const auto& o : outcomes) {
    report.modified += o.modified;
    report.fallbacks += o.fallback;
  }
  return report;
}

LimiterReport limit_flagged_reference(DGField1D& u, const Discretization1D& d,
                                      const TroubledCellMask& mask) {
  if (static_cast<int>(mask.size()) != u.num_cells()) {
    throw std::invalid_argument("limit_flagged: mask size does not match the mesh");
  }
  const DGField1D snapshot = u;
  LimiterReport report;
  for (int j = 0; j < u.num_cells(); ++j) {
    if (!mask[j]) {
      continue;
    }
    ++report.flagged;
    const CellOutcome o = limit_cell(snapshot, d, j, u);
    report.modified += o.modified;
    report.fallbacks += o.fallback;
  }
  return report;
}

// ---------------------------------------------------------------- 2D ------

namespace {

// Q^k coefficients of one cell as states, index a * (k + 1) + b.
using Modes2D = std::vector<State>;

struct Neighborhood {
  Modes2D own, left, right, bottom, top;
};

// Ring-by-ring moment limiter in characteristic frames fx (x differences)
// and fy (y differences). Returns true when a coefficient changed.
bool cascade_2d(Modes2D& u, const Neighborhood& nb, const CharFrame& fx, const CharFrame& fy,
                int k, int nv) {
  const int n = k + 1;
  auto at = [n](const Modes2D& m, int a, int b) -> const State& { return m[a * n + b]; };
  auto diff = [nv](const State& p, const State& q) {
    State r{};
    for (int v = 0; v < nv; ++v) {
      r[v] = p[v] - q[v];
    }
    return r;
  };
  bool any = false;
  for (int m = k; m >= 1; --m) {
    std::vector<std::pair<int, int>> ring{{m, m}};
    for (int i = m - 1; i >= 0; --i) {
      ring.emplace_back(m, i);
      ring.emplace_back(i, m);
    }
    bool ring_changed = false;
    for (const auto& [a, b] : ring) {
      const State current = at(u, a, b);
      // y-direction candidate
      State uy = current;
      bool y_changed = false;
      if (b >= 1) {
        const State w = fy.to_characteristic(current);
        const State dp = fy.to_characteristic(diff(at(nb.top, a, b - 1), at(u, a, b - 1)));
        const State dm = fy.to_characteristic(diff(at(u, a, b - 1), at(nb.bottom, a, b - 1)));
        State lim = w;
        for (int f = 0; f < nv; ++f) {
          const Limited r = minmod3(w[f], beta(b) * dp[f], beta(b) * dm[f]);
          if (!r.kept) {
            lim[f] = r.value;
            y_changed = true;
          }
        }
        if (y_changed) {
          uy = fy.from_characteristic(lim);
        }
      }
      State result = uy;
      bool changed = y_changed;
      if (a >= 1) {
        changed = false;
        const State w = fx.to_characteristic(current);
        const State dp = fx.to_characteristic(diff(at(nb.right, a - 1, b), at(u, a - 1, b)));
        const State dm = fx.to_characteristic(diff(at(u, a - 1, b), at(nb.left, a - 1, b)));
        const State wy = fx.to_characteristic(uy);
        State lim = w;
        for (int f = 0; f < nv; ++f) {
          const Limited r = y_changed ? minmod4(w[f], beta(a) * dp[f], beta(a) * dm[f], wy[f])
                                      : minmod3(w[f], beta(a) * dp[f], beta(a) * dm[f]);
          if (!r.kept) {
            lim[f] = r.value;
            changed = true;
          }
        }
        result = changed ? fx.from_characteristic(lim) : current;
      }
      if (changed) {
        u[a * n + b] = result;
        ring_changed = true;
      }
    }
    if (!ring_changed) {
      break;
    }
    any = true;
  }
  return any;
}

Modes2D gather_2d(const DGField2D& u, int i, int j) {
  const int nm = u.num_modes();
  Modes2D m(nm, State{});
  for (int v = 0; v < u.num_vars(); ++v) {
    const auto src = u.modes(i, j, v);
    for (int c = 0; c < nm; ++c) {
      m[c][v] = src[c];
    }
  }
  return m;
}

CellOutcome limit_cell_2d(const DGField2D& src, const Discretization2D& d, int i, int j,
                          DGField2D& dst) {
  const int k = src.degree();
  const int n = k + 1;
  const int nv = src.num_vars();
  Neighborhood nb;
  nb.own = gather_2d(src, i, j);
  auto fetch = [&](int di, int dj) {
    const auto [ni, nj] = neighbor_index_2d(d, i, j, di, dj);
    return gather_2d(src, ni, nj);
  };
  nb.left = fetch(-1, 0);
  nb.right = fetch(1, 0);
  nb.bottom = fetch(0, -1);
  nb.top = fetch(0, 1);
  const State mean_l = neighbor_average_2d(src, d, i, j, -1, 0);
  const State mean_r = neighbor_average_2d(src, d, i, j, 1, 0);
  const State mean_b = neighbor_average_2d(src, d, i, j, 0, -1);
  const State mean_t = neighbor_average_2d(src, d, i, j, 0, 1);
  const CharFrame fx = euler::roe_decomposition_2d(mean_l, mean_r, 0, d.gamma).frame;
  const CharFrame fy = euler::roe_decomposition_2d(mean_b, mean_t, 1, d.gamma).frame;

  CellOutcome outcome;
  Modes2D u = nb.own;
  if (cascade_2d(u, nb, fx, fy, k, nv)) {
    outcome.modified = true;
    for (int v = 0; v < nv; ++v) {
      auto out = dst.modes(i, j, v);
      for (int c = 1; c < n * n; ++c) {
        out[c] = u[c][v];
      }
    }
  }
  if (cell_admissible_2d(dst, d, i, j)) {
    return outcome;
  }
  outcome.fallback = true;
  outcome.modified = true;
  // Keep only the linear modes and limit them against the neighbor means.
  if (k >= 1) {
    // Degree-1 layout: (0,0), (0,1), (1,0), (1,1).
    auto linear = [&](const Modes2D& m, bool slopes) {
      Modes2D r(4, State{});
      r[0] = m[0];
      if (slopes) {
        r[1] = m[1];
        r[2] = m[n];
      }
      return r;
    };
    Modes2D small = linear(u, true);
    const Neighborhood means{linear(nb.own, false), linear(nb.left, false),
                             linear(nb.right, false), linear(nb.bottom, false),
                             linear(nb.top, false)};
    cascade_2d(small, means, fx, fy, 1, nv);
    for (int v = 0; v < nv; ++v) {
      auto out = dst.modes(i, j, v);
      for (int c = 1; c < n * n; ++c) {
        out[c] = 0.0;
      }
      out[1] = small[1][v];
      out[n] = small[2][v];
    }
    if (!cell_admissible_2d(dst, d, i, j)) {
      for (int v = 0; v < nv; ++v) {
        auto out = dst.modes(i, j, v);
        out[1] = 0.0;
        out[n] = 0.0;
      }
    }
  }
  if (!cell_admissible_2d(dst, d, i, j)) {
    throw AdmissibilityError("limiter: cell mean of element (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ") is not admissible",
                             d.mesh.index(i, j));
  }
  return outcome;
}

}  // namespace

bool moment_limit_2d(std::span<double> u, std::span<const double> left,
                     std::span<const double> right, std::span<const double> bottom,
                     std::span<const double> top, int degree) {
  const int n = degree + 1;
  auto load = [n](std::span<const double> s) {
    Modes2D m(n * n, State{});
    for (int c = 0; c < n * n; ++c) {
      m[c][0] = s[c];
    }
    return m;
  };
  Modes2D own = load(u);
  const Neighborhood nb{own, load(left), load(right), load(bottom), load(top)};
  const CharFrame id = CharFrame::identity(1);
  const bool changed = cascade_2d(own, nb, id, id, degree, 1);
  for (int c = 1; c < n * n; ++c) {
    u[c] = own[c][0];
  }
  return changed;
}

LimiterReport limit_flagged_2d(DGField2D& u, const Discretization2D& d,
                               const TroubledCellMask& mask) {
  const int nx = u.nx();
  const int ny = u.ny();
  if (mask.size() != static_cast<std::size_t>(nx) * ny) {
    throw std::invalid_argument("limit_flagged_2d: mask size does not match the mesh");
  }
  std::vector<int> cells;
  for (int c = 0; c < nx * ny; ++c) {
    if (mask[c]) {
      cells.push_back(c);
    }
  }
  LimiterReport report;
  report.flagged = static_cast<int>(cells.size());
  if (cells.empty()) {
    return report;
  }
  const DGField2D snapshot = u;
  const int count = static_cast<int>(cells.size());
  std::vector<CellOutcome> outcomes(count);
  detail::ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic, 16)
  for (int c = 0; c < count; ++c) {
    errors.run([&] {
      outcomes[c] = limit_cell_2d(snapshot, d, cells[c] % nx, cells[c] / nx, u);
    });
  }
  errors.rethrow();
  for (const auto& o : outcomes) {
    report.modified += o.modified;
    report.fallbacks += o.fallback;
  }
  return report;
}

}  // namespace dgshock::limiter
