// End-to-end checks of the shipped configurations. One PASS/FAIL line per
// criterion; the exit code is nonzero when any of them fails.

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dgshock/analysis.hpp"
#include "dgshock/exact_riemann.hpp"
#include "dgshock/indicators.hpp"
#include "dgshock/limiter.hpp"
#include "dgshock/multiwavelet.hpp"
#include "dgshock/outlier.hpp"
#include "dgshock/problems.hpp"
#include "dgshock/simulation.hpp"
#include "oracles.hpp"

using namespace dgshock;

namespace {

// Tolerances.
constexpr double kErrorRatio = 2.0;         // outlier L1 / fixed L1
constexpr double kOvershoot = 0.02;         // fraction of the local jump
constexpr int kShockWindow = 8;             // cells either side of the exact shock
constexpr double kTwoScaleTol = 1e-10;
constexpr double kDecaySlack = 1.5;         // decay factor >= 2^k / slack
constexpr double kOrderSlack = 0.5;         // order >= k + slack
constexpr double kRichardsonLo = 6.0;
constexpr double kRichardsonHi = 10.0;
constexpr double kDriftPerStep = 1e-12;
constexpr double kOverheadRatio = 1.15;
constexpr int kTimingRepeats = 15;
constexpr double kMaxFraction2D = 0.2;
constexpr int kRidgeDistance = 4;
constexpr double kRidgeLevel = 0.1;         // ridge cells reach this share of the max gradient

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

const char* short_name(IndicatorKind k) {
  switch (k) {
    case IndicatorKind::multiwavelet: return "mw";
    case IndicatorKind::kxrcf: return "kxrcf";
    case IndicatorKind::minmod_tvb: return "minmod";
  }
  return "?";
}

constexpr std::array<IndicatorKind, 3> kKinds{IndicatorKind::multiwavelet, IndicatorKind::kxrcf,
                                              IndicatorKind::minmod_tvb};

RunConfig config_for(const std::string& problem, IndicatorKind kind, ThresholdMode mode,
                     double param = -1.0) {
  RunConfig c;
  c.problem = problem;
  c.indicator.kind = kind;
  c.indicator.mode = mode;
  if (param >= 0.0) c.indicator.set_parameter(param);
  return c;
}

double sod_lax_param(IndicatorKind k) {
  return k == IndicatorKind::multiwavelet ? 0.1 : k == IndicatorKind::kxrcf ? 1.0 : 10.0;
}

// ---------------------------------------------------------------------------

Outcome smooth_soundness() {
  Outcome o;
  const ProblemSpec spec = make_problem("euler_sine");
  for (IndicatorKind k : kKinds) {
    const auto out = run_1d(spec, config_for("euler_sine", k, ThresholdMode::outlier));
    const double param = k == IndicatorKind::multiwavelet ? 0.5 : sod_lax_param(k);
    const auto fix = run_1d(spec, config_for("euler_sine", k, ThresholdMode::fixed, param));
    const int a = out.history.total_flags();
    const int b = fix.history.total_flags();
    o.note(fmt::format("{} outlier {} fixed {}", short_name(k), a, b));
    o.require(a == 0, fmt::format("{} outlier flagged {} cells", short_name(k), a));
    o.require(b > 0, fmt::format("{} fixed flagged nothing", short_name(k)));
  }
  return o;
}

// Largest excursion of the cell averages beyond the exact states on either side
// of the shock, over the cells whose centers lie within the window.
struct ShockCheck {
  double overshoot = 0.0;
  double jump = 0.0;
};

ShockCheck shock_overshoot(const Result1D& r, const ProblemSpec& spec, double t) {
  const double g = spec.physics.gamma;
  const State s0 = spec.initial(-1.0);
  const State s1 = spec.initial(1.0);
  const auto left = euler::to_primitive(s0, g);
  const auto right = euler::to_primitive(s1, g);
  const ExactRiemann exact(left, right, g);
  // right-running shock: Rankine-Hugoniot from the star pressure
  const double ratio = exact.p_star() / right.p;
  const double cr = std::sqrt(g * right.p / right.rho);
  const double speed = right.u + cr * std::sqrt((g + 1) / (2 * g) * ratio + (g - 1) / (2 * g));
  const double mu = (g - 1) / (g + 1);
  const double rho_post = right.rho * (ratio + mu) / (mu * ratio + 1.0);
  const double xs = speed * t;

  const double hi = std::max(rho_post, right.rho);
  const double lo = std::min(rho_post, right.rho);
  const double dx = r.disc.mesh.dx();
  ShockCheck c;
  c.jump = hi - lo;
  for (int j = 0; j < r.field.num_cells(); ++j) {
    const double xc = spec.x0 + (j + 0.5) * dx;
    if (std::abs(xc - xs) > kShockWindow * dx) continue;
    const double v = r.field.average(j, 0);
    c.overshoot = std::max({c.overshoot, v - hi, lo - v});
  }
  return c;
}

Outcome shock_tubes() {
  Outcome o;
  for (const std::string problem : {"sod", "lax"}) {
    const ProblemSpec spec = make_problem(problem);
    for (IndicatorKind k : kKinds) {
      const auto out = run_1d(spec, config_for(problem, k, ThresholdMode::outlier));
      const auto fix =
          run_1d(spec, config_for(problem, k, ThresholdMode::fixed, sod_lax_param(k)));
      const double t = out.stats.final_time;
      const double e_out = analysis::l1_error(out.field, out.disc, spec.exact, t, 0);
      const double e_fix = analysis::l1_error(fix.field, fix.disc, spec.exact, t, 0);
      const ShockCheck sc = shock_overshoot(out, spec, t);
      const std::string tag = fmt::format("{}/{}", problem, short_name(k));
      o.note(fmt::format("{} L1 {:.3e} vs {:.3e}, overshoot {:.2e} of jump {:.3f}", tag, e_out,
                         e_fix, sc.overshoot, sc.jump));
      o.require(e_out <= kErrorRatio * e_fix, tag + " L1 ratio");
      o.require(sc.overshoot <= kOvershoot * sc.jump, tag + " overshoot");
      o.require(out.stats.min_density > 0.0 && out.stats.min_pressure > 0.0, tag + " positivity");
    }
  }
  return o;
}

Outcome strong_shocks() {
  Outcome o;
  for (const std::string problem : {"blast", "shu_osher"}) {
    const ProblemSpec spec = make_problem(problem);
    for (IndicatorKind k : {IndicatorKind::kxrcf, IndicatorKind::minmod_tvb}) {
      const double param = k == IndicatorKind::kxrcf ? 1.0 : 100.0;
      const std::string tag = fmt::format("{}/{}", problem, short_name(k));
      try {
        const auto out = run_1d(spec, config_for(problem, k, ThresholdMode::outlier));
        const auto fix = run_1d(spec, config_for(problem, k, ThresholdMode::fixed, param));
        const double a = out.stats.mean_flagged_fraction;
        const double b = fix.stats.mean_flagged_fraction;
        o.note(fmt::format("{} fraction {:.4f} vs {:.4f}", tag, a, b));
        o.require(out.stats.final_time == spec.t_final, tag + " incomplete");
        o.require(out.stats.min_density > 0.0 && out.stats.min_pressure > 0.0,
                  tag + " positivity");
        o.require(a < b, tag + " fraction not below fixed");
      } catch (const std::exception& e) {
        o.require(false, tag + ": " + e.what());
      }
    }
  }
  return o;
}

Outcome detector_suite() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::normal_distribution<double> gauss;
  std::cauchy_distribution<double> heavy;

  int bad = 0;
  std::uniform_int_distribution<int> len(1, 16);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(4 * len(rng));
    for (double& x : v) x = gauss(rng) * (t % 5 + 1);
    if (t % 7 == 0) v[v.size() / 2] = v[0];
    std::vector<double> s = v;
    std::sort(s.begin(), s.end());
    const auto q = outlier::quartiles(s);
    const auto h = oracle::tukey_hinges(v);
    bad += q.q1 != h.lower || q.q3 != h.upper;
  }
  o.require(bad == 0, fmt::format("{} quartile mismatches", bad));

  const std::array<double, 16> base{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8,
                                    0.9, 1.0, 1.1, 1.2, 4.0, 9.0, 30.0, 200.0};
  bad = 0;
  for (int pattern = 0; pattern < (1 << 16); ++pattern) {
    std::vector<double> w(16);
    for (int i = 0; i < 16; ++i) w[i] = (pattern >> i & 1) ? -base[i] : base[i];
    bad += outlier::extreme_outliers(w) != oracle::naive_extremes(w);
  }
  o.require(bad == 0, fmt::format("{} sign patterns disagree", bad));

  bad = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<double> w(16);
    for (double& x : w) x = (t % 2) ? heavy(rng) : gauss(rng);
    if (t % 3 == 0) w[t % 16] *= 1e3;
    bad += outlier::extreme_outliers(w) != oracle::naive_extremes(w);
  }
  o.require(bad == 0, fmt::format("{} random windows disagree", bad));

  int symmetry = 0;
  int bound = 0;
  std::uniform_int_distribution<int> pos(0, 127);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> v(128);
    for (double& x : v) x = (t % 2) ? heavy(rng) * heavy(rng) : gauss(rng);
    for (int s = 0; s < 3; ++s) v[pos(rng)] += 40.0;
    const auto flags = outlier::detect_1d(v);
    // powers of two and shifts by integers keep the arithmetic exact for these
    std::vector<double> m(v.size());
    std::transform(v.begin(), v.end(), m.begin(), [](double x) { return -0.25 * x; });
    symmetry += outlier::detect_1d(m) != flags;
    std::vector<double> rev(v.rbegin(), v.rend());
    auto back = outlier::detect_1d(rev);
    for (int& i : back) i = 127 - i;
    std::sort(back.begin(), back.end());
    symmetry += back != flags;
    for (int w = 0; w < 8; ++w) {
      bound += std::count_if(flags.begin(), flags.end(), [&](int i) { return i / 16 == w; }) > 6;
    }
    symmetry += flags != oracle::naive_detect(v);
  }
  o.require(symmetry == 0, fmt::format("{} equivariance/oracle violations", symmetry));
  o.require(bound == 0, fmt::format("{} windows above 6 flags", bound));
  if (o.pass) o.note("quartiles, 65536 patterns, 10^4 windows, symmetries, bound");
  return o;
}

Outcome multiwavelet_equivalence() {
  Outcome o;
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k <= 2; ++k) {
    const multiwavelet::AlpertBasis a(k);
    for (int t = 0; t < 100; ++t) {
      DGField1D u(Mesh1D(3 + t % 4, -1.0, 1.0), k, 1);
      for (double& c : u.data()) c = dist(rng);
      const auto c = multiwavelet::level_coefficients_1d(u, 0, a, true);
      for (int offset = 0; offset < 2; ++offset) {
        const auto ts = multiwavelet::twoscale_transform(u, 0, a, offset);
        for (int l = 0; l <= k; ++l)
          for (int j = 0; j < ts.count; ++j)
            worst = std::max(worst, std::abs(c(l, 2 * j + offset) - ts.d(l, j)));
      }
    }
  }
  o.note(fmt::format("max |jump - two-scale| {:.2e}", worst));
  o.require(worst <= kTwoScaleTol, "two-scale mismatch");

  for (int k = 0; k <= 2; ++k) {
    const multiwavelet::AlpertBasis a(k);
    const LegendreBasis p(k);
    std::vector<double> peak;
    for (int n = 5; n <= 8; ++n) {
      const auto u = project_l2([](double x) { return State{std::sin(M_PI * x), 0, 0, 0}; },
                                Mesh1D(n, -1.0, 1.0), p, 1);
      double m = 0.0;
      for (double v : multiwavelet::level_coefficients_1d(u, 0, a, true).top())
        m = std::max(m, std::abs(v));
      peak.push_back(m);
    }
    double least = 1e300;
    for (std::size_t i = 1; i < peak.size(); ++i) least = std::min(least, peak[i - 1] / peak[i]);
    o.note(fmt::format("k={} decay {:.2f}", k, least));
    o.require(least >= std::ldexp(1.0, k) / kDecaySlack, fmt::format("k={} decay", k));
  }
  return o;
}

Outcome convergence() {
  Outcome o;
  for (int k = 1; k <= 2; ++k) {
    const auto rows = analysis::convergence_study("advect_sine", k, {5, 6, 7});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      o.note(fmt::format("k={} n={} order {:.2f}", k, rows[i].level, rows[i].order));
      o.require(rows[i].order >= k + kOrderSlack, fmt::format("k={} order", k));
    }
  }

  // same mesh, three step sizes: the spatial error cancels in the differences
  const ProblemSpec spec = make_problem("euler_sine");
  std::vector<std::vector<double>> sols;
  for (double dt : {4e-4, 2e-4, 1e-4}) {
    RunConfig c;
    c.problem = "euler_sine";
    c.level = 6;
    c.limiting = false;
    c.t_final = 0.2;
    c.fixed_dt = dt;
    sols.push_back(run_1d(spec, c).field.data());
  }
  auto dist = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };
  const double factor = dist(sols[0], sols[1]) / dist(sols[1], sols[2]);
  o.note(fmt::format("Richardson factor {:.3f}", factor));
  o.require(factor >= kRichardsonLo && factor <= kRichardsonHi, "temporal order");
  return o;
}

Outcome conservation_and_locality() {
  Outcome o;
  struct Case {
    std::string problem;
    IndicatorKind kind;
    ThresholdMode mode;
    double param;
  };
  const std::vector<Case> cases{
      {"euler_sine", IndicatorKind::multiwavelet, ThresholdMode::fixed, 0.5},
      {"euler_sine", IndicatorKind::minmod_tvb, ThresholdMode::fixed, 10.0},
      {"advect_sine", IndicatorKind::kxrcf, ThresholdMode::outlier, -1.0},
  };
  for (const auto& cs : cases) {
    const auto r =
        run_1d(make_problem(cs.problem), config_for(cs.problem, cs.kind, cs.mode, cs.param));
    o.note(fmt::format("{}/{} drift {:.1e} ({} limited)", cs.problem, short_name(cs.kind),
                       r.stats.max_conservation_drift, r.stats.limiter.flagged));
    o.require(r.stats.max_conservation_drift <= kDriftPerStep, cs.problem + " drift");
  }

  // limiter on a developed Sod state with a mask that covers smooth cells too
  RunConfig c = config_for("sod", IndicatorKind::multiwavelet, ThresholdMode::outlier);
  c.t_final = 0.4;
  const auto r = run_1d(make_problem("sod"), c);
  IndicatorSettings mm;
  mm.kind = IndicatorKind::minmod_tvb;
  mm.mode = ThresholdMode::fixed;
  TroubledCellMask mask = indicators::indicate(r.field, r.disc, mm);
  for (std::size_t j = 0; j < mask.size(); j += 5) mask[j] = 1;
  DGField1D u = r.field;
  const auto rep = limiter::limit_flagged(u, r.disc, mask);
  int mean_changes = 0;
  int leaks = 0;
  for (int j = 0; j < u.num_cells(); ++j) {
    for (int v = 0; v < u.num_vars(); ++v) {
      mean_changes += u(j, v, 0) != r.field(j, v, 0);
      if (!mask[j])
        for (int l = 0; l < u.num_modes(); ++l) leaks += u(j, v, l) != r.field(j, v, l);
    }
  }

  // and a 2D state
  RunConfig c2 = config_for("double_mach", IndicatorKind::minmod_tvb, ThresholdMode::outlier);
  c2.degree = 1;
  c2.scale = 3;
  c2.t_final = 0.02;
  const auto r2 = run_2d(make_problem("double_mach"), c2);
  TroubledCellMask mask2 = indicators::indicate_2d(r2.field, r2.disc, 0.02, c2.indicator);
  for (std::size_t j = 0; j < mask2.size(); j += 3) mask2[j] = 1;
  DGField2D w = r2.field;
  const auto rep2 = limiter::limit_flagged_2d(w, r2.disc, mask2);
  for (int j = 0; j < w.ny(); ++j)
    for (int i = 0; i < w.nx(); ++i)
      for (int v = 0; v < w.num_vars(); ++v) {
        mean_changes += w(i, j, v, 0, 0) != r2.field(i, j, v, 0, 0);
        if (!mask2[static_cast<std::size_t>(j) * w.nx() + i]) {
          const auto a = w.modes(i, j, v);
          const auto b = r2.field.modes(i, j, v);
          leaks += !std::equal(a.begin(), a.end(), b.begin());
        }
      }
  o.note(fmt::format("limiter modified {} (1D) and {} (2D) cells", rep.modified, rep2.modified));
  o.require(rep.modified > 0 && rep2.modified > 0, "limiter did nothing");
  o.require(mean_changes == 0, fmt::format("{} cell means changed", mean_changes));
  o.require(leaks == 0, fmt::format("{} unflagged cells changed", leaks));
  return o;
}

Outcome overhead() {
  Outcome o;
  RunConfig base;
  base.problem = "sod";
  const auto rows = analysis::compare_modes(base, kTimingRepeats);
  for (const auto& row : rows) {
    const double ratio = row.outlier_seconds / row.fixed_seconds;
    o.note(fmt::format("{} {:.3f}s/{:.3f}s = {:.3f}", short_name(row.kind), row.outlier_seconds,
                       row.fixed_seconds, ratio));
    o.require(ratio <= kOverheadRatio, fmt::format("{} overhead", short_name(row.kind)));
  }
  return o;
}

// Ridge: cells whose averaged density gradient reaches kRidgeLevel of the
// largest one and is a local maximum along x or y.
std::vector<char> gradient_ridge(const DGField2D& u) {
  const int nx = u.nx();
  const int ny = u.ny();
  const double dx = u.mesh().dx();
  const double dy = u.mesh().dy();
  auto rho = [&](int i, int j) {
    return u.average(std::clamp(i, 0, nx - 1), std::clamp(j, 0, ny - 1), 0);
  };
  std::vector<double> g(static_cast<std::size_t>(nx) * ny);
  double gmax = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double gx = (rho(i + 1, j) - rho(i - 1, j)) / (2 * dx);
      const double gy = (rho(i, j + 1) - rho(i, j - 1)) / (2 * dy);
      g[j * nx + i] = std::hypot(gx, gy);
      gmax = std::max(gmax, g[j * nx + i]);
    }
  auto at = [&](int i, int j) { return g[std::clamp(j, 0, ny - 1) * nx + std::clamp(i, 0, nx - 1)]; };
  std::vector<char> ridge(g.size(), 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double v = at(i, j);
      if (v < kRidgeLevel * gmax) continue;
      const bool xpeak = v >= at(i - 1, j) && v >= at(i + 1, j);
      const bool ypeak = v >= at(i, j - 1) && v >= at(i, j + 1);
      ridge[j * nx + i] = xpeak || ypeak;
    }
  return ridge;
}

Outcome double_mach() {
  Outcome o;
  RunConfig c = config_for("double_mach", IndicatorKind::minmod_tvb, ThresholdMode::outlier);
  c.degree = 1;
  c.scale = 2;
  double worst_fraction = 0.0;
  long flagged = 0;
  long stray = 0;
  int worst_distance = 0;
  auto observe = [&](int, double, const DGField2D& u, const TroubledCellMask& mask) {
    const int nx = u.nx();
    const int ny = u.ny();
    const auto ridge = gradient_ridge(u);
    int count = 0;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        if (!mask[j * nx + i]) continue;
        ++count;
        int best = kRidgeDistance + 1;
        for (int b = std::max(0, j - kRidgeDistance); b <= std::min(ny - 1, j + kRidgeDistance); ++b)
          for (int a = std::max(0, i - kRidgeDistance); a <= std::min(nx - 1, i + kRidgeDistance); ++a)
            if (ridge[b * nx + a]) best = std::min(best, std::max(std::abs(a - i), std::abs(b - j)));
        stray += best > kRidgeDistance;
        worst_distance = std::max(worst_distance, best);
      }
    flagged += count;
    worst_fraction = std::max(worst_fraction, static_cast<double>(count) / (nx * ny));
  };
  try {
    const ProblemSpec spec = make_problem("double_mach");
    const auto r = run_2d(spec, c, observe);
    o.note(fmt::format("{}x{} {} steps, max fraction {:.4f}, {} flags, {} beyond {} cells "
                       "(worst {}), min density {:.3e}",
                       r.field.nx(), r.field.ny(), r.stats.steps, worst_fraction, flagged, stray,
                       kRidgeDistance, worst_distance, r.stats.min_density));
    o.require(r.stats.final_time == spec.t_final, "incomplete");
    o.require(r.stats.min_density > 0.0, "density");
    o.require(worst_fraction < kMaxFraction2D, "flagged fraction");
    o.require(stray == 0, "flags away from the front");
  } catch (const std::exception& e) {
    o.require(false, e.what());
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"smooth data: outlier mode flags nothing", smooth_soundness},
      {"Sod/Lax: error, overshoot, positivity", shock_tubes},
      {"blast/Shu-Osher: fewer flags than fixed mode", strong_shocks},
      {"detector against oracles", detector_suite},
      {"multiwavelet jump formula and decay", multiwavelet_equivalence},
      {"spatial and temporal order", convergence},
      {"conservation and limiter locality", conservation_and_locality},
      {"outlier overhead on Sod", overhead},
      {"double Mach, reduced grid", double_mach},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.require(false, e.what());
    }
    failed += !o.pass;
    fmt::print("{} {}. {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail);
    std::fflush(stdout);
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
