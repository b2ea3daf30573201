#include "dgshock/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgshock::analysis {

namespace {

template <class Pointwise>
double integrate_error(const DGField1D& u, const Discretization1D& d, const ExactSolution& exact,
                       double t, int var, Pointwise f) {
  if (!exact) {
    throw std::invalid_argument("no exact solution available for this problem");
  }
  const Quadrature q = gauss_legendre(u.degree() + 4);
  double sum = 0.0;
  for (int j = 0; j < u.num_cells(); ++j) {
    const auto m = u.modes(j, var);
    for (int p = 0; p < q.size(); ++p) {
      const double x = d.mesh.to_physical(j, q.nodes[p]);
      const double diff = d.basis.evaluate(m, q.nodes[p]) - exact(x, t)[var];
      sum += 0.5 * d.mesh.dx() * q.weights[p] * f(diff);
    }
  }
  return sum;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double l1_error(const DGField1D& u, const Discretization1D& d, const ExactSolution& exact,
                double t, int var) {
  return integrate_error(u, d, exact, t, var, [](double e) { return std::abs(e); });
}

double l2_error(const DGField1D& u, const Discretization1D& d, const ExactSolution& exact,
                double t, int var) {
  return std::sqrt(integrate_error(u, d, exact, t, var, [](double e) { return e * e; }));
}

std::vector<ConvergenceRow> convergence_study(const std::string& problem, int degree,
                                              const std::vector<int>& levels, double t_final,
                                              double cfl) {
  const ProblemSpec spec = make_problem(problem);
  std::vector<ConvergenceRow> rows;
  for (int level : levels) {
    RunConfig c;
    c.problem = problem;
    c.degree = degree;
    c.level = level;
    c.limiting = false;
    c.cfl = cfl;
    c.t_final = t_final;
    const Result1D r = run_1d(spec, c);
    ConvergenceRow row;
    row.level = level;
    row.error = l2_error(r.field, r.disc, spec.exact, r.stats.final_time, 0);
    if (!rows.empty()) {
      row.order = std::log2(rows.back().error / row.error) / (level - rows.back().level);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<CompareRow> compare_modes(const RunConfig& base, int repeats) {
  const ProblemSpec spec = make_problem(base.problem);
  struct Sample {
    double seconds;
    double fraction;
    int flags;
  };
  auto run = [&](const RunConfig& c) {
    if (spec.dimension == 1) {
      const Result1D res = run_1d(spec, c);
      return Sample{res.timing.total, res.stats.mean_flagged_fraction, res.history.total_flags()};
    }
    const Result2D res = run_2d(spec, c);
    return Sample{res.timing.total, res.stats.mean_flagged_fraction, res.history.total_flags()};
  };
  std::vector<CompareRow> rows;
  for (IndicatorKind kind :
       {IndicatorKind::multiwavelet, IndicatorKind::kxrcf, IndicatorKind::minmod_tvb}) {
    RunConfig fixed = base;
    fixed.indicator.kind = kind;
    fixed.indicator.mode = ThresholdMode::fixed;
    RunConfig outlier = fixed;
    outlier.indicator.mode = ThresholdMode::outlier;
    // interleave the modes and swap which goes first, so drift of the
    // machine and warm caches hit both alike
    std::vector<double> tf;
    std::vector<double> to;
    Sample sf{};
    Sample so{};
    for (int r = 0; r < std::max(1, repeats); ++r) {
      if (r % 2 == 0) {
        sf = run(fixed);
        so = run(outlier);
      } else {
        so = run(outlier);
        sf = run(fixed);
      }
      tf.push_back(sf.seconds);
      to.push_back(so.seconds);
    }
    CompareRow row;
    row.kind = kind;
    row.fixed_seconds = median(tf);
    row.outlier_seconds = median(to);
    row.fixed_mean_fraction = sf.fraction;
    row.outlier_mean_fraction = so.fraction;
    row.fixed_flags = sf.flags;
    row.outlier_flags = so.flags;
    row.overhead_percent = 100.0 * (row.outlier_seconds / row.fixed_seconds - 1.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dgshock::analysis
