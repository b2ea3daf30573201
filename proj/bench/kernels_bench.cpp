// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "dgshock/indicators.hpp"
#include "dgshock/limiter.hpp"
#include "dgshock/outlier.hpp"
#include "dgshock/problems.hpp"
#include "dgshock/solver1d.hpp"
#include "dgshock/solver2d.hpp"

namespace {

using namespace dgshock;

struct Sod {
  Discretization1D disc;
  DGField1D u;

  explicit Sod(int level)
      : disc(Mesh1D(level, -5.0, 5.0), 2, Physics1D{Equation::euler, 1.0, 1.4},
             Boundary::transmissive),
        u(project_l2(make_problem("sod").initial, disc.mesh, disc.basis, 3)) {}
};

void BM_rhs_parallel(benchmark::State& state) {
  Sod s(static_cast<int>(state.range(0)));
  DGField1D out = s.disc.make_field();
  for (auto _ : state) {
    semidiscrete_rhs(s.u, s.disc, out);
    benchmark::DoNotOptimize(out.data().data());
  }
}

void BM_rhs_serial(benchmark::State& state) {
  Sod s(static_cast<int>(state.range(0)));
  DGField1D out = s.disc.make_field();
  for (auto _ : state) {
    semidiscrete_rhs_reference(s.u, s.disc, out);
    benchmark::DoNotOptimize(out.data().data());
  }
}

std::vector<double> noisy_vector(int n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) {
    x = g(rng);
  }
  for (int i = 0; i < n; i += 97) {
    v[i] += 40.0;
  }
  return v;
}

void BM_detect_parallel(benchmark::State& state) {
  const auto v = noisy_vector(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(outlier::detect_1d(v));
  }
}

void BM_detect_serial(benchmark::State& state) {
  const auto v = noisy_vector(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(outlier::detect_1d_reference(v));
  }
}

TroubledCellMask every_other(int n) {
  TroubledCellMask m(n, 0);
  for (int j = 0; j < n; j += 2) {
    m[j] = 1;
  }
  return m;
}

void BM_limit_parallel(benchmark::State& state) {
  Sod s(static_cast<int>(state.range(0)));
  const auto mask = every_other(s.u.num_cells());
  for (auto _ : state) {
    DGField1D u = s.u;
    benchmark::DoNotOptimize(limiter::limit_flagged(u, s.disc, mask));
  }
}

void BM_limit_serial(benchmark::State& state) {
  Sod s(static_cast<int>(state.range(0)));
  const auto mask = every_other(s.u.num_cells());
  for (auto _ : state) {
    DGField1D u = s.u;
    benchmark::DoNotOptimize(limiter::limit_flagged_reference(u, s.disc, mask));
  }
}

void BM_rhs2d(benchmark::State& state, bool parallel) {
  const ProblemSpec p = make_problem("double_mach");
  const Mesh2D mesh(7, 5, p.x0, p.x1, p.y0, p.y1);
  const Discretization2D d(mesh, 1, 1.4, p.ghost);
  const DGField2D u = project_l2(p.initial_2d, mesh, d.basis, 4);
  DGField2D out = d.make_field();
  for (auto _ : state) {
    if (parallel) {
      semidiscrete_rhs_2d(u, d, 0.0, out);
    } else {
      semidiscrete_rhs_2d_reference(u, d, 0.0, out);
    }
    benchmark::DoNotOptimize(out.data().data());
  }
}

}  // namespace

BENCHMARK(BM_rhs_parallel)->Arg(7)->Arg(9)->Arg(12);
BENCHMARK(BM_rhs_serial)->Arg(7)->Arg(9)->Arg(12);
BENCHMARK(BM_detect_parallel)->Arg(1 << 9)->Arg(1 << 14);
BENCHMARK(BM_detect_serial)->Arg(1 << 9)->Arg(1 << 14);
BENCHMARK(BM_limit_parallel)->Arg(9)->Arg(12);
BENCHMARK(BM_limit_serial)->Arg(9)->Arg(12);
BENCHMARK_CAPTURE(BM_rhs2d, parallel, true);
BENCHMARK_CAPTURE(BM_rhs2d, serial, false);

BENCHMARK_MAIN();
