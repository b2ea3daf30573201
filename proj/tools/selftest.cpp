#include "selftest.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dgshock/indicators.hpp"
#include "dgshock/limiter.hpp"
#include "dgshock/multiwavelet.hpp"
#include "dgshock/outlier.hpp"
#include "dgshock/solver1d.hpp"

namespace dgshock::tools {

namespace {

DGField1D random_field(std::mt19937_64& rng, int level, int k, int nv) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  DGField1D u(Mesh1D(level, -1.0, 1.0), k, nv);
  for (double& c : u.data()) {
    c = dist(rng);
  }
  return u;
}

bool detector_matches_reference(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(128);
    for (double& x : v) {
      x = gauss(rng);
    }
    v[trial % 128] += 50.0;
    if (outlier::detect_1d(v) != outlier::detect_1d_reference(v)) {
      return false;
    }
  }
  return true;
}

bool twoscale_matches(std::mt19937_64& rng) {
  for (int k = 0; k <= 2; ++k) {
    const multiwavelet::AlpertBasis basis(k);
    for (int trial = 0; trial < 10; ++trial) {
      const DGField1D u = random_field(rng, 5, k, 1);
      const auto coeffs = multiwavelet::level_coefficients_1d(u, 0, basis, true);
      for (int offset = 0; offset < 2; ++offset) {
        const auto ts = multiwavelet::twoscale_transform(u, 0, basis, offset);
        for (int l = 0; l <= k; ++l) {
          for (int j = 0; j < ts.count; ++j) {
            if (std::abs(coeffs(l, 2 * j + offset) - ts.d(l, j)) > 1e-10) {
              return false;
            }
          }
        }
      }
    }
  }
  return true;
}

bool limiter_keeps_means(std::mt19937_64& rng) {
  const Discretization1D d(Mesh1D(6, -1.0, 1.0), 2, Physics1D{Equation::advection, 1.0, 1.4},
                           Boundary::periodic);
  DGField1D u = random_field(rng, 6, 2, 1);
  const DGField1D before = u;
  TroubledCellMask mask(u.num_cells(), 0);
  for (int j = 0; j < u.num_cells(); j += 3) {
    mask[j] = 1;
  }
  limiter::limit_flagged(u, d, mask);
  for (int j = 0; j < u.num_cells(); ++j) {
    if (u(j, 0, 0) != before(j, 0, 0)) {
      return false;
    }
    if (!mask[j] && (u(j, 0, 1) != before(j, 0, 1) || u(j, 0, 2) != before(j, 0, 2))) {
      return false;
    }
  }
  return true;
}

bool rhs_matches_reference(std::mt19937_64& rng) {
  const Discretization1D d(Mesh1D(6, -1.0, 1.0), 2, Physics1D{Equation::euler, 1.0, 1.4},
                           Boundary::transmissive);
  const auto init = [](double x) {
    return euler::to_conserved(euler::Primitive1D{1.0 + 0.3 * std::sin(3 * x), 0.2, 1.0}, 1.4);
  };
  DGField1D u = project_l2(init, d.mesh, d.basis, 3);
  std::uniform_real_distribution<double> dist(-1e-3, 1e-3);
  for (double& c : u.data()) {
    c += dist(rng);
  }
  DGField1D a = d.make_field();
  DGField1D b = d.make_field();
  semidiscrete_rhs(u, d, a);
  semidiscrete_rhs_reference(u, d, b);
  return a.data() == b.data();
}

}  // namespace

int run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<std::string, std::function<bool()>>> checks{
      {"outlier detection matches serial reference", [&] { return detector_matches_reference(rng); }},
      {"jump-based multiwavelet details match two-scale projections", [&] { return twoscale_matches(rng); }},
      {"limiter preserves means and untouched cells", [&] { return limiter_keeps_means(rng); }},
      {"parallel DG operator matches serial reference", [&] { return rhs_matches_reference(rng); }},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    const bool ok = check();
    failures += !ok;
    fmt::print("{} {}\n", ok ? "PASS" : "FAIL", name);
  }
  return failures;
}

}  // namespace dgshock::tools
