#include <doctest.h>

#include <cmath>
#include <random>

#include "dgshock/limiter.hpp"
#include "oracles.hpp"

using namespace dgshock;
using namespace dgshock::limiter;

namespace {

// Straight transcription of the cascade with a generic minmod.
std::vector<double> cascade_oracle(std::vector<double> u, const std::vector<double>& l,
                                   const std::vector<double>& r) {
  for (int m = static_cast<int>(u.size()) - 1; m >= 1; --m) {
    const double b = std::sqrt((m - 0.5) / (m + 0.5));
    const double lim = oracle::minmod({u[m], b * (r[m - 1] - u[m - 1]), b * (u[m - 1] - l[m - 1])});
    if (lim == u[m]) break;
    u[m] = lim;
  }
  return u;
}

Discretization1D euler1d(int level, int k, Boundary bc = Boundary::periodic) {
  return Discretization1D(Mesh1D(level, 0.0, 1.0), k, Physics1D{Equation::euler, 1.0, 1.4}, bc);
}

DGField1D noisy_euler(const Discretization1D& d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-0.02, 0.02);
  auto u = project_l2(
      [](double x) {
        const bool in = x > 0.3 && x < 0.6;
        return euler::to_conserved({in ? 1.0 : 0.3, in ? 0.5 : 0.1, in ? 1.0 : 0.4}, 1.4);
      },
      d.mesh, d.basis, 3);
  for (int j = 0; j < u.num_cells(); ++j)
    for (int v = 0; v < 3; ++v)
      for (int l = 1; l < u.num_modes(); ++l) u(j, v, l) += dist(rng);
  return u;
}

GhostState outflow() {
  return [](const State& s, double, double, double, Side) { return transmissive(s); };
}

}  // namespace

TEST_CASE("beta") {
  CHECK(beta(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(beta(2) == doctest::Approx(std::sqrt(3.0 / 5.0)).epsilon(1e-15));
  for (int l = 1; l < 8; ++l) CHECK(beta(l) < 1.0);
}

TEST_CASE("moment limiter matches the cascade oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int t = 0; t < 5000; ++t) {
    const int n = 2 + t % 4;
    std::vector<double> u(n), l(n), r(n);
    for (int i = 0; i < n; ++i) {
      u[i] = dist(rng);
      l[i] = dist(rng);
      r[i] = dist(rng);
    }
    const auto expect = cascade_oracle(u, l, r);
    std::vector<double> got = u;
    const bool changed = moment_limit_cell(got, l, r);
    for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-14);
    CHECK(changed == (got != u));
    CHECK(got[0] == u[0]);
  }
}

TEST_CASE("cascade stops at the first kept coefficient") {
  // top mode inside the bounds, the slope is not
  std::vector<double> u{1.0, 5.0, 0.1};
  const std::vector<double> l{0.0, 0.0, 0.0};
  const std::vector<double> r{2.0, 10.0, 0.0};
  CHECK_FALSE(moment_limit_cell(u, l, r));
  CHECK(u[1] == 5.0);
}

TEST_CASE("isolated extremum loses every mode") {
  std::vector<double> u{2.0, 0.3, -0.2, 0.1};
  const std::vector<double> l{0.0, 0.0, 0.0, 0.0};
  CHECK(moment_limit_cell(u, l, l));
  CHECK(u == std::vector<double>{2.0, 0.0, 0.0, 0.0});
}

TEST_CASE("limit_flagged: empty mask, means, locality") {
  std::mt19937_64 rng(12);
  const auto d = euler1d(6, 2);
  const auto u0 = noisy_euler(d, rng);

  auto u = u0;
  const auto rep = limit_flagged(u, d, TroubledCellMask(64, 0));
  CHECK(rep.flagged == 0);
  CHECK(u.data() == u0.data());

  TroubledCellMask mask(64, 0);
  for (int j = 0; j < 64; j += 3) mask[j] = 1;
  u = u0;
  const auto r = limit_flagged(u, d, mask);
  CHECK(r.flagged == 22);
  CHECK(r.modified > 0);
  for (int j = 0; j < 64; ++j) {
    for (int v = 0; v < 3; ++v) {
      CHECK(u(j, v, 0) == u0(j, v, 0));
      if (!mask[j])
        for (int l = 1; l < 3; ++l) CHECK(u(j, v, l) == u0(j, v, l));
    }
    CHECK(cell_admissible(u, d, j));
  }
  CHECK_THROWS_AS(limit_flagged(u, d, TroubledCellMask(10, 1)), std::invalid_argument);
}

TEST_CASE("scalar limiting never grows a coefficient") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const Discretization1D d(Mesh1D(5, 0.0, 1.0), 3, Physics1D{Equation::advection, 1.0, 1.4},
                           Boundary::periodic);
  for (int t = 0; t < 20; ++t) {
    DGField1D u = d.make_field();
    for (double& c : u.data()) c = dist(rng);
    const auto u0 = u;
    limit_flagged(u, d, TroubledCellMask(32, 1));
    for (std::size_t i = 0; i < u.data().size(); ++i) CHECK(std::abs(u.data()[i]) <= std::abs(u0.data()[i]));
  }
}

TEST_CASE("parallel limiter equals the serial reference") {
  std::mt19937_64 rng(14);
  for (int k = 1; k <= 3; ++k) {
    const auto d = euler1d(7, k, Boundary::transmissive);
    const auto u0 = noisy_euler(d, rng);
    TroubledCellMask mask(128, 0);
    for (int j = 0; j < 128; ++j) mask[j] = (rng() % 3) == 0;
    auto a = u0;
    auto b = u0;
    const auto ra = limit_flagged(a, d, mask);
    const auto rb = limit_flagged_reference(b, d, mask);
    CHECK(a.data() == b.data());
    CHECK(ra.modified == rb.modified);
    CHECK(ra.fallbacks == rb.fallbacks);
  }
}

TEST_CASE("positivity fallback") {
  // density-only disturbance at rest: the limiter acts on the entropy family alone
  const auto d = euler1d(3, 2, Boundary::transmissive);
  DGField1D u = d.make_field();
  const double p = 1.0;
  for (int j = 0; j < 8; ++j) {
    u(j, 0, 0) = std::sqrt(2.0);
    u(j, 2, 0) = std::sqrt(2.0) * p / 0.4;
  }
  // cell 4: rho = 1 + 4 P2(x), negative around the middle Gauss points; neighbors steepen so c2 survives
  u(4, 0, 2) = 4.0 * std::sqrt(2.0 / 5.0);
  u(3, 0, 1) = -4.0;
  u(5, 0, 1) = 4.0;
  TroubledCellMask mask(8, 0);
  mask[4] = 1;
  CHECK_FALSE(cell_admissible(u, d, 4));
  const auto rep = limit_flagged(u, d, mask);
  CHECK(rep.fallbacks == 1);
  CHECK(u(4, 0, 2) == 0.0);
  CHECK(u(4, 0, 0) == std::sqrt(2.0));
  CHECK(cell_admissible(u, d, 4));
}

TEST_CASE("2D moment limiter examples") {
  const int k = 1;
  // isolated peak with slopes: everything above the mean goes
  std::vector<double> u{3.0, 0.4, -0.3, 0.2};
  const std::vector<double> flat{0.0, 0.0, 0.0, 0.0};
  CHECK(moment_limit_2d(u, flat, flat, flat, flat, k));
  CHECK(u == std::vector<double>{3.0, 0.0, 0.0, 0.0});

  // bilinear data passes: u = x + 2y on unit cells, layout a * 2 + b
  auto cell = [](double cx, double cy) {
    const double s = std::sqrt(1.0 / 3.0);  // phi_1 weight of xi on [-1, 1], mean weight sqrt(2)
    return std::vector<double>{2.0 * (cx + 2.0 * cy), 2.0 * 2.0 * s * 0.5, 2.0 * s * 0.5, 0.0};
  };
  auto c = cell(0, 0);
  const auto before = c;
  CHECK_FALSE(moment_limit_2d(c, cell(-1, 0), cell(1, 0), cell(0, -1), cell(0, 1), k));
  CHECK(c == before);

  // zero top ring at k = 2 ends the cascade before the first ring
  std::vector<double> q(9, 0.0);
  q[0] = 1.0;
  q[1] = 5.0;
  q[3] = -5.0;
  const std::vector<double> z(9, 0.0);
  CHECK_FALSE(moment_limit_2d(q, z, z, z, z, 2));
  CHECK(q[1] == 5.0);
}

TEST_CASE("2D limiting keeps means and leaves unflagged cells alone") {
  const Discretization2D d(Mesh2D(4, 4, 0.0, 1.0, 0.0, 1.0), 2, 1.4, outflow());
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> dist(-0.01, 0.01);
  auto u = project_l2(
      [](double x, double y) {
        const bool in = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) < 0.05;
        return euler::to_conserved_2d({in ? 1.0 : 0.2, 0.3, -0.1, in ? 1.0 : 0.2}, 1.4);
      },
      d.mesh, d.basis, 4);
  for (double& c : u.data()) c += dist(rng);
  const auto u0 = u;
  CHECK(limit_flagged_2d(u, d, TroubledCellMask(256, 0)).flagged == 0);
  CHECK(u.data() == u0.data());

  TroubledCellMask mask(256, 0);
  for (int c = 0; c < 256; c += 5) mask[c] = 1;
  const auto rep = limit_flagged_2d(u, d, mask);
  CHECK(rep.flagged == 52);
  CHECK(rep.modified > 0);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i)
      for (int v = 0; v < 4; ++v) {
        CHECK(u(i, j, v, 0, 0) == u0(i, j, v, 0, 0));
        if (!mask[j * 16 + i])
          for (int m = 1; m < 9; ++m) CHECK(u.modes(i, j, v)[m] == u0.modes(i, j, v)[m]);
      }
}
