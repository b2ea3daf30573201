#include "dgshock/physics.hpp"

#include <algorithm>
#include <cmath>

#include "dgshock/errors.hpp"

namespace dgshock {

CharFrame CharFrame::identity(int n) {
  CharFrame f;
  f.size = n;
  for (int i = 0; i < kMaxVars; ++i) {
    f.R[i][i] = 1.0;
    f.Rinv[i][i] = 1.0;
  }
  return f;
}

State CharFrame::to_characteristic(const State& u) const {
  State w{};
  for (int i = 0; i < size; ++i) {
    double acc = 0.0;
    for (int j = 0; j < size; ++j) {
      acc += Rinv[i][j] * u[j];
    }
    w[i] = acc;
  }
  return w;
}

State CharFrame::from_characteristic(const State& w) const {
  State u{};
  for (int i = 0; i < size; ++i) {
    double acc = 0.0;
    for (int j = 0; j < size; ++j) {
      acc += R[i][j] * w[j];
    }
    u[i] = acc;
  }
  return u;
}

namespace euler {

double pressure(const State& u, double gamma) {
  return (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

double pressure_2d(const State& u, double gamma) {
  return (gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]);
}

bool admissible(const State& u, double gamma) {
  return std::isfinite(u[0]) && std::isfinite(u[1]) && std::isfinite(u[2]) && u[0] > 0.0 &&
         pressure(u, gamma) > 0.0;
}

bool admissible_2d(const State& u, double gamma) {
  return std::isfinite(u[0]) && std::isfinite(u[1]) && std::isfinite(u[2]) &&
         std::isfinite(u[3]) && u[0] > 0.0 && pressure_2d(u, gamma) > 0.0;
}

namespace {

void require(bool ok, const char* where) {
  if (!ok) {
    throw AdmissibilityError(std::string(where) + ": non-positive density or pressure");
  }
}

}  // namespace

Primitive1D to_primitive(const State& u, double gamma) {
  require(admissible(u, gamma), "to_primitive");
  return {u[0], u[1] / u[0], pressure(u, gamma)};
}

State to_conserved(const Primitive1D& w, double gamma) {
  require(w.rho > 0.0 && w.p > 0.0, "to_conserved");
  return {w.rho, w.rho * w.u, w.p / (gamma - 1.0) + 0.5 * w.rho * w.u * w.u, 0.0};
}

Primitive2D to_primitive_2d(const State& u, double gamma) {
  require(admissible_2d(u, gamma), "to_primitive_2d");
  return {u[0], u[1] / u[0], u[2] / u[0], pressure_2d(u, gamma)};
}

State to_conserved_2d(const Primitive2D& w, double gamma) {
  require(w.rho > 0.0 && w.p > 0.0, "to_conserved_2d");
  return {w.rho, w.rho * w.u, w.rho * w.v,
          w.p / (gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v)};
}

State flux(const State& u, double gamma) {
  require(admissible(u, gamma), "flux");
  const double vel = u[1] / u[0];
  const double p = pressure(u, gamma);
  return {u[1], u[1] * vel + p, vel * (u[2] + p), 0.0};
}

double wave_speed(const State& u, double gamma) {
  require(admissible(u, gamma), "wave_speed");
  return std::abs(u[1] / u[0]) + std::sqrt(gamma * pressure(u, gamma) / u[0]);
}

double max_wave_speed(const State& left, const State& right, double gamma) {
  return std::max(wave_speed(left, gamma), wave_speed(right, gamma));
}

namespace {

struct RoeAverage {
  double u;
  double v;
  double H;
  double c;
};

RoeAverage roe_average(double rl, double ul, double vl, double Hl, double rr, double ur,
                       double vr, double Hr, double gamma) {
  const double sl = std::sqrt(rl);
  const double sr = std::sqrt(rr);
  const double inv = 1.0 / (sl + sr);
  RoeAverage a{};
  a.u = (sl * ul + sr * ur) * inv;
  a.v = (sl * vl + sr * vr) * inv;
  a.H = (sl * Hl + sr * Hr) * inv;
  const double c2 = (gamma - 1.0) * (a.H - 0.5 * (a.u * a.u + a.v * a.v));
  require(c2 > 0.0, "roe_average");
  a.c = std::sqrt(c2);
  return a;
}

}  // namespace

RoePair roe_decomposition(const State& left, const State& right, double gamma) {
  require(admissible(left, gamma) && admissible(right, gamma), "roe_decomposition");
  const double Hl = (left[2] + pressure(left, gamma)) / left[0];
  const double Hr = (right[2] + pressure(right, gamma)) / right[0];
  const RoeAverage a = roe_average(left[0], left[1] / left[0], 0.0, Hl, right[0],
                                   right[1] / right[0], 0.0, Hr, gamma);
  RoePair pair;
  pair.u = a.u;
  pair.H = a.H;
  pair.c = a.c;
  const double u = a.u;
  const double c = a.c;
  const double H = a.H;
  CharFrame& f = pair.frame;
  f.size = 3;
  // columns: u - c, u, u + c
  f.R[0] = {1.0, 1.0, 1.0, 0.0};
  f.R[1] = {u - c, u, u + c, 0.0};
  f.R[2] = {H - u * c, 0.5 * u * u, H + u * c, 0.0};
  const double b1 = (gamma - 1.0) / (c * c);
  const double b2 = 0.5 * u * u * b1;
  f.Rinv[0] = {0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), 0.5 * b1, 0.0};
  f.Rinv[1] = {1.0 - b2, b1 * u, -b1, 0.0};
  f.Rinv[2] = {0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), 0.5 * b1, 0.0};
  return pair;
}

namespace {

State swap_momentum(const State& u) { return {u[0], u[2], u[1], u[3]}; }

}  // namespace

State flux_2d(const State& u, int axis, double gamma) {
  require(admissible_2d(u, gamma), "flux_2d");
  if (axis == 1) {
    return swap_momentum(flux_2d(swap_momentum(u), 0, gamma));
  }
  const double vx = u[1] / u[0];
  const double p = pressure_2d(u, gamma);
  return {u[1], u[1] * vx + p, u[2] * vx, vx * (u[3] + p)};
}

double wave_speed_2d(const State& u, int axis, double gamma) {
  require(admissible_2d(u, gamma), "wave_speed_2d");
  return std::abs(u[1 + axis] / u[0]) + std::sqrt(gamma * pressure_2d(u, gamma) / u[0]);
}

RoePair roe_decomposition_2d(const State& left, const State& right, int axis, double gamma) {
  require(admissible_2d(left, gamma) && admissible_2d(right, gamma), "roe_decomposition_2d");
  if (axis == 1) {
    RoePair p = roe_decomposition_2d(swap_momentum(left), swap_momentum(right), 0, gamma);
    // Undo the momentum permutation: R_y = P R_x, Rinv_y = Rinv_x P.
    std::swap(p.frame.R[1], p.frame.R[2]);
    for (auto& row : p.frame.Rinv) {
      std::swap(row[1], row[2]);
    }
    std::swap(p.u, p.v);
    return p;
  }
  const double Hl = (left[3] + pressure_2d(left, gamma)) / left[0];
  const double Hr = (right[3] + pressure_2d(right, gamma)) / right[0];
  const RoeAverage a = roe_average(left[0], left[1] / left[0], left[2] / left[0], Hl, right[0],
                                   right[1] / right[0], right[2] / right[0], Hr, gamma);
  RoePair pair;
  pair.u = a.u;
  pair.v = a.v;
  pair.H = a.H;
  pair.c = a.c;
  const double u = a.u;
  const double v = a.v;
  const double c = a.c;
  const double H = a.H;
  const double q2 = u * u + v * v;
  CharFrame& f = pair.frame;
  f.size = 4;
  // columns: u - c, u (entropy), u (shear), u + c
  f.R[0] = {1.0, 1.0, 0.0, 1.0};
  f.R[1] = {u - c, u, 0.0, u + c};
  f.R[2] = {v, v, 1.0, v};
  f.R[3] = {H - u * c, 0.5 * q2, v, H + u * c};
  const double b1 = (gamma - 1.0) / (c * c);
  const double b2 = 0.5 * q2 * b1;
  f.Rinv[0] = {0.5 * (b2 + u / c), -0.5 * (b1 * u + 1.0 / c), -0.5 * b1 * v, 0.5 * b1};
  f.Rinv[1] = {1.0 - b2, b1 * u, b1 * v, -b1};
  f.Rinv[2] = {-v, 0.0, 1.0, 0.0};
  f.Rinv[3] = {0.5 * (b2 - u / c), -0.5 * (b1 * u - 1.0 / c), -0.5 * b1 * v, 0.5 * b1};
  return pair;
}

}  // namespace euler

State Physics1D::flux(const State& u) const {
  switch (equation) {
    case Equation::advection:
      return {speed * u[0], 0.0, 0.0, 0.0};
    case Equation::burgers:
      return {0.5 * u[0] * u[0], 0.0, 0.0, 0.0};
    case Equation::euler:
      return euler::flux(u, gamma);
  }
  return {};
}

double Physics1D::wave_speed(const State& u) const {
  switch (equation) {
    case Equation::advection:
      return std::abs(speed);
    case Equation::burgers:
      return std::abs(u[0]);
    case Equation::euler:
      return euler::wave_speed(u, gamma);
  }
  return 0.0;
}

double Physics1D::max_wave_speed(const State& left, const State& right) const {
  return std::max(wave_speed(left), wave_speed(right));
}

bool Physics1D::admissible(const State& u) const {
  if (equation == Equation::euler) {
    return euler::admissible(u, gamma);
  }
  return std::isfinite(u[0]);
}

CharFrame Physics1D::frame(const State& left, const State& right) const {
  if (equation == Equation::euler) {
    return euler::roe_decomposition(left, right, gamma).frame;
  }
  return CharFrame::identity(1);
}

double Physics1D::interface_velocity(const State& left, const State& right) const {
  switch (equation) {
    case Equation::advection:
      return speed;
    case Equation::burgers:
      return 0.5 * (left[0] + right[0]);
    case Equation::euler: {
      // Roe velocity needs positive densities only.
      if (left[0] > 0.0 && right[0] > 0.0) {
        const double wl = std::sqrt(left[0]);
        const double wr = std::sqrt(right[0]);
        return (left[1] / wl + right[1] / wr) / (wl + wr);
      }
      return left[1] + right[1];
    }
  }
  return 0.0;
}

}  // namespace dgshock
