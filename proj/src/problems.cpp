#include "dgshock/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dgshock/exact_riemann.hpp"

namespace dgshock {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGamma = euler::kDefaultGamma;

State conserved(double rho, double u, double p) {
  return euler::to_conserved(euler::Primitive1D{rho, u, p}, kGamma);
}

ProblemSpec riemann_problem(std::string name, euler::Primitive1D left, euler::Primitive1D right,
                            double t_final) {
  ProblemSpec p;
  p.name = std::move(name);
  p.x0 = -5.0;
  p.x1 = 5.0;
  p.level = 7;
  p.t_final = t_final;
  p.physics = Physics1D{Equation::euler, 1.0, kGamma};
  p.bc = Boundary::transmissive;
  const State ul = euler::to_conserved(left, kGamma);
  const State ur = euler::to_conserved(right, kGamma);
  p.initial = [ul, ur](double x) { return x < 0.0 ? ul : ur; };
  const ExactRiemann exact(left, right, kGamma);
  p.exact = [exact](double x, double t) { return exact.at(x, t); };
  return p;
}

}  // namespace

std::vector<std::string> problem_names() {
  return {"advect_sine", "euler_sine", "sod", "lax", "blast", "shu_osher", "double_mach"};
}

State double_mach_post_shock(double gamma) {
  const double speed = 8.25;
  const double angle = kPi / 6.0;
  return euler::to_conserved_2d(
      euler::Primitive2D{8.0, speed * std::cos(angle), -speed * std::sin(angle), 116.5}, gamma);
}

State double_mach_pre_shock(double gamma) {
  return euler::to_conserved_2d(euler::Primitive2D{1.4, 0.0, 0.0, 1.0}, gamma);
}

double double_mach_shock_x(double y, double t) {
  return 1.0 / 6.0 + (y + 20.0 * t) / std::sqrt(3.0);
}

ProblemSpec make_problem(std::string_view name) {
  if (name == "advect_sine") {
    ProblemSpec p;
    p.name = "advect_sine";
    p.x0 = -1.0;
    p.x1 = 1.0;
    p.level = 7;
    p.t_final = 2.0;
    p.physics = Physics1D{Equation::advection, 1.0, kGamma};
    p.bc = Boundary::periodic;
    p.initial = [](double x) { return State{std::sin(kPi * x), 0, 0, 0}; };
    p.exact = [](double x, double t) { return State{std::sin(kPi * (x - t)), 0, 0, 0}; };
    p.kxrcf_variables = {0};
    return p;
  }
  if (name == "euler_sine") {
    ProblemSpec p;
    p.name = "euler_sine";
    p.x0 = -1.0;
    p.x1 = 1.0;
    p.level = 7;
    p.t_final = 2.0;
    p.physics = Physics1D{Equation::euler, 1.0, kGamma};
    p.bc = Boundary::periodic;
    p.initial = [](double x) { return conserved(1.0 + 0.5 * std::sin(10.0 * kPi * x), 1.0, 1.0); };
    p.exact = [](double x, double t) {
      return conserved(1.0 + 0.5 * std::sin(10.0 * kPi * (x - t)), 1.0, 1.0);
    };
    return p;
  }
  if (name == "sod") {
    return riemann_problem("sod", {1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, 2.0);
  }
  if (name == "lax") {
    return riemann_problem("lax", {0.445, 0.698, 3.528}, {0.5, 0.0, 0.571}, 1.3);
  }
  if (name == "blast") {
    ProblemSpec p;
    p.name = "blast";
    p.x0 = 0.0;
    p.x1 = 1.0;
    p.level = 9;
    p.t_final = 0.038;
    p.physics = Physics1D{Equation::euler, 1.0, kGamma};
    p.bc = Boundary::reflective;
    p.initial = [](double x) {
      const double pressure = x < 0.1 ? 1000.0 : (x < 0.9 ? 0.01 : 100.0);
      return conserved(1.0, 0.0, pressure);
    };
    return p;
  }
  if (name == "shu_osher") {
    ProblemSpec p;
    p.name = "shu_osher";
    p.x0 = -5.0;
    p.x1 = 5.0;
    p.level = 9;
    p.t_final = 1.8;
    p.physics = Physics1D{Equation::euler, 1.0, kGamma};
    p.bc = Boundary::transmissive;
    p.initial = [](double x) {
      if (x < -4.0) {
        return conserved(3.857143, 2.629369, 10.333333);
      }
      return conserved(1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0);
    };
    return p;
  }
  if (name == "double_mach") {
    ProblemSpec p;
    p.name = "double_mach";
    p.dimension = 2;
    p.x0 = 0.0;
    p.x1 = 4.0;
    p.y0 = 0.0;
    p.y1 = 1.0;
    p.level = 9;
    p.level_y = 7;
    p.t_final = 0.2;
    p.physics = Physics1D{Equation::euler, 1.0, kGamma};
    p.bc = Boundary::transmissive;
    const State post = double_mach_post_shock();
    const State pre = double_mach_pre_shock();
    p.initial_2d = [post, pre](double x, double y) {
      return x < double_mach_shock_x(y, 0.0) ? post : pre;
    };
    p.ghost = [post, pre](const State& inside, double x, double y, double t, Side side) {
      switch (side) {
        case Side::left:
          return post;
        case Side::right:
          return transmissive(inside);
        case Side::bottom:
          return x < 1.0 / 6.0 ? post : reflect_wall(inside, side);
        case Side::top:
          break;
      }
      return x < double_mach_shock_x(y, t) ? post : pre;
    };
    p.kxrcf_variables = {0, 3};
    return p;
  }
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

}  // namespace dgshock
