#include "dgshock/exact_riemann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgshock {

ExactRiemann::ExactRiemann(euler::Primitive1D left, euler::Primitive1D right, double gamma)
    : l_(left), r_(right), gamma_(gamma) {
  if (!(l_.rho > 0 && r_.rho > 0 && l_.p > 0 && r_.p > 0)) {
    throw std::invalid_argument("ExactRiemann: non-positive density or pressure");
  }
  cl_ = std::sqrt(gamma_ * l_.p / l_.rho);
  cr_ = std::sqrt(gamma_ * r_.p / r_.rho);
  if (2.0 / (gamma_ - 1.0) * (cl_ + cr_) <= r_.u - l_.u) {
    throw std::invalid_argument("ExactRiemann: initial data generate vacuum");
  }
  // Two-rarefaction guess, then Newton on f_L + f_R + du = 0.
  const double z = (gamma_ - 1.0) / (2.0 * gamma_);
  double p = std::pow((cl_ + cr_ - 0.5 * (gamma_ - 1.0) * (r_.u - l_.u)) /
                          (cl_ / std::pow(l_.p, z) + cr_ / std::pow(r_.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-12);
  for (int it = 0; it < 100; ++it) {
    double fl, dfl, fr, dfr;
    side_function(p, l_, cl_, fl, dfl);
    side_function(p, r_, cr_, fr, dfr);
    double next = p - (fl + fr + r_.u - l_.u) / (dfl + dfr);
    if (next <= 0.0) {
      next = 0.5 * p;
    }
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-15) {
      break;
    }
  }
  double fl, dfl, fr, dfr;
  side_function(p, l_, cl_, fl, dfl);
  side_function(p, r_, cr_, fr, dfr);
  p_star_ = p;
  u_star_ = 0.5 * (l_.u + r_.u) + 0.5 * (fr - fl);
}

void ExactRiemann::side_function(double p, const euler::Primitive1D& w, double c, double& f,
                                 double& df) const {
  const double g = gamma_;
  if (p > w.p) {
    const double A = 2.0 / ((g + 1.0) * w.rho);
    const double B = (g - 1.0) / (g + 1.0) * w.p;
    const double q = std::sqrt(A / (p + B));
    f = (p - w.p) * q;
    df = q * (1.0 - 0.5 * (p - w.p) / (p + B));
  } else {
    const double ratio = p / w.p;
    f = 2.0 * c / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
    df = 1.0 / (w.rho * c) * std::pow(ratio, -(g + 1.0) / (2.0 * g));
  }
}

euler::Primitive1D ExactRiemann::sample(double s) const {
  const double g = gamma_;
  const double g1 = (g - 1.0) / (g + 1.0);
  if (s <= u_star_) {
    const auto& w = l_;
    const double c = cl_;
    if (p_star_ > w.p) {
      const double ratio = p_star_ / w.p;
      const double shock = w.u - c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
      if (s <= shock) {
        return w;
      }
      return {w.rho * (ratio + g1) / (g1 * ratio + 1.0), u_star_, p_star_};
    }
    const double head = w.u - c;
    const double c_star = c * std::pow(p_star_ / w.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star_ - c_star;
    if (s <= head) {
      return w;
    }
    if (s >= tail) {
      return {w.rho * std::pow(p_star_ / w.p, 1.0 / g), u_star_, p_star_};
    }
    const double cf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * (w.u - s));
    const double rho = w.rho * std::pow(cf / c, 2.0 / (g - 1.0));
    return {rho, 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + s), w.p * std::pow(cf / c, 2.0 * g / (g - 1.0))};
  }
  const auto& w = r_;
  const double c = cr_;
  if (p_star_ > w.p) {
    const double ratio = p_star_ / w.p;
    const double shock = w.u + c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    if (s >= shock) {
      return w;
    }
    return {w.rho * (ratio + g1) / (g1 * ratio + 1.0), u_star_, p_star_};
  }
  const double head = w.u + c;
  const double c_star = c * std::pow(p_star_ / w.p, (g - 1.0) / (2.0 * g));
  const double tail = u_star_ + c_star;
  if (s >= head) {
    return w;
  }
  if (s <= tail) {
    return {w.rho * std::pow(p_star_ / w.p, 1.0 / g), u_star_, p_star_};
  }
  const double cf = 2.0 / (g + 1.0) * (c - 0.5 * (g - 1.0) * (w.u - s));
  const double rho = w.rho * std::pow(cf / c, 2.0 / (g - 1.0));
  return {rho, 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + s), w.p * std::pow(cf / c, 2.0 * g / (g - 1.0))};
}

State ExactRiemann::at(double x, double t, double x0) const {
  if (t <= 0.0) {
    return euler::to_conserved(x < x0 ? l_ : r_, gamma_);
  }
  return euler::to_conserved(sample((x - x0) / t), gamma_);
}

}  // namespace dgshock
