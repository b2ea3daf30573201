#pragma once

#include <span>
#include <vector>

namespace dgshock {

/// Gauss-Legendre rule on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
Quadrature gauss_legendre(int n);

/// Legendre polynomial P^(l)(x) by the three-term recurrence.
double legendre(int l, double x);

/// m-th derivative of P^(l) at x.
double legendre_derivative(int l, int m, double x);

/// Orthonormal (scaled) Legendre basis phi_l = sqrt(l + 1/2) P^(l) on [-1, 1]
/// for l = 0..k, with cached Gauss point tables used by the solver kernels.
class LegendreBasis {
 public:
  explicit LegendreBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }

  /// phi_l(x). Throws std::domain_error for l outside [0, k] or |x| > 1.
  double phi(int l, double x) const;
  /// m-th derivative of phi_l with respect to the reference coordinate.
  double phi_derivative(int l, int m, double x) const;

  /// sum_l coeffs[l] * d^m/dx^m phi_l(x).
  double evaluate(std::span<const double> coeffs, double x, int derivative = 0) const;

  /// Gauss rule with k + 2 points used for every element integral.
  const Quadrature& quadrature() const { return quad_; }
  /// phi_l at quadrature node q, stored row-major [q][l].
  double phi_at_node(int q, int l) const { return phi_nodes_[q * size() + l]; }
  double dphi_at_node(int q, int l) const { return dphi_nodes_[q * size() + l]; }
  /// phi_l(-1) and phi_l(+1).
  double phi_left(int l) const { return phi_left_[l]; }
  double phi_right(int l) const { return phi_right_[l]; }

  /// Normalization sqrt(l + 1/2).
  static double norm_factor(int l);

 private:
  void check(int l, double x) const;

  int degree_;
  Quadrature quad_;
  std::vector<double> phi_nodes_;
  std::vector<double> dphi_nodes_;
  std::vector<double> phi_left_;
  std::vector<double> phi_right_;
};

}  // namespace dgshock
