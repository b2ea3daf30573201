#pragma once

#include <vector>

#include "dgshock/field.hpp"
#include "dgshock/outlier.hpp"

namespace dgshock::multiwavelet {

/// Polynomial of degree <= k on [-1, 0) and another on [0, 1], stored as
/// monomial coefficients (lowest order first).
struct PiecewisePolynomial {
  std::vector<double> left;
  std::vector<double> right;

  double operator()(double x) const;
  /// Integral of x^m times this function over [0, 1].
  double right_moment(int m) const;
  /// Integral of x^m times this function over [-1, 1].
  double moment(int m) const;
};

/// Alpert multiwavelets psi_0..psi_k on [-1, 1]: orthonormal, orthogonal to
/// all polynomials of degree <= k, with psi_l additionally orthogonal to
/// x^{k+1}..x^{k+l}. Each psi_l is oriented so that psi_l(1-) > 0.
class AlpertBasis {
 public:
  static constexpr int kMaxDegree = 3;

  explicit AlpertBasis(int degree);

  int degree() const { return degree_; }
  const PiecewisePolynomial& psi(int l) const { return psi_.at(l); }
  double operator()(int l, double x) const { return psi_.at(l)(x); }

 private:
  int degree_;
  std::vector<PiecewisePolynomial> psi_;
};

/// c^n_{m,l} = 2^{(1-n) m} / m! * int_0^1 x^m psi_l(x) dx.
double moment_factor(int m, int l, int level, const AlpertBasis& basis);

/// Multiwavelet coefficients on level n-1 after renumbering: entry (l, j)
/// belongs to interface x_{j+1/2}, j = 0..2^n - 1.
struct LevelCoefficients {
  int degree = 0;
  int count = 0;
  std::vector<double> values;  ///< [l * count + j]

  double operator()(int l, int j) const { return values[static_cast<std::size_t>(l) * count + j]; }
  double& operator()(int l, int j) { return values[static_cast<std::size_t>(l) * count + j]; }
  /// The degree-k row used for indication.
  std::vector<double> top() const;
};

/// Level n-1 coefficients of variable `var` from derivative jumps. The last
/// interface wraps around under periodic boundaries and carries a zero jump
/// otherwise. The mesh is mapped onto [-1, 1] for all scalings.
LevelCoefficients level_coefficients_1d(const DGField1D& field, int var, const AlpertBasis& basis,
                                        bool periodic);

/// Direct L2 projections of the (mapped) DG solution onto the level n-1
/// scaling functions and multiwavelets. `offset` = 1 pairs elements
/// (2j+1, 2j+2), wrapping periodically; `offset` = 0 is the dyadic pairing.
struct TwoScale {
  int degree = 0;
  int count = 0;               ///< 2^{n-1}
  std::vector<double> scaling;  ///< [l * count + j]
  std::vector<double> detail;   ///< [l * count + j]

  double s(int l, int j) const { return scaling[static_cast<std::size_t>(l) * count + j]; }
  double d(int l, int j) const { return detail[static_cast<std::size_t>(l) * count + j]; }
};

TwoScale twoscale_transform(const DGField1D& field, int var, const AlpertBasis& basis,
                            int offset = 0);

enum class Mode { alpha, beta, gamma };

/// 2D level coefficients for one mode and one index pair (lx, ly).
///  alpha: (2^{nx-1}) x (2^{ny}) values, x-pairs of elements, renumbered in y.
///  beta:  (2^{nx}) x (2^{ny-1}) values, renumbered in x.
///  gamma: (2^{nx}) x (2^{ny}) values, renumbered in both directions.
outlier::IndicationMatrix mode_coefficients_2d(const DGField2D& field, int var,
                                               const AlpertBasis& basis, Mode mode, int lx,
                                               int ly, bool periodic_x = false,
                                               bool periodic_y = false);

/// Same with the indication indices (0,k), (k,0), (k,k).
outlier::IndicationMatrix mode_coefficients_2d(const DGField2D& field, int var,
                                               const AlpertBasis& basis, Mode mode,
                                               bool periodic_x = false, bool periodic_y = false);

}  // namespace dgshock::multiwavelet
