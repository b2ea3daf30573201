#include "dgshock/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dgshock {

Quadrature gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one point");
  }
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    const double pn = (n == 1) ? x : p1;
    const double pnm1 = (n == 1) ? 1.0 : p0;
    dp = n * (x * pn - pnm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    q.nodes[n / 2] = 0.0;
  }
  return q;
}

double legendre(int l, double x) {
  if (l < 0) {
    throw std::domain_error("legendre: negative degree");
  }
  if (l == 0) {
    return 1.0;
  }
  double p0 = 1.0;
  double p1 = x;
  for (int j = 1; j < l; ++j) {
    const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

namespace {

// Monomial coefficients of P^(l), lowest order first.
std::vector<double> legendre_monomials(int l) {
  std::vector<double> prev{1.0};
  if (l == 0) {
    return prev;
  }
  std::vector<double> cur{0.0, 1.0};
  for (int j = 1; j < l; ++j) {
    std::vector<double> next(j + 2, 0.0);
    for (int i = 0; i <= j; ++i) {
      next[i + 1] += (2.0 * j + 1.0) * cur[i] / (j + 1.0);
    }
    for (int i = 0; i < j; ++i) {
      next[i] -= j * prev[i] / (j + 1.0);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

double legendre_derivative(int l, int m, double x) {
  if (l < 0 || m < 0) {
    throw std::domain_error("legendre_derivative: negative order");
  }
  if (m == 0) {
    return legendre(l, x);
  }
  if (m > l) {
    return 0.0;
  }
  std::vector<double> c = legendre_monomials(l);
  for (int d = 0; d < m; ++d) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      c[i] = c[i + 1] * static_cast<double>(i + 1);
    }
    c.pop_back();
  }
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

double LegendreBasis::norm_factor(int l) { return std::sqrt(l + 0.5); }

LegendreBasis::LegendreBasis(int degree) : degree_(degree), quad_(gauss_legendre(degree + 2)) {
  if (degree < 0) {
    throw std::domain_error("LegendreBasis: negative degree");
  }
  const int nq = quad_.size();
  phi_nodes_.resize(nq * size());
  dphi_nodes_.resize(nq * size());
  for (int q = 0; q < nq; ++q) {
    for (int l = 0; l <= degree_; ++l) {
      phi_nodes_[q * size() + l] = phi(l, quad_.nodes[q]);
      dphi_nodes_[q * size() + l] = phi_derivative(l, 1, quad_.nodes[q]);
    }
  }
  for (int l = 0; l <= degree_; ++l) {
    phi_left_.push_back(phi(l, -1.0));
    phi_right_.push_back(phi(l, 1.0));
  }
}

void LegendreBasis::check(int l, double x) const {
  if (l < 0 || l > degree_) {
    throw std::domain_error("LegendreBasis: degree " + std::to_string(l) + " outside [0, " +
                            std::to_string(degree_) + "]");
  }
  if (!(std::abs(x) <= 1.0 + 1e-14)) {
    throw std::domain_error("LegendreBasis: reference coordinate outside [-1, 1]");
  }
}

double LegendreBasis::phi(int l, double x) const {
  check(l, x);
  return norm_factor(l) * legendre(l, x);
}

double LegendreBasis::phi_derivative(int l, int m, double x) const {
  check(l, x);
  return norm_factor(l) * legendre_derivative(l, m, x);
}

double LegendreBasis::evaluate(std::span<const double> coeffs, double x, int derivative) const {
  if (static_cast<int>(coeffs.size()) != size()) {
    throw std::invalid_argument("LegendreBasis::evaluate: expected k + 1 coefficients");
  }
  double acc = 0.0;
  for (int l = 0; l <= degree_; ++l) {
    acc += coeffs[l] * phi_derivative(l, derivative, x);
  }
  return acc;
}

}  // namespace dgshock
