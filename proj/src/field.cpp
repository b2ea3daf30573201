#include "dgshock/field.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace dgshock {

namespace {

const double kPhi0 = 1.0 / std::sqrt(2.0);

}  // namespace

DGField1D::DGField1D(Mesh1D mesh, int degree, int num_vars)
    : mesh_(mesh), degree_(degree), num_vars_(num_vars) {
  if (num_vars < 1 || num_vars > kMaxVars) {
    throw std::invalid_argument("DGField1D: unsupported variable count");
  }
  data_.assign(static_cast<std::size_t>(mesh_.size()) * num_vars_ * num_modes(), 0.0);
}

double DGField1D::average(int cell, int var) const { return (*this)(cell, var, 0) * kPhi0; }

State DGField1D::average_state(int cell) const {
  State s{};
  for (int v = 0; v < num_vars_; ++v) {
    s[v] = average(cell, v);
  }
  return s;
}

State DGField1D::value(const LegendreBasis& basis, int cell, double xi) const {
  State s{};
  for (int v = 0; v < num_vars_; ++v) {
    s[v] = basis.evaluate(modes(cell, v), xi);
  }
  return s;
}

DGField2D::DGField2D(Mesh2D mesh, int degree, int num_vars)
    : mesh_(mesh), degree_(degree), num_vars_(num_vars) {
  if (num_vars < 1 || num_vars > kMaxVars) {
    throw std::invalid_argument("DGField2D: unsupported variable count");
  }
  data_.assign(static_cast<std::size_t>(mesh_.size()) * num_vars_ * num_modes(), 0.0);
}

double DGField2D::average(int i, int j, int var) const {
  return (*this)(i, j, var, 0, 0) * kPhi0 * kPhi0;
}

State DGField2D::average_state(int i, int j) const {
  State s{};
  for (int v = 0; v < num_vars_; ++v) {
    s[v] = average(i, j, v);
  }
  return s;
}

State DGField2D::value(const LegendreBasis& basis, int i, int j, double xi, double eta) const {
  const int n = num_modes_1d();
  std::array<double, 16> px{};
  std::array<double, 16> py{};
  for (int l = 0; l < n; ++l) {
    px[l] = basis.phi(l, xi);
    py[l] = basis.phi(l, eta);
  }
  State s{};
  for (int v = 0; v < num_vars_; ++v) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        acc += (*this)(i, j, v, a, b) * px[a] * py[b];
      }
    }
    s[v] = acc;
  }
  return s;
}

DGField1D project_l2(const InitialCondition1D& f, const Mesh1D& mesh, const LegendreBasis& basis,
                     int num_vars, int points) {
  const Quadrature q = gauss_legendre(points > 0 ? points : basis.degree() + 4);
  DGField1D field(mesh, basis.degree(), num_vars);
  for (int j = 0; j < mesh.size(); ++j) {
    for (int p = 0; p < q.size(); ++p) {
      const State u = f(mesh.to_physical(j, q.nodes[p]));
      for (int l = 0; l <= basis.degree(); ++l) {
        const double w = q.weights[p] * basis.phi(l, q.nodes[p]);
        for (int v = 0; v < num_vars; ++v) {
          field(j, v, l) += w * u[v];
        }
      }
    }
  }
  return field;
}

DGField2D project_l2(const InitialCondition2D& f, const Mesh2D& mesh, const LegendreBasis& basis,
                     int num_vars, int points) {
  const Quadrature q = gauss_legendre(points > 0 ? points : basis.degree() + 4);
  DGField2D field(mesh, basis.degree(), num_vars);
  const int n = basis.size();
  for (int j = 0; j < mesh.ny(); ++j) {
    for (int i = 0; i < mesh.nx(); ++i) {
      for (int px = 0; px < q.size(); ++px) {
        const double x = mesh.x().to_physical(i, q.nodes[px]);
        for (int py = 0; py < q.size(); ++py) {
          const double y = mesh.y().to_physical(j, q.nodes[py]);
          const State u = f(x, y);
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
              const double w = q.weights[px] * q.weights[py] * basis.phi(a, q.nodes[px]) *
                               basis.phi(b, q.nodes[py]);
              for (int v = 0; v < num_vars; ++v) {
                field(i, j, v, a, b) += w * u[v];
              }
            }
          }
        }
      }
    }
  }
  return field;
}

void linear_combination(double a, const std::vector<double>& x, double b,
                        const std::vector<double>& y, std::vector<double>& out) {
  const std::size_t n = x.size();
  out.resize(n);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a * x[i] + b * y[i];
  }
}

}  // namespace dgshock
