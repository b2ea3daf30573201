#include "dgshock/multiwavelet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dgshock/errors.hpp"

namespace dgshock::multiwavelet {

namespace {

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

// int_{-1}^{0} x^s dx and int_0^1 x^s dx
double left_monomial_integral(int s) { return (s % 2 == 0 ? 1.0 : -1.0) / (s + 1); }
double right_monomial_integral(int s) { return 1.0 / (s + 1); }

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) {
    f *= i;
  }
  return f;
}

// Vectors in the space of piecewise polynomials: [left coeffs | right coeffs].
using Coeffs = std::vector<double>;

double inner(const Coeffs& f, const Coeffs& g, int n) {
  double acc = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      acc += f[p] * g[q] * left_monomial_integral(p + q);
      acc += f[n + p] * g[n + q] * right_monomial_integral(p + q);
    }
  }
  return acc;
}

double monomial_moment(const Coeffs& f, int s, int n) {
  double acc = 0.0;
  for (int p = 0; p < n; ++p) {
    acc += f[p] * left_monomial_integral(p + s) + f[n + p] * right_monomial_integral(p + s);
  }
  return acc;
}

}  // namespace

double PiecewisePolynomial::operator()(double x) const {
  return x < 0.0 ? horner(left, x) : horner(right, x);
}

double PiecewisePolynomial::right_moment(int m) const {
  double acc = 0.0;
  for (std::size_t p = 0; p < right.size(); ++p) {
    acc += right[p] * right_monomial_integral(static_cast<int>(p) + m);
  }
  return acc;
}

double PiecewisePolynomial::moment(int m) const {
  double acc = right_moment(m);
  for (std::size_t p = 0; p < left.size(); ++p) {
    acc += left[p] * left_monomial_integral(static_cast<int>(p) + m);
  }
  return acc;
}

AlpertBasis::AlpertBasis(int degree) : degree_(degree) {
  if (degree < 0 || degree > kMaxDegree) {
    throw std::invalid_argument("AlpertBasis: degree " + std::to_string(degree) +
                                " unsupported (0.." + std::to_string(kMaxDegree) + ")");
  }
  const int n = degree + 1;

  // Gram-Schmidt over the polynomials x^i followed by the sign-split seeds
  // sign(x) x^i; the last n orthonormal vectors span the wavelet space.
  std::vector<Coeffs> seeds;
  for (int i = 0; i < n; ++i) {
    Coeffs c(2 * n, 0.0);
    c[i] = 1.0;
    c[n + i] = 1.0;
    seeds.push_back(c);
  }
  for (int i = 0; i < n; ++i) {
    Coeffs c(2 * n, 0.0);
    c[i] = -1.0;
    c[n + i] = 1.0;
    seeds.push_back(c);
  }
  std::vector<Coeffs> ortho;
  for (Coeffs v : seeds) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const Coeffs& e : ortho) {
        const double proj = inner(v, e, n);
        for (int t = 0; t < 2 * n; ++t) {
          v[t] -= proj * e[t];
        }
      }
    }
    const double norm = std::sqrt(inner(v, v, n));
    for (double& t : v) {
      t /= norm;
    }
    ortho.push_back(v);
  }
  const std::vector<Coeffs> wavelet_space(ortho.begin() + n, ortho.end());

  // Extra vanishing moments: in wavelet-space coordinates, psi_l is orthogonal
  // to the moment vectors of x^{k+1}..x^{k+l}. Orthonormalizing those vectors
  // in order gives psi_0..psi_{k-1}; psi_k completes the basis.
  std::vector<std::vector<double>> q;
  auto orthonormalize_into = [&](std::vector<double> v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : q) {
        double proj = 0.0;
        for (int r = 0; r < n; ++r) {
          proj += v[r] * e[r];
        }
        for (int r = 0; r < n; ++r) {
          v[r] -= proj * e[r];
        }
      }
    }
    double norm = 0.0;
    for (double t : v) {
      norm += t * t;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-10) {
      return false;
    }
    for (double& t : v) {
      t /= norm;
    }
    q.push_back(v);
    return true;
  };
  for (int i = 0; i < degree; ++i) {
    std::vector<double> m(n);
    for (int r = 0; r < n; ++r) {
      m[r] = monomial_moment(wavelet_space[r], degree + 1 + i, n);
    }
    if (!orthonormalize_into(m)) {
      throw std::logic_error("AlpertBasis: dependent moment conditions");
    }
  }
  for (int r = 0; static_cast<int>(q.size()) < n && r < n; ++r) {
    std::vector<double> e(n, 0.0);
    e[r] = 1.0;
    orthonormalize_into(e);
  }

  for (int l = 0; l < n; ++l) {
    Coeffs c(2 * n, 0.0);
    for (int r = 0; r < n; ++r) {
      for (int t = 0; t < 2 * n; ++t) {
        c[t] += q[l][r] * wavelet_space[r][t];
      }
    }
    PiecewisePolynomial p;
    p.left.assign(c.begin(), c.begin() + n);
    p.right.assign(c.begin() + n, c.end());
    double at_one = p(1.0);
    if (std::abs(at_one) < 1e-12) {
      at_one = p(1.0 - 1e-3);
    }
    if (at_one < 0.0) {
      for (double& t : p.left) t = -t;
      for (double& t : p.right) t = -t;
    }
    psi_.push_back(std::move(p));
  }
}

double moment_factor(int m, int l, int level, const AlpertBasis& basis) {
  return std::ldexp(1.0, (1 - level) * m) / factorial(m) * basis.psi(l).right_moment(m);
}

std::vector<double> LevelCoefficients::top() const {
  return {values.begin() + static_cast<std::ptrdiff_t>(degree) * count,
          values.begin() + static_cast<std::ptrdiff_t>(degree + 1) * count};
}

namespace {

// Table of d^m/dxi^m phi_l at xi = -1 and +1: [m][l].
struct EdgeDerivatives {
  std::vector<std::vector<double>> left;
  std::vector<std::vector<double>> right;

  explicit EdgeDerivatives(const LegendreBasis& basis) {
    const int n = basis.size();
    left.assign(n, std::vector<double>(n));
    right.assign(n, std::vector<double>(n));
    for (int m = 0; m < n; ++m) {
      for (int l = 0; l < n; ++l) {
        left[m][l] = basis.phi_derivative(l, m, -1.0);
        right[m][l] = basis.phi_derivative(l, m, 1.0);
      }
    }
  }
};

// c^n_{m,l} for all m, l.
std::vector<std::vector<double>> moment_table(const AlpertBasis& basis, int level) {
  const int n = basis.degree() + 1;
  std::vector<std::vector<double>> c(n, std::vector<double>(n));
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l) {
      c[m][l] = moment_factor(m, l, level, basis);
    }
  }
  return c;
}

}  // namespace

LevelCoefficients level_coefficients_1d(const DGField1D& field, int var, const AlpertBasis& basis,
                                        bool periodic) {
  const int level = field.mesh().level();
  if (level < 1) {
    throw LevelError("level_coefficients_1d: need at least two elements (n >= 1)");
  }
  const int k = field.degree();
  if (basis.degree() != k) {
    throw std::invalid_argument("level_coefficients_1d: basis degree mismatch");
  }
  const LegendreBasis legendre(k);
  const EdgeDerivatives edge(legendre);
  const auto c = moment_table(basis, level);
  const int cells = field.num_cells();
  const double prefactor = std::pow(2.0, -0.5 * (level - 1));

  LevelCoefficients out;
  out.degree = k;
  out.count = cells;
  out.values.assign(static_cast<std::size_t>(k + 1) * cells, 0.0);

#pragma omp parallel for schedule(static)
  for (int j = 0; j < cells; ++j) {
    const int left_cell = j;
    int right_cell = j + 1;
    if (right_cell == cells) {
      if (!periodic) {
        continue;
      }
      right_cell = 0;
    }
    // Jumps of the m-th x-derivative on the mesh mapped onto [-1, 1].
    std::array<double, AlpertBasis::kMaxDegree + 1> jump{};
    for (int m = 0; m <= k; ++m) {
      double plus = 0.0;
      double minus = 0.0;
      for (int l = 0; l <= k; ++l) {
        plus += field(right_cell, var, l) * edge.left[m][l];
        minus += field(left_cell, var, l) * edge.right[m][l];
      }
      jump[m] = std::ldexp(plus - minus, level * m);
    }
    for (int l = 0; l <= k; ++l) {
      double acc = 0.0;
      for (int m = 0; m <= k; ++m) {
        acc += c[m][l] * jump[m];
      }
      out(l, j) = prefactor * acc;
    }
  }
  return out;
}

TwoScale twoscale_transform(const DGField1D& field, int var, const AlpertBasis& basis,
                            int offset) {
  const int level = field.mesh().level();
  if (level < 1) {
    throw LevelError("twoscale_transform: need at least two elements (n >= 1)");
  }
  const int k = field.degree();
  const LegendreBasis legendre(k);
  const Quadrature q = gauss_legendre(k + 2);
  const int cells = field.num_cells();
  const int pairs = cells / 2;
  const double prefactor = std::pow(2.0, -0.5 * (level - 1));

  TwoScale out;
  out.degree = k;
  out.count = pairs;
  out.scaling.assign(static_cast<std::size_t>(k + 1) * pairs, 0.0);
  out.detail.assign(static_cast<std::size_t>(k + 1) * pairs, 0.0);
  for (int j = 0; j < pairs; ++j) {
    for (int half = 0; half < 2; ++half) {
      const int cell = (2 * j + half + offset) % cells;
      for (int p = 0; p < q.size(); ++p) {
        // eta in [-1, 0) for half 0, [0, 1] for half 1; xi = 2 eta -/+ 1
        const double eta = 0.5 * (q.nodes[p] + (half == 0 ? -1.0 : 1.0));
        const double w = 0.5 * q.weights[p];
        const double u = legendre.evaluate(field.modes(cell, var), q.nodes[p]);
        for (int l = 0; l <= k; ++l) {
          out.scaling[static_cast<std::size_t>(l) * pairs + j] +=
              prefactor * w * u * legendre.phi(l, eta);
          out.detail[static_cast<std::size_t>(l) * pairs + j] += prefactor * w * u * basis(l, eta);
        }
      }
    }
  }
  return out;
}

namespace {

// S[h][lx][a] = int over the h-th half of a coarse pair of phi_a(xi) times
// the coarse scaling function phi^{n-1}_{lx}, on the mesh mapped onto [-1, 1].
std::vector<std::vector<std::vector<double>>> coarse_scaling_overlaps(const LegendreBasis& legendre,
                                                                      int level) {
  const int n = legendre.size();
  const Quadrature q = gauss_legendre(n + 1);
  const double scale = std::pow(2.0, 0.5 * (level - 1)) * std::ldexp(1.0, -level);
  std::vector<std::vector<std::vector<double>>> S(
      2, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int h = 0; h < 2; ++h) {
    for (int lx = 0; lx < n; ++lx) {
      for (int a = 0; a < n; ++a) {
        double acc = 0.0;
        for (int p = 0; p < q.size(); ++p) {
          const double xi = q.nodes[p];
          acc += q.weights[p] * legendre.phi(a, xi) * legendre.phi(lx, 0.5 * (xi + 2.0 * h - 1.0));
        }
        S[h][lx][a] = scale * acc;
      }
    }
  }
  return S;
}

}  // namespace

outlier::IndicationMatrix mode_coefficients_2d(const DGField2D& field, int var,
                                               const AlpertBasis& basis, Mode mode, int lx,
                                               int ly, bool periodic_x, bool periodic_y) {
  const int level_x = field.mesh().x().level();
  const int level_y = field.mesh().y().level();
  if (level_x < 1 || level_y < 1) {
    throw LevelError("mode_coefficients_2d: need n_x, n_y >= 1");
  }
  const int k = field.degree();
  if (basis.degree() != k) {
    throw std::invalid_argument("mode_coefficients_2d: basis degree mismatch");
  }
  const int n = k + 1;
  const int nx = field.nx();
  const int ny = field.ny();
  const LegendreBasis legendre(k);
  const EdgeDerivatives edge(legendre);
  const auto cx = moment_table(basis, level_x);
  const auto cy = moment_table(basis, level_y);
  const double pre_x = std::pow(2.0, -0.5 * (level_x - 1));
  const double pre_y = std::pow(2.0, -0.5 * (level_y - 1));

  auto wrap = [](int idx, int size, bool periodic) {
    if (idx < size) return idx;
    return periodic ? idx - size : -1;
  };

  if (mode == Mode::gamma) {
    outlier::IndicationMatrix out(nx, ny);
#pragma omp parallel for schedule(static)
    for (int jy = 0; jy < ny; ++jy) {
      const int up = wrap(jy + 1, ny, periodic_y);
      for (int ix = 0; ix < nx; ++ix) {
        const int right = wrap(ix + 1, nx, periodic_x);
        if (up < 0 || right < 0) {
          out(ix, jy) = 0.0;
          continue;
        }
        double acc = 0.0;
        for (int mx = 0; mx < n; ++mx) {
          for (int my = 0; my < n; ++my) {
            // Corner values of the (mx, my) mixed derivative from each quadrant.
            auto corner = [&](int i, int j, const std::vector<double>& ex,
                              const std::vector<double>& ey) {
              double v = 0.0;
              for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                  v += field(i, j, var, a, b) * ex[a] * ey[b];
                }
              }
              return v;
            };
            const double dd = corner(right, up, edge.left[mx], edge.left[my]) -
                              corner(right, jy, edge.left[mx], edge.right[my]) -
                              corner(ix, up, edge.right[mx], edge.left[my]) +
                              corner(ix, jy, edge.right[mx], edge.right[my]);
            acc += cx[mx][lx] * cy[my][ly] * std::ldexp(dd, level_x * mx + level_y * my);
          }
        }
        out(ix, jy) = pre_x * pre_y * acc;
      }
    }
    return out;
  }

  const auto S = coarse_scaling_overlaps(legendre, mode == Mode::alpha ? level_x : level_y);
  if (mode == Mode::alpha) {
    // Jumps across y_{j+1/2}, integrated against x scaling functions over x-pairs.
    outlier::IndicationMatrix out(nx / 2, ny);
#pragma omp parallel for schedule(static)
    for (int jy = 0; jy < ny; ++jy) {
      const int up = wrap(jy + 1, ny, periodic_y);
      for (int i = 0; i < nx / 2; ++i) {
        if (up < 0) {
          out(i, jy) = 0.0;
          continue;
        }
        double acc = 0.0;
        for (int my = 0; my < n; ++my) {
          double integral = 0.0;
          for (int h = 0; h < 2; ++h) {
            const int col = 2 * i + h;
            for (int a = 0; a < n; ++a) {
              double jump = 0.0;
              for (int b = 0; b < n; ++b) {
                jump += field(col, up, var, a, b) * edge.left[my][b] -
                        field(col, jy, var, a, b) * edge.right[my][b];
              }
              integral += S[h][lx][a] * jump;
            }
          }
          acc += cy[my][ly] * std::ldexp(integral, level_y * my);
        }
        out(i, jy) = pre_y * acc;
      }
    }
    return out;
  }

  // beta: jumps across x_{i+1/2}, integrated against y scaling functions over y-pairs.
  outlier::IndicationMatrix out(nx, ny / 2);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny / 2; ++j) {
    for (int ix = 0; ix < nx; ++ix) {
      const int right = wrap(ix + 1, nx, periodic_x);
      if (right < 0) {
        out(ix, j) = 0.0;
        continue;
      }
      double acc = 0.0;
      for (int mx = 0; mx < n; ++mx) {
        double integral = 0.0;
        for (int h = 0; h < 2; ++h) {
          const int row = 2 * j + h;
          for (int b = 0; b < n; ++b) {
            double jump = 0.0;
            for (int a = 0; a < n; ++a) {
              jump += field(right, row, var, a, b) * edge.left[mx][a] -
                      field(ix, row, var, a, b) * edge.right[mx][a];
            }
            integral += S[h][ly][b] * jump;
          }
        }
        acc += cx[mx][lx] * std::ldexp(integral, level_x * mx);
      }
      out(ix, j) = pre_x * acc;
    }
  }
  return out;
}

outlier::IndicationMatrix mode_coefficients_2d(const DGField2D& field, int var,
                                               const AlpertBasis& basis, Mode mode,
                                               bool periodic_x, bool periodic_y) {
  const int k = field.degree();
  switch (mode) {
    case Mode::alpha:
      return mode_coefficients_2d(field, var, basis, mode, 0, k, periodic_x, periodic_y);
    case Mode::beta:
      return mode_coefficients_2d(field, var, basis, mode, k, 0, periodic_x, periodic_y);
    case Mode::gamma:
      break;
  }
  return mode_coefficients_2d(field, var, basis, mode, k, k, periodic_x, periodic_y);
}

}  // namespace dgshock::multiwavelet
