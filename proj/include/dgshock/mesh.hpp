#pragma once

#include <stdexcept>

namespace dgshock {

/// Uniform dyadic mesh of 2^level half-open elements covering [a, b).
class Mesh1D {
 public:
  Mesh1D(int level, double a, double b) : level_(level), a_(a), b_(b) {
    if (level < 0 || level > 24) {
      throw std::invalid_argument("Mesh1D: level out of range");
    }
    if (!(b > a)) {
      throw std::invalid_argument("Mesh1D: empty domain");
    }
  }

  int level() const { return level_; }
  int size() const { return 1 << level_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double dx() const { return (b_ - a_) / size(); }

  /// x_{j-1/2}, for j in [0, size()]; boundary j == size() is exactly b.
  double boundary(int j) const { return j == size() ? b_ : a_ + j * dx(); }
  double center(int j) const { return a_ + (j + 0.5) * dx(); }
  /// Physical coordinate of reference point xi in element j.
  double to_physical(int j, double xi) const { return center(j) + 0.5 * dx() * xi; }
  /// Element containing x under the half-open convention; x == b maps to the last element.
  int locate(double x) const {
    if (x < a_ || x > b_) {
      throw std::out_of_range("Mesh1D::locate: point outside domain");
    }
    int j = static_cast<int>((x - a_) / dx());
    if (j >= size()) {
      j = size() - 1;
    }
    if (x < boundary(j)) {
      --j;
    } else if (j + 1 < size() && x >= boundary(j + 1)) {
      ++j;
    }
    return j;
  }

 private:
  int level_;
  double a_;
  double b_;
};

/// Uniform 2^nx x 2^ny rectangular mesh over [x0, x1) x [y0, y1).
class Mesh2D {
 public:
  Mesh2D(int level_x, int level_y, double x0, double x1, double y0, double y1)
      : x_(level_x, x0, x1), y_(level_y, y0, y1) {}

  const Mesh1D& x() const { return x_; }
  const Mesh1D& y() const { return y_; }
  int nx() const { return x_.size(); }
  int ny() const { return y_.size(); }
  int size() const { return nx() * ny(); }
  double dx() const { return x_.dx(); }
  double dy() const { return y_.dx(); }
  /// Row-major cell index, x fastest.
  int index(int i, int j) const { return j * nx() + i; }

 private:
  Mesh1D x_;
  Mesh1D y_;
};

}  // namespace dgshock
