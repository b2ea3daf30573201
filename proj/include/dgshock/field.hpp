#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dgshock/basis.hpp"
#include "dgshock/mesh.hpp"
#include "dgshock/physics.hpp"

namespace dgshock {

/// Modal DG state on a 1D mesh: per element, per variable, coefficients
/// u^(0..k) in the local orthonormal Legendre frame.
class DGField1D {
 public:
  DGField1D(Mesh1D mesh, int degree, int num_vars);

  const Mesh1D& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int num_modes() const { return degree_ + 1; }
  int num_vars() const { return num_vars_; }
  int num_cells() const { return mesh_.size(); }

  double& operator()(int cell, int var, int l) { return data_[offset(cell, var) + l]; }
  double operator()(int cell, int var, int l) const { return data_[offset(cell, var) + l]; }

  std::span<double> modes(int cell, int var) {
    return {data_.data() + offset(cell, var), static_cast<std::size_t>(num_modes())};
  }
  std::span<const double> modes(int cell, int var) const {
    return {data_.data() + offset(cell, var), static_cast<std::size_t>(num_modes())};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  /// Cell average u^(0) * phi_0.
  double average(int cell, int var) const;
  State average_state(int cell) const;
  /// Point value at reference coordinate xi of `cell`.
  State value(const LegendreBasis& basis, int cell, double xi) const;

 private:
  std::size_t offset(int cell, int var) const {
    return (static_cast<std::size_t>(cell) * num_vars_ + var) * num_modes();
  }

  Mesh1D mesh_;
  int degree_;
  int num_vars_;
  std::vector<double> data_;
};

/// Modal Q^k state on a 2D mesh. Mode (a, b) carries x-degree a and y-degree b.
class DGField2D {
 public:
  DGField2D(Mesh2D mesh, int degree, int num_vars);

  const Mesh2D& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int num_modes_1d() const { return degree_ + 1; }
  int num_modes() const { return num_modes_1d() * num_modes_1d(); }
  int num_vars() const { return num_vars_; }
  int nx() const { return mesh_.nx(); }
  int ny() const { return mesh_.ny(); }

  double& operator()(int i, int j, int var, int a, int b) {
    return data_[offset(i, j, var) + a * num_modes_1d() + b];
  }
  double operator()(int i, int j, int var, int a, int b) const {
    return data_[offset(i, j, var) + a * num_modes_1d() + b];
  }
  std::span<double> modes(int i, int j, int var) {
    return {data_.data() + offset(i, j, var), static_cast<std::size_t>(num_modes())};
  }
  std::span<const double> modes(int i, int j, int var) const {
    return {data_.data() + offset(i, j, var), static_cast<std::size_t>(num_modes())};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  double average(int i, int j, int var) const;
  State average_state(int i, int j) const;
  State value(const LegendreBasis& basis, int i, int j, double xi, double eta) const;

 private:
  std::size_t offset(int i, int j, int var) const {
    return (static_cast<std::size_t>(mesh_.index(i, j)) * num_vars_ + var) * num_modes();
  }

  Mesh2D mesh_;
  int degree_;
  int num_vars_;
  std::vector<double> data_;
};

using InitialCondition1D = std::function<State(double)>;
using InitialCondition2D = std::function<State(double, double)>;

/// Per-element L2 projection by Gauss quadrature. `points` <= 0 selects k + 4.
DGField1D project_l2(const InitialCondition1D& f, const Mesh1D& mesh, const LegendreBasis& basis,
                     int num_vars, int points = 0);
DGField2D project_l2(const InitialCondition2D& f, const Mesh2D& mesh, const LegendreBasis& basis,
                     int num_vars, int points = 0);

/// out = a * x + b * y, element-wise over the coefficient arrays.
void linear_combination(double a, const std::vector<double>& x, double b,
                        const std::vector<double>& y, std::vector<double>& out);

}  // namespace dgshock
