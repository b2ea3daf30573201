#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dgshock/field.hpp"
#include "dgshock/indicator_types.hpp"
#include "dgshock/multiwavelet.hpp"
#include "dgshock/outlier.hpp"
#include "dgshock/solver1d.hpp"
#include "dgshock/solver2d.hpp"

namespace dgshock::indicators {

/// s * min |a_j| when all a_j share the sign s, else 0.
double minmod(std::span<const double> a);
double minmod(std::initializer_list<double> a);
/// TVB-modified minmod: a_1 when |a_1| <= gate, minmod otherwise.
double tvb_minmod(double a1, double a2, double a3, double gate);

/// How entries of an indication vector map to elements.
enum class Geometry {
  interface,  ///< entry j belongs to x_{j+1/2}: elements j and j+1
  element,    ///< entry j belongs to element j
};

struct IndicationVector {
  std::vector<double> values;
  Geometry geometry = Geometry::element;
  std::string variable;
};

/// Element flags for flagged vector entries. Interface entries mark both
/// adjacent elements; the right neighbor of the last interface wraps when
/// periodic and is dropped otherwise.
TroubledCellMask flags_to_cells(Geometry geometry, std::span<const int> flagged, int num_cells,
                                bool periodic);

// ---------------------------------------------------------------- 1D ------

/// Flags elements j and j+1 whenever |d_j| > C * max_i |d_i|.
TroubledCellMask mw_fixed(std::span<const double> top, double C, bool periodic);

struct KxrcfValues {
  std::vector<double> normalized;  ///< I-hat_j
  std::vector<double> raw;         ///< I_j
};

/// Inflow-edge jump indicator for conserved variable `var`.
KxrcfValues kxrcf(const DGField1D& u, const Discretization1D& d, int var);

struct MinmodValues {
  TroubledCellMask mask;               ///< TVB-modified minmod changed a boundary deviation
  std::vector<std::vector<double>> d1;  ///< u-tilde per characteristic field
  std::vector<std::vector<double>> d2;  ///< u-double-tilde per characteristic field
};

/// Boundary deviations in characteristic variables. Right-edge quantities use
/// the Roe frame between the cell and its right neighbor, left-edge
/// quantities the frame between the left neighbor and the cell. Vector
/// entries below 1e-10 of the largest one are stored as zero. Without
/// `with_mask` the TVB test is skipped and the mask stays empty.
MinmodValues minmod_tvb(const DGField1D& u, const Discretization1D& d, double M,
                        bool with_mask = true);

/// Variables fed to the multiwavelet and KXRCF indicators.
std::vector<int> default_variables(IndicatorKind kind, const Physics1D& physics);
std::string variable_name(const Physics1D& physics, int var);

/// Indication vectors for outlier detection.
std::vector<IndicationVector> indication_vectors(IndicatorKind kind, const DGField1D& u,
                                                 const Discretization1D& d,
                                                 const IndicatorSettings& settings);

/// Outlier detection on every vector, union of the mapped element flags.
TroubledCellMask detect_vectors(const std::vector<IndicationVector>& vectors, int num_cells,
                                bool periodic, const outlier::DetectorOptions& options);

/// Fixed-parameter variant of the configured indicator.
TroubledCellMask fixed_mask(const DGField1D& u, const Discretization1D& d,
                            const IndicatorSettings& settings);

/// Full indication in the configured mode.
TroubledCellMask indicate(const DGField1D& u, const Discretization1D& d,
                          const IndicatorSettings& settings);

// ---------------------------------------------------------------- 2D ------

/// Elements flagged by entries of one 2D multiwavelet mode matrix.
void mark_mode_cells(multiwavelet::Mode mode, const outlier::Mask2D& flags, int nx, int ny,
                     bool periodic_x, bool periodic_y, TroubledCellMask& mask);

/// Inequality (per mode maximum) on alpha, beta and gamma separately; union.
TroubledCellMask mw_fixed_2d(const outlier::IndicationMatrix& alpha,
                             const outlier::IndicationMatrix& beta,
                             const outlier::IndicationMatrix& gamma, double C, int nx, int ny,
                             bool periodic_x = false, bool periodic_y = false);

struct Kxrcf2DValues {
  outlier::IndicationMatrix normalized;
  outlier::IndicationMatrix raw;
};

Kxrcf2DValues kxrcf_2d(const DGField2D& u, const Discretization2D& d, double t, int var);

/// Characteristic first-order coefficients u^(1,0) (x frame) and u^(0,1)
/// (y frame) of every cell, one matrix per field; fixed-mode flags in `mask`.
struct Minmod2DValues {
  TroubledCellMask mask;
  std::vector<outlier::IndicationMatrix> x_slopes;
  std::vector<outlier::IndicationMatrix> y_slopes;
};

Minmod2DValues minmod_tvb_2d(const DGField2D& u, const Discretization2D& d, double M);

/// Outlier multiwavelet mode: alpha and beta of one variable share the 1e-10
/// rounding floor of the 1D minmod vectors.
TroubledCellMask indicate_2d(const DGField2D& u, const Discretization2D& d, double t,
                             const IndicatorSettings& settings);

}  // namespace dgshock::indicators
