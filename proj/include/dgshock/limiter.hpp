#pragma once

#include <span>

#include "dgshock/field.hpp"
#include "dgshock/indicator_types.hpp"
#include "dgshock/solver1d.hpp"
#include "dgshock/solver2d.hpp"

namespace dgshock::limiter {

/// sqrt(l - 1/2) / sqrt(l + 1/2).
double beta(int l);

/// Counts for one application of the limiter.
struct LimiterReport {
  int flagged = 0;
  int modified = 0;
  int fallbacks = 0;

  LimiterReport& operator+=(const LimiterReport& o) {
    flagged += o.flagged;
    modified += o.modified;
    fallbacks += o.fallbacks;
    return *this;
  }
};

/// Moment limiter on one scalar coefficient sequence, from degree k down to
/// 1, stopping at the first coefficient the minmod leaves unchanged. The
/// mean u[0] is never touched. Returns true when any coefficient changed.
bool moment_limit_cell(std::span<double> u, std::span<const double> left,
                       std::span<const double> right);

/// Limits every flagged element, in characteristic variables for systems,
/// followed by the positivity fallback. Neighbor data are read from a
/// snapshot of the input, so the result does not depend on the order in
/// which cells are processed. Flagged cells are processed in parallel.
LimiterReport limit_flagged(DGField1D& u, const Discretization1D& d, const TroubledCellMask& mask);

/// Serial reference for limit_flagged.
LimiterReport limit_flagged_reference(DGField1D& u, const Discretization1D& d,
                                      const TroubledCellMask& mask);

/// Scalar Q^k moment limiter for one cell given its four axis neighbors
/// (coefficients indexed a * (k + 1) + b). Returns true when modified.
bool moment_limit_2d(std::span<double> u, std::span<const double> left,
                     std::span<const double> right, std::span<const double> bottom,
                     std::span<const double> top, int degree);

LimiterReport limit_flagged_2d(DGField2D& u, const Discretization2D& d,
                               const TroubledCellMask& mask);

}  // namespace dgshock::limiter
