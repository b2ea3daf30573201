#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dgshock/outlier.hpp"

namespace dgshock {

enum class IndicatorKind { multiwavelet, kxrcf, minmod_tvb };
enum class ThresholdMode { fixed, outlier };

/// One flag per element (2D: x index fastest).
using TroubledCellMask = std::vector<std::uint8_t>;

std::string_view to_string(IndicatorKind kind);
std::string_view to_string(ThresholdMode mode);
IndicatorKind parse_indicator(std::string_view name);
ThresholdMode parse_mode(std::string_view name);

/// Indicator choice plus the parameters of the fixed-threshold variants.
/// The fixed parameters are ignored in outlier mode.
struct IndicatorSettings {
  IndicatorKind kind = IndicatorKind::multiwavelet;
  ThresholdMode mode = ThresholdMode::outlier;
  double mw_fraction = 0.1;       ///< C in [0, 1]
  double kxrcf_threshold = 1.0;   ///< flag when the normalized value exceeds this
  double tvb_constant = 10.0;     ///< M
  /// Conserved variables fed to the multiwavelet and KXRCF indicators; empty
  /// selects density (multiwavelet) and density + energy (KXRCF).
  std::vector<int> variables;
  outlier::DetectorOptions detector;

  /// The single fixed-mode parameter of the active kind.
  double parameter() const;
  void set_parameter(double value);

  bool operator==(const IndicatorSettings&) const = default;
};

inline int count_flags(const TroubledCellMask& mask) {
  int n = 0;
  for (auto f : mask) {
    n += f != 0;
  }
  return n;
}

}  // namespace dgshock
