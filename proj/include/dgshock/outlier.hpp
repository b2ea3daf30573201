#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dgshock::outlier {

inline constexpr double kInnerWhisker = 1.5;
inline constexpr double kOuterWhisker = 3.0;
/// Local window length 2^p with p = 4.
inline constexpr int kWindowLength = 16;

/// Tukey boxplot summary of one sorted vector.
struct QuartileStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;

  double iqr() const { return q3 - q1; }
  double lower_outer() const { return q1 - kOuterWhisker * iqr(); }
  double upper_outer() const { return q3 + kOuterWhisker * iqr(); }
  double lower_inner() const { return q1 - kInnerWhisker * iqr(); }
  double upper_inner() const { return q3 + kInnerWhisker * iqr(); }
  /// Strictly outside the outer fences.
  bool extreme(double value) const { return value < lower_outer() || value > upper_outer(); }
};

/// Quartiles of an ascending vector of length >= 4 using Tukey's hinges:
/// Q1 = (1 - g) d_{j-1} + g d_j with j + g = floor((N + 4) / 2) / 2, N + 1 the length.
QuartileStats quartiles(std::span<const double> sorted);

/// In-place selection sort of (value, index) pairs, ties broken by index.
void selection_sort(std::span<double> values, std::span<int> indices);

/// Outcome of the boxplot test on one window.
struct WindowResult {
  QuartileStats stats;
  std::vector<int> flagged;  ///< positions within the window, ascending
};

/// Sorts a copy, builds the outer fences and scans inwards from both ends,
/// stopping at the first non-outlier. At most length/4 - 1 values per side
/// can be flagged. Length must be a multiple of 4.
WindowResult analyze_window(std::span<const double> window);

/// Positions (in the original order) of the extreme outliers of `window`.
std::vector<int> extreme_outliers(std::span<const double> window);

/// How flags near a window edge are confirmed against the adjacent window.
enum class VetoRule {
  neighbor_fences,  ///< flag must also lie outside the neighbor's outer fences
  shifted_window,   ///< flag must also be detected in the window centred on the shared edge
};

struct DetectorOptions {
  int window = kWindowLength;
  VetoRule veto = VetoRule::neighbor_fences;

  bool operator==(const DetectorOptions&) const = default;
};

/// Local-window outlier detection on an indication vector. Vectors whose
/// length is not a multiple of the window length are treated as a single
/// window (the length must still be a multiple of 4). Returns ascending
/// global indices. Windows are processed in parallel.
std::vector<int> detect_1d(std::span<const double> values, const DetectorOptions& options = {});

/// Serial reference for detect_1d: std::sort and a full fence test per entry.
std::vector<int> detect_1d_reference(std::span<const double> values,
                                     const DetectorOptions& options = {});

/// Dense nx x ny matrix of indication values, x index fastest.
class IndicationMatrix {
 public:
  IndicationMatrix(int nx, int ny) : nx_(nx), ny_(ny), values_(static_cast<std::size_t>(nx) * ny) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  IndicationMatrix transposed() const;

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  int nx_;
  int ny_;
  std::vector<double> values_;
};

enum class Axis { x, y };

/// Boolean nx x ny mask, x index fastest.
using Mask2D = std::vector<std::uint8_t>;

/// detect_1d on every row (Axis::x: fixed j, varying i) or every column (Axis::y).
Mask2D detect_2d(const IndicationMatrix& matrix, Axis axis, const DetectorOptions& options = {});

}  // namespace dgshock::outlier
