#include "dgshock/outlier.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

#include "dgshock/errors.hpp"

namespace dgshock::outlier {

QuartileStats quartiles(std::span<const double> sorted) {
  const int size = static_cast<int>(sorted.size());
  if (size < 4) {
    throw PartitionError("quartiles: need at least 4 values, got " + std::to_string(size));
  }
  assert(std::is_sorted(sorted.begin(), sorted.end()));
  const int last = size - 1;  // N
  // floor((N + 4) / 2) / 2 = j + g, g in {0, 1/2}
  const int half = (last + 4) / 2;
  const int j = half / 2;
  const double g = (half % 2 == 1) ? 0.5 : 0.0;

  QuartileStats s;
  s.q1 = (1.0 - g) * sorted[j - 1] + g * sorted[j];
  s.q3 = (1.0 - g) * sorted[last - j + 1] + g * sorted[last - j];
  s.median = (last % 2 == 0) ? sorted[last / 2]
                             : 0.5 * (sorted[(last - 1) / 2] + sorted[(last + 1) / 2]);
  return s;
}

void selection_sort(std::span<double> values, std::span<int> indices) {
  const std::size_t n = values.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t best = i;
    for (std::size_t k = i + 1; k < n; ++k) {
      if (values[k] < values[best] || (values[k] == values[best] && indices[k] < indices[best])) {
        best = k;
      }
    }
    if (best != i) {
      std::swap(values[i], values[best]);
      std::swap(indices[i], indices[best]);
    }
  }
}

WindowResult analyze_window(std::span<const double> window) {
  const int size = static_cast<int>(window.size());
  if (size < 4 || size % 4 != 0) {
    throw PartitionError("analyze_window: window length " + std::to_string(size) +
                         " is not a positive multiple of 4");
  }
  // Fixed-size scratch for the production window length.
  std::array<double, kWindowLength> vbuf;
  std::array<int, kWindowLength> ibuf;
  std::vector<double> vheap;
  std::vector<int> iheap;
  std::span<double> values;
  std::span<int> idx;
  if (size <= kWindowLength) {
    values = std::span<double>(vbuf.data(), size);
    idx = std::span<int>(ibuf.data(), size);
  } else {
    vheap.resize(size);
    iheap.resize(size);
    values = vheap;
    idx = iheap;
  }
  std::copy(window.begin(), window.end(), values.begin());
  std::iota(idx.begin(), idx.end(), 0);
  selection_sort(values, idx);

  WindowResult result;
  result.stats = quartiles(values);
  const double lower = result.stats.lower_outer();
  const double upper = result.stats.upper_outer();
  const int max_per_side = size / 4 - 1;
  for (int s = 0; s < max_per_side && values[s] < lower; ++s) {
    result.flagged.push_back(idx[s]);
  }
  for (int s = 0; s < max_per_side && values[size - 1 - s] > upper; ++s) {
    result.flagged.push_back(idx[size - 1 - s]);
  }
  std::sort(result.flagged.begin(), result.flagged.end());
  return result;
}

std::vector<int> extreme_outliers(std::span<const double> window) {
  return analyze_window(window).flagged;
}

namespace {

int window_length_for(std::size_t size, int requested) {
  if (size == 0) {
    return 0;
  }
  if (requested >= 4 && requested % 4 == 0 && size % static_cast<std::size_t>(requested) == 0) {
    return requested;
  }
  if (size % 4 == 0) {
    return static_cast<int>(size);
  }
  throw PartitionError("detect_1d: vector length " + std::to_string(size) +
                       " is not a multiple of 4");
}

// Whether the global entry `g` survives the check against window `nb`.
bool confirmed(std::span<const double> values, int window, int nb, int g,
               const std::vector<QuartileStats>& stats, VetoRule rule) {
  if (rule == VetoRule::neighbor_fences) {
    return stats[nb].extreme(values[g]);
  }
  // Window straddling the shared edge of `nb` and the owning window.
  const int half = window / 2;
  const int start = (nb < g / window) ? (g / window) * window - half : nb * window - half;
  const auto shifted = values.subspan(start, window);
  const auto flagged = analyze_window(shifted).flagged;
  return std::find(flagged.begin(), flagged.end(), g - start) != flagged.end();
}

}  // namespace

namespace {

// Fences of one window from a sorted copy of the values only. For a length 4r
// the r-th smallest entry never lies below the lower fence (IQR >= half its gap
// to the next one), so at most r - 1 entries per side are outside and the
// bounded scan agrees with testing every entry directly.
// Batcher odd-even merge network for the production window length.
struct Comparator {
  int a;
  int b;
};

constexpr int network_size(int n) {
  int c = 0;
  for (int p = 1; p < n; p <<= 1) {
    for (int k = p; k >= 1; k >>= 1) {
      for (int j = k % p; j + k < n; j += 2 * k) {
        for (int i = 0; i < k && i + j + k < n; ++i) {
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) ++c;
        }
      }
    }
  }
  return c;
}

constexpr auto make_network() {
  constexpr int n = kWindowLength;
  std::array<Comparator, network_size(n)> net{};
  int c = 0;
  for (int p = 1; p < n; p <<= 1) {
    for (int k = p; k >= 1; k >>= 1) {
      for (int j = k % p; j + k < n; j += 2 * k) {
        for (int i = 0; i < k && i + j + k < n; ++i) {
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) net[c++] = {i + j, i + j + k};
        }
      }
    }
  }
  return net;
}

constexpr auto kNetwork = make_network();

QuartileStats window_stats(std::span<const double> window) {
  if (window.size() == kWindowLength) {
    std::array<double, kWindowLength> v;
    std::copy(window.begin(), window.end(), v.begin());
    // constant indices once unrolled, so v can live in registers
#pragma GCC unroll 128
    for (std::size_t c = 0; c < kNetwork.size(); ++c) {
      const auto [a, b] = kNetwork[c];
      const double lo = std::min(v[a], v[b]);
      const double hi = std::max(v[a], v[b]);
      v[a] = lo;
      v[b] = hi;
    }
    return quartiles(v);
  }
  std::vector<double> sorted(window.begin(), window.end());
  std::sort(sorted.begin(), sorted.end());
  return quartiles(sorted);
}

// Below this many windows the thread team costs more than it saves.
constexpr int kParallelWindows = 64;

}  // namespace

std::vector<int> detect_1d(std::span<const double> values, const DetectorOptions& options) {
  const int window = window_length_for(values.size(), options.window);
  if (window == 0) {
    return {};
  }
  const int count = static_cast<int>(values.size()) / window;
  std::vector<QuartileStats> stats(count);
  auto fences = [&](int w) {
    stats[w] = window_stats(values.subspan(static_cast<std::size_t>(w) * window, window));
  };
  // an if() clause still enters the runtime, so branch instead
  if (count >= kParallelWindows) {
#pragma omp parallel for schedule(static)
    for (int w = 0; w < count; ++w) fences(w);
  } else {
    for (int w = 0; w < count; ++w) fences(w);
  }
  std::vector<int> out;
  for (int w = 0; w < count; ++w) {
    const double lo = stats[w].lower_outer();
    const double hi = stats[w].upper_outer();
    const double* v = values.data() + static_cast<std::size_t>(w) * window;
    // most windows are clean; one branch-free pass decides
    bool any = false;
    for (int pos = 0; pos < window; ++pos) {
      any |= (v[pos] < lo) | (v[pos] > hi);
    }
    if (!any) {
      continue;
    }
    for (int pos = 0; pos < window; ++pos) {
      const int g = w * window + pos;
      if (!(v[pos] < lo || v[pos] > hi)) {
        continue;
      }
      const int nb = pos < window / 2 ? w - 1 : w + 1;
      if (nb < 0 || nb >= count || confirmed(values, window, nb, g, stats, options.veto)) {
        out.push_back(g);
      }
    }
  }
  return out;
}

std::vector<int> detect_1d_reference(std::span<const double> values,
                                     const DetectorOptions& options) {
  const int window = window_length_for(values.size(), options.window);
  if (window == 0) {
    return {};
  }
  const int count = static_cast<int>(values.size()) / window;
  std::vector<QuartileStats> stats(count);
  std::vector<std::vector<int>> flagged(count);
  for (int w = 0; w < count; ++w) {
    std::vector<double> sorted(values.begin() + w * window, values.begin() + (w + 1) * window);
    std::sort(sorted.begin(), sorted.end());
    stats[w] = quartiles(sorted);
    for (int pos = 0; pos < window; ++pos) {
      if (stats[w].extreme(values[w * window + pos])) {
        flagged[w].push_back(pos);
      }
    }
  }
  std::vector<int> out;
  for (int w = 0; w < count; ++w) {
    for (int pos : flagged[w]) {
      const int g = w * window + pos;
      const int nb = pos < window / 2 ? w - 1 : w + 1;
      if (nb < 0 || nb >= count) {
        out.push_back(g);
        continue;
      }
      if (options.veto == VetoRule::neighbor_fences) {
        if (stats[nb].extreme(values[g])) {
          out.push_back(g);
        }
      } else if (confirmed(values, window, nb, g, stats, options.veto)) {
        out.push_back(g);
      }
    }
  }
  return out;
}

IndicationMatrix IndicationMatrix::transposed() const {
  IndicationMatrix t(ny_, nx_);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

Mask2D detect_2d(const IndicationMatrix& matrix, Axis axis, const DetectorOptions& options) {
  const int nx = matrix.nx();
  const int ny = matrix.ny();
  Mask2D mask(static_cast<std::size_t>(nx) * ny, 0);
  const int lines = axis == Axis::x ? ny : nx;
  const int length = axis == Axis::x ? nx : ny;
  // Probe the partition once so errors surface outside the parallel region.
  window_length_for(static_cast<std::size_t>(length), options.window);
#pragma omp parallel for schedule(static)
  for (int line = 0; line < lines; ++line) {
    std::vector<double> vec(length);
    for (int t = 0; t < length; ++t) {
      vec[t] = axis == Axis::x ? matrix(t, line) : matrix(line, t);
    }
    for (int t : detect_1d(vec, options)) {
      const int i = axis == Axis::x ? t : line;
      const int j = axis == Axis::x ? line : t;
      mask[static_cast<std::size_t>(j) * nx + i] = 1;
    }
  }
  return mask;
}

}  // namespace dgshock::outlier
