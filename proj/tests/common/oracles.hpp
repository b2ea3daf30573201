#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the code under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

struct Hinges {
  double lower;
  double upper;
};

// Tukey hinges through the depth formula: depth = (floor((n + 1) / 2) + 1) / 2,
// counted 1-based from either end; a half-integer depth averages the two
// neighbors.
inline Hinges tukey_hinges(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const int n = static_cast<int>(v.size());
  const int twice_depth = (n + 1) / 2 + 1;  // 2 * depth
  const int lo = twice_depth / 2;           // floor(depth), 1-based
  const int hi = (twice_depth + 1) / 2;     // ceil(depth), 1-based
  Hinges h;
  h.lower = (v[lo - 1] + v[hi - 1]) / 2.0;
  h.upper = (v[n - lo] + v[n - hi]) / 2.0;
  return h;
}

inline bool outside_fences(const Hinges& h, double x) {
  const double spread = h.upper - h.lower;
  return x < h.lower - 3.0 * spread || x > h.upper + 3.0 * spread;
}

// Every entry tested against the outer fences, no early exit, no cap.
inline std::vector<int> naive_extremes(const std::vector<double>& w) {
  const Hinges h = tukey_hinges(w);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (outside_fences(h, w[i])) {
      out.push_back(i);
    }
  }
  return out;
}

// Windows of 16; a flag in the left (right) half must also fall outside the
// fences of the window to the left (right) when that window exists.
inline std::vector<int> naive_detect(const std::vector<double>& v, int window = 16) {
  const int count = static_cast<int>(v.size()) / window;
  std::vector<Hinges> h;
  for (int w = 0; w < count; ++w) {
    h.push_back(tukey_hinges({v.begin() + w * window, v.begin() + (w + 1) * window}));
  }
  std::vector<int> out;
  for (int w = 0; w < count; ++w) {
    for (int p = 0; p < window; ++p) {
      const int g = w * window + p;
      if (!outside_fences(h[w], v[g])) continue;
      const int nb = p < window / 2 ? w - 1 : w + 1;
      if (nb < 0 || nb >= count || outside_fences(h[nb], v[g])) {
        out.push_back(g);
      }
    }
  }
  return out;
}

// Composite Simpson rule, for integrals the code under test does by Gauss.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

// Plain minmod written out from its definition.
inline double minmod(const std::vector<double>& a) {
  bool pos = true;
  bool neg = true;
  double m = std::abs(a[0]);
  for (double x : a) {
    pos = pos && x > 0.0;
    neg = neg && x < 0.0;
    m = std::min(m, std::abs(x));
  }
  return pos ? m : (neg ? -m : 0.0);
}

}  // namespace oracle
