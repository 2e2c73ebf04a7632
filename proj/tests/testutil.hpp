#pragma once

#include <cmath>
#include <vector>

#include "pfapipe/pattern.hpp"
#include "pfapipe/plane.hpp"
#include "pfapipe/rng.hpp"

namespace testutil {

using pfapipe::Plane;

// Random plane whose samples are exactly representable as float32, so the
// pfi-raw round trip is the identity at the format's precision.
inline Plane random_plane(int w, int h, pfapipe::Rng& rng, double lo = 0.0, double hi = 1.0) {
  std::vector<double> samples(static_cast<std::size_t>(w) * h);
  for (auto& v : samples) {
    v = static_cast<double>(static_cast<float>(rng.uniform(lo, hi)));
  }
  return Plane(w, h, std::move(samples));
}

// Smooth bivariate polynomial test image with values in roughly [0.1, 0.9].
inline Plane polynomial_plane(int w, int h) {
  Plane p(w, h);
  for (int y = 0; y < h; ++y) {
    double v = static_cast<double>(y) / h;
    for (int x = 0; x < w; ++x) {
      double u = static_cast<double>(x) / w;
      p.at(y, x) = 0.1 + 0.3 * u + 0.25 * v + 0.2 * u * v + 0.1 * u * u - 0.05 * v * v;
    }
  }
  return p;
}

inline double max_abs_diff(const Plane& a, const Plane& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

inline double rmse(const Plane& a, const Plane& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a.data()[i] - b.data()[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

inline double interior_max_abs_diff(const Plane& a, const Plane& b, int border) {
  double worst = 0.0;
  for (int y = border; y < a.height() - border; ++y) {
    for (int x = border; x < a.width() - border; ++x) {
      worst = std::max(worst, std::abs(a.at(y, x) - b.at(y, x)));
    }
  }
  return worst;
}

inline double interior_psnr(const Plane& ref, const Plane& test, int border) {
  double sum = 0.0;
  std::size_t n = 0;
  for (int y = border; y < ref.height() - border; ++y) {
    for (int x = border; x < ref.width() - border; ++x) {
      double d = ref.at(y, x) - test.at(y, x);
      sum += d * d;
      ++n;
    }
  }
  return 10.0 * std::log10(static_cast<double>(n) / sum);
}

inline bool identical(const Plane& a, const Plane& b) {
  if (!a.same_size(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.data()[i] != b.data()[i]) return false;
  }
  return true;
}

inline Plane constant_plane(int w, int h, double v) { return Plane(w, h, v); }

}  // namespace testutil
