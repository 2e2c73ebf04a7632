#include "pfapipe/polarimetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace pfapipe {

namespace {
constexpr double kS0Guard = 1e-6;
}

StokesImage::StokesImage(Plane s0_, Plane s1_, Plane s2_)
    : s0(std::move(s0_)), s1(std::move(s1_)), s2(std::move(s2_)) {
  require_same_size(s0, s1, "StokesImage");
  require_same_size(s0, s2, "StokesImage");
  for (double& v : s0.samples()) {
    if (v < 0.0) v = 0.0;
  }
}

StokesImage stokes_from_angles(const std::array<Plane, 4>& angles) {
  for (int i = 1; i < 4; ++i) {
    require_same_size(angles[0], angles[i], "stokes_from_angles");
  }
  const int w = angles[0].width(), h = angles[0].height();
  Plane s0(w, h), s1(w, h), s2(w, h);
  const double* i0 = angles[0].data();
  const double* i45 = angles[1].data();
  const double* i90 = angles[2].data();
  const double* i135 = angles[3].data();
  for (std::size_t k = 0; k < s0.size(); ++k) {
    s0.data()[k] = (i0[k] + i45[k] + i90[k] + i135[k]) / 2.0;
    s1.data()[k] = i0[k] - i90[k];
    s2.data()[k] = i45[k] - i135[k];
  }
  return StokesImage(std::move(s0), std::move(s1), std::move(s2));
}

std::array<Plane, 4> angles_from_stokes(const StokesImage& stokes) {
  const int w = stokes.s0.width(), h = stokes.s0.height();
  std::array<Plane, 4> out = {Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
  const double* s0 = stokes.s0.data();
  const double* s1 = stokes.s1.data();
  const double* s2 = stokes.s2.data();
  for (std::size_t k = 0; k < stokes.s0.size(); ++k) {
    out[0].data()[k] = (s0[k] + s1[k]) / 2.0;   // 0 deg
    out[1].data()[k] = (s0[k] + s2[k]) / 2.0;   // 45 deg
    out[2].data()[k] = (s0[k] - s1[k]) / 2.0;   // 90 deg
    out[3].data()[k] = (s0[k] - s2[k]) / 2.0;   // 135 deg
  }
  return out;
}

Plane compute_dop(const StokesImage& stokes) {
  Plane out(stokes.s0.width(), stokes.s0.height());
  for (std::size_t k = 0; k < out.size(); ++k) {
    double s0 = stokes.s0.data()[k];
    if (s0 > kS0Guard) {
      double mag = std::sqrt(stokes.s1.data()[k] * stokes.s1.data()[k] +
                             stokes.s2.data()[k] * stokes.s2.data()[k]);
      out.data()[k] = std::min(mag / s0, 1.0);
    }
  }
  return out;
}

Plane compute_aop(const StokesImage& stokes) {
  Plane out(stokes.s0.width(), stokes.s0.height());
  for (std::size_t k = 0; k < out.size(); ++k) {
    double deg = 0.5 * std::atan2(stokes.s2.data()[k], stokes.s1.data()[k]) * 180.0 /
                 std::numbers::pi;
    if (deg < 0.0) deg += 180.0;
    if (deg >= 180.0) deg -= 180.0;
    out.data()[k] = deg;
  }
  return out;
}

namespace {

void hsv_to_rgb(double hue, double sat, double val, double* rgb) {
  hue = hue - std::floor(hue);  // cyclic
  double h6 = hue * 6.0;
  int sector = std::min(5, static_cast<int>(h6));
  double f = h6 - sector;
  double p = val * (1.0 - sat);
  double q = val * (1.0 - sat * f);
  double t = val * (1.0 - sat * (1.0 - f));
  switch (sector) {
    case 0: rgb[0] = val; rgb[1] = t; rgb[2] = p; break;
    case 1: rgb[0] = q; rgb[1] = val; rgb[2] = p; break;
    case 2: rgb[0] = p; rgb[1] = val; rgb[2] = t; break;
    case 3: rgb[0] = p; rgb[1] = q; rgb[2] = val; break;
    case 4: rgb[0] = t; rgb[1] = p; rgb[2] = val; break;
    default: rgb[0] = val; rgb[1] = p; rgb[2] = q; break;
  }
}

}  // namespace

RgbImage render_aop_dop(const Plane& aop_deg, const Plane& dop, const Plane& s0) {
  require_same_size(aop_deg, dop, "render_aop_dop");
  require_same_size(aop_deg, s0, "render_aop_dop");

  std::vector<double> sorted(s0.samples().begin(), s0.samples().end());
  std::size_t idx = static_cast<std::size_t>(0.99 * (sorted.size() - 1));
  std::nth_element(sorted.begin(), sorted.begin() + idx, sorted.end());
  double p99 = sorted[idx];
  double inv_scale = p99 > 0.0 ? 1.0 / p99 : 0.0;

  const int w = aop_deg.width(), h = aop_deg.height();
  RgbImage out{Plane(w, h), Plane(w, h), Plane(w, h)};
  double rgb[3];
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double hue = aop_deg.at(y, x) / 180.0;
      double sat = std::clamp(dop.at(y, x), 0.0, 1.0);
      double val = std::clamp(s0.at(y, x) * inv_scale, 0.0, 1.0);
      hsv_to_rgb(hue, sat, val, rgb);
      out.r.at(y, x) = rgb[0];
      out.g.at(y, x) = rgb[1];
      out.b.at(y, x) = rgb[2];
    }
  }
  return out;
}

}  // namespace pfapipe
