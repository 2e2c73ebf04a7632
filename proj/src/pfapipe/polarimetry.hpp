#pragma once

#include <array>

#include "pfapipe/plane.hpp"

namespace pfapipe {

// Linear Stokes components. Construction clamps (noise-induced) negative S0
// to 0; sqrt(S1^2+S2^2) <= S0 is deliberately not enforced — DoP clamps
// instead.
struct StokesImage {
  Plane s0, s1, s2;

  StokesImage() = default;
  StokesImage(Plane s0_, Plane s1_, Plane s2_);
};

// S0 = (I0+I45+I90+I135)/2, S1 = I0-I90, S2 = I45-I135.
// Input order is (I0, I45, I90, I135).
StokesImage stokes_from_angles(const std::array<Plane, 4>& angles);

// Malus-law expansion I_theta = (S0 + S1 cos 2theta + S2 sin 2theta)/2 for
// theta in {0,45,90,135}; exact inverse of stokes_from_angles up to rounding.
std::array<Plane, 4> angles_from_stokes(const StokesImage& stokes);

// sqrt(S1^2+S2^2)/S0 clamped to [0,1]; 0 where S0 <= 1e-6.
Plane compute_dop(const StokesImage& stokes);

// 0.5*atan2(S2,S1) in degrees, mapped to [0,180).
Plane compute_aop(const StokesImage& stokes);

// HSV visualization: hue = AoP/180, saturation = DoP, value = S0 normalized
// by its 99th percentile.
RgbImage render_aop_dop(const Plane& aop_deg, const Plane& dop, const Plane& s0);

}  // namespace pfapipe
