#pragma once

#include <cstdint>

#include "pfapipe/pattern.hpp"
#include "pfapipe/plane.hpp"

namespace pfapipe {

// Deterministic synthetic scene: smooth bandlimited random fields for S0 and
// DoP plus a smooth orientation field for AoP, with optional sharp features
// (sigmoid-edged stripes and disks) so demosaickers face real structure.
struct SceneSpec {
  int width = 256;
  int height = 256;
  std::uint64_t seed = 1;
  int smooth_modes = 6;      // random cosine modes per field
  double max_cycles = 5.0;   // bandlimit in cycles per image
  int edge_features = 4;     // sharp stripes/disks
  double edge_width_px = 1.2;
  double s0_min = 0.2, s0_max = 0.9;
  double dop_min = 0.1, dop_max = 0.8;

  void validate() const;
};

// Four-angle monochrome stack via the Malus expansion of
// (S0, S0*DoP*cos 2psi, S0*DoP*sin 2psi).
PolarizationStack synthesize_scene(const SceneSpec& spec);

// Twelve-channel color stack: shared DoP/AoP, per-color smooth gains on S0.
PolarizationStack synthesize_scene_color(const SceneSpec& spec);

// i.i.d. Gaussian noise, deterministic per seed, no clamping.
Plane add_awgn(const Plane& image, double sigma, std::uint64_t seed);
RgbImage add_awgn(const RgbImage& image, double sigma, std::uint64_t seed);

}  // namespace pfapipe
