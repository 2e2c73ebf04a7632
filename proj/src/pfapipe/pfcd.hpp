#pragma once

#include <utility>
#include <vector>

#include "pfapipe/bm3d.hpp"
#include "pfapipe/pattern.hpp"

namespace pfapipe {

// Per-channel noise standard deviations in normalized intensity units.
// Lookup falls back from an exact (angle, color) entry to a color-wide entry
// (angle == kNoAngle): the per-condition averages of the dataset use one
// sigma per color for all polarization angles.
class NoiseProfile {
public:
  NoiseProfile() = default;

  static NoiseProfile mono(double sigma);
  static NoiseProfile rgb(double sigma_r, double sigma_g, double sigma_b);

  void set(ChannelLabel label, double sigma);
  double sigma_for(const ChannelLabel& label) const;
  bool all_zero() const;

  const std::vector<std::pair<ChannelLabel, double>>& entries() const { return entries_; }

private:
  std::vector<std::pair<ChannelLabel, double>> entries_;
};

// Pseudo four-channel denoising: PCA decorrelation of the four channels,
// per-component BM3D with propagated sigmas, inverse transform. All-zero
// sigmas return the inputs unchanged.
std::array<Plane, 4> pfcd_denoise(const std::array<Plane, 4>& channels,
                                  const std::array<double, 4>& sigmas,
                                  const Bm3dParams& params = {});

// MPFA: sub-sample the four angle quads, PFCD them, re-mosaic.
MosaicImage denoise_mpfa(const MosaicImage& mosaic, const NoiseProfile& profile,
                         const Bm3dParams& params = {});

// CPFA: per polarization angle, PFCD the Bayer phases (R, G, G, B), re-mosaic.
MosaicImage denoise_cpfa(const MosaicImage& mosaic, const NoiseProfile& profile,
                         const Bm3dParams& params = {});

}  // namespace pfapipe
