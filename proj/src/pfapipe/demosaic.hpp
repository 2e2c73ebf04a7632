#pragma once

#include "pfapipe/guided_filter.hpp"
#include "pfapipe/pattern.hpp"

namespace pfapipe {

struct DemosaicParams {
  GuidedFilterParams polar_gf{2, 1e-6};  // polarization-channel RI
  GuidedFilterParams bayer_gf{2, 1e-5};  // Bayer R/B RI
  // Extra guide/RI passes rebuild the guide from the recovered planes.
  int guide_iterations = 1;

  void validate() const {
    polar_gf.validate();
    bayer_gf.validate();
    if (guide_iterations < 1) {
      throw ContractError("DemosaicParams: guide_iterations must be >= 1");
    }
  }
};

// Full-resolution sparse observations of one channel: zeros at unobserved
// pixels, a 0/1 mask, and the lattice pitch of the observed grid.
struct SparseChannel {
  Plane plane;
  Plane mask;
  int pitch_y = 2;
  int pitch_x = 2;
};

SparseChannel sparse_channel_from_mosaic(const MosaicImage& mosaic, const ChannelLabel& label);

// Edge-aware intensity guide proportional to the four-angle average:
// horizontal/vertical estimates with the [1,2,2,2,1]/8 low-pass along the
// direction (each footprint sums one sample of every angle), blended with
// weights inversely proportional to local directional gradient energy.
Plane generate_intensity_guide(const MosaicImage& mpfa);

// Residual interpolation of one sparse channel against a full-resolution
// guide: masked guided-filter tentative, bilinear interpolation of the
// observed residuals, and exact restoration of the observed samples.
Plane residual_interpolate_channel(const SparseChannel& sparse, const Plane& guide,
                                   const GuidedFilterParams& params);

// MPFA polarization demosaicking (intensity-guided RI).
PolarizationStack demosaick_mpfa_igri2(const MosaicImage& mosaic,
                                       const DemosaicParams& params = {});

// Bayer demosaicking: directional G reconstruction, then R/B by RI against G.
RgbImage demosaick_bayer_ri(const MosaicImage& bayer, const DemosaicParams& params = {});

// CPFA pipeline: per-angle Bayer demosaicking, rearrangement into per-color
// MPFA mosaics, per-color polarization demosaicking. Output planes are at
// half the CPFA mosaic resolution.
PolarizationStack demosaick_cpfa(const MosaicImage& mosaic, const DemosaicParams& params = {});

// Naive per-channel bilinear interpolation (benchmark baseline). Output at
// full mosaic resolution for any supported pattern.
PolarizationStack demosaick_bilinear(const MosaicImage& mosaic);

// Ratio-of-convolutions bilinear interpolation from a sparse regular lattice.
Plane lattice_bilinear_upsample(const Plane& values, const Plane& mask,
                                int pitch_y, int pitch_x);

}  // namespace pfapipe
