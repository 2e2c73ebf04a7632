#pragma once

#include <map>

#include "pfapipe/pattern.hpp"

namespace pfapipe {

// Tile-phase sub-sampling: plane (W,H) -> tile_w*tile_h planes of
// (W/tile_w, H/tile_h), phase (ty,tx) at output index ty*tile_w+tx. The
// top-left-most sample of each phase lands at output (0,0).
std::vector<Plane> split_phases(const Plane& plane, int tile_h, int tile_w);
Plane merge_phases(const std::vector<Plane>& phases, int tile_h, int tile_w);

// MPFA <-> per-angle quarter-resolution planes.
std::map<int, Plane> split_mpfa_quads(const MosaicImage& mosaic);
MosaicImage merge_quads_to_mpfa(const std::map<int, Plane>& quads,
                                const PatternDescriptor& pattern);

// CPFA <-> four half-resolution Bayer mosaics (one per polarization angle).
std::map<int, MosaicImage> split_cpfa_to_bayer(const MosaicImage& mosaic);
MosaicImage merge_bayer_to_cpfa(const std::map<int, MosaicImage>& bayers,
                                const PatternDescriptor& cpfa_pattern);

// Four full-resolution RGB images (one per angle) -> per-color MPFA mosaics
// at the same resolution: each mosaic pixel takes its pattern angle's value.
std::map<Color, MosaicImage> rearrange_rgb_to_mpfa(const std::map<int, RgbImage>& per_angle,
                                                   const PatternDescriptor& mpfa_pattern);

// Sensor simulation: each mosaic pixel samples the stack plane of its cell label.
MosaicImage mosaic_from_stack(const PolarizationStack& stack,
                              const PatternDescriptor& pattern);

}  // namespace pfapipe
