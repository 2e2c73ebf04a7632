#pragma once

#include <string>

#include "pfapipe/pattern.hpp"
#include "pfapipe/plane.hpp"

namespace pfapipe {

enum class PlaneFormat { png16, pfi_raw };

PlaneFormat plane_format_from_name(const std::string& name);

// Loads a single-channel image. png16 must be single-channel 16-bit gray;
// samples come back divided by 65535. pfi-raw must contain exactly one
// channel per its sidecar.
Plane load_plane(const std::string& path, PlaneFormat format);

// Stores a plane. png16 clamps to [0,1] and quantizes to 16 bits; pfi-raw
// stores the samples as little-endian float32 (lossless for float-valued
// samples).
void store_plane(const Plane& plane, const std::string& path, PlaneFormat format);

// Multi-plane stacks concatenate planes in the sidecar's channel order.
PolarizationStack load_stack_pfi(const std::string& path);
void store_stack_pfi(const PolarizationStack& stack, const std::string& path);

// 8-bit RGB output for visualizations. Inputs are clamped to [0,1].
void store_rgb_png8(const RgbImage& image, const std::string& path);

}  // namespace pfapipe
