#pragma once

#include <array>
#include <string>
#include <vector>

#include "pfapipe/plane.hpp"

namespace pfapipe {

// Frames of one scene captured at one polarizer angle.
struct CaptureBurst {
  std::vector<RgbImage> frames;
  int angle = 0;

  void validate() const;
};

struct GroundTruthResult {
  RgbImage gt;
  // Frame whose mean intensity is the (lower) median among the retained
  // frames; this is the designated noisy input.
  int median_frame_index = 0;
  std::vector<int> excluded_indices;  // ascending
  std::vector<int> retained_indices;  // ascending
};

// Outlier-robust ground-truth averaging: frames are ranked by the distance of
// their mean intensity from the burst median, the `exclude_count` farthest
// are dropped, and the rest are averaged pixel-wise. Ties on the distance are
// broken toward excluding the higher frame index.
GroundTruthResult build_ground_truth(const CaptureBurst& burst, int exclude_count);

// Pooled per-channel standard deviation of (frame - gt) over all frames and
// pixels. Callers pass the retained frames.
std::array<double, 3> estimate_noise_levels(const CaptureBurst& burst, const RgbImage& gt);

// gain = full_scale / P where P is the percentile-th pooled pixel value, so
// at least percentile% of pixels stay <= full_scale after multiplication.
double compute_digital_gain(const std::vector<Plane>& images, double percentile,
                            double full_scale);

// The dataset's published capture conditions. Noise sigmas are on the
// 8-bit-style 0..255 scale; sigma_normalized() converts to full scale 1.0.
struct NoiseCondition {
  std::string name;
  double analog_gain_db;
  double digital_gain;
  double shutter_s;
  std::array<double, 3> sigma_rgb_255;  // R, G, B

  std::array<double, 3> sigma_normalized() const {
    return {sigma_rgb_255[0] / 255.0, sigma_rgb_255[1] / 255.0, sigma_rgb_255[2] / 255.0};
  }
};

const std::array<NoiseCondition, 3>& noise_conditions();  // Low, Medium, High
const NoiseCondition& noise_condition(const std::string& name);

}  // namespace pfapipe
