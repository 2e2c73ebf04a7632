#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pfapipe/errors.hpp"

namespace pfapipe {

// Single-channel image with normalized full scale 1.0. Samples are stored
// row-major as doubles; file formats quantize on store, not in memory.
class Plane {
public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0);
  Plane(int width, int height, std::vector<double> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  double& at(int y, int x) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int y, int x) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

  // Index-clamped read, i.e. replicate border extension.
  double at_clamped(int y, int x) const;

  double* row(int y) { return samples_.data() + static_cast<std::size_t>(y) * width_; }
  const double* row(int y) const { return samples_.data() + static_cast<std::size_t>(y) * width_; }

  double* data() { return samples_.data(); }
  const double* data() const { return samples_.data(); }
  std::span<const double> samples() const { return samples_; }
  std::span<double> samples() { return samples_; }

  bool same_size(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  // Throws ContractError if any sample is NaN or infinite.
  void require_finite(const char* context) const;

private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> samples_;
};

// Three equally sized color planes.
struct RgbImage {
  Plane r, g, b;

  RgbImage() = default;
  RgbImage(Plane r_, Plane g_, Plane b_);

  int width() const { return r.width(); }
  int height() const { return r.height(); }
  const Plane& channel(int c) const;
  Plane& channel(int c);
};

void require_same_size(const Plane& a, const Plane& b, const char* context);

}  // namespace pfapipe
