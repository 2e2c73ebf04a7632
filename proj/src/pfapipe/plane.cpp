#include "pfapipe/plane.hpp"

#include <algorithm>
#include <cmath>

namespace pfapipe {

Plane::Plane(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ContractError("Plane dimensions must be positive");
  }
  samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

Plane::Plane(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (width <= 0 || height <= 0) {
    throw ContractError("Plane dimensions must be positive");
  }
  if (samples_.size() != static_cast<std::size_t>(width) * height) {
    throw ContractError("Plane sample count does not match width*height");
  }
}

double Plane::at_clamped(int y, int x) const {
  y = std::clamp(y, 0, height_ - 1);
  x = std::clamp(x, 0, width_ - 1);
  return at(y, x);
}

void Plane::require_finite(const char* context) const {
  for (double v : samples_) {
    if (!std::isfinite(v)) {
      throw ContractError(std::string(context) + ": non-finite sample");
    }
  }
}

RgbImage::RgbImage(Plane r_, Plane g_, Plane b_)
    : r(std::move(r_)), g(std::move(g_)), b(std::move(b_)) {
  if (!r.same_size(g) || !r.same_size(b)) {
    throw ContractError("RgbImage channels must share dimensions");
  }
}

const Plane& RgbImage::channel(int c) const {
  switch (c) {
    case 0: return r;
    case 1: return g;
    default: return b;
  }
}

Plane& RgbImage::channel(int c) {
  switch (c) {
    case 0: return r;
    case 1: return g;
    default: return b;
  }
}

void require_same_size(const Plane& a, const Plane& b, const char* context) {
  if (!a.same_size(b)) {
    throw ContractError(std::string(context) + ": plane dimensions differ");
  }
}

}  // namespace pfapipe
