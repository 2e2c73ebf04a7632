#pragma once

#include <vector>

#include "pfapipe/plane.hpp"

namespace pfapipe {

// Sum over the (2r+1)^2 window with replicate border extension.
Plane box_sum_replicate(const Plane& p, int radius);

// Window mean, i.e. box_sum / (2r+1)^2.
Plane box_mean_replicate(const Plane& p, int radius);

// Separable convolution with odd-length kernels and replicate borders.
// Either kernel may be empty to skip that direction.
Plane convolve_separable_replicate(const Plane& p, const std::vector<double>& kernel_x,
                                   const std::vector<double>& kernel_y);

// Separable convolution with zero padding (for mask-normalized interpolation).
Plane convolve_separable_zero(const Plane& p, const std::vector<double>& kernel_x,
                              const std::vector<double>& kernel_y);

// Triangle kernel of half-width s: 2s-1 taps, peak 1 at the center. Convolving
// a stride-s lattice of samples with it performs exact linear interpolation.
std::vector<double> triangle_kernel(int half_width);

}  // namespace pfapipe
