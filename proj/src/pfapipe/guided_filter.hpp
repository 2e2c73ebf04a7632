#pragma once

#include "pfapipe/plane.hpp"

namespace pfapipe {

struct GuidedFilterParams {
  int radius = 2;
  double epsilon = 1e-6;  // normalized intensity^2

  void validate() const {
    if (radius < 1) throw ContractError("GuidedFilterParams: radius must be >= 1");
    if (!(epsilon > 0.0)) throw ContractError("GuidedFilterParams: epsilon must be > 0");
  }
};

// Classic local-linear-model filter with box windows and replicate borders:
// a = cov(guide,p)/(var(guide)+eps), b = mean(p) - a*mean(guide), output =
// mean-aggregated a*guide + b.
Plane guided_filter(const Plane& p, const Plane& guide, const GuidedFilterParams& params);

// Sparse variant: window statistics use only pixels where mask != 0
// (ratio-of-box-filters, so unobserved zeros do not bias them). The a/b maps
// are still aggregated over dense windows.
Plane guided_filter_masked(const Plane& p, const Plane& mask, const Plane& guide,
                           const GuidedFilterParams& params);

}  // namespace pfapipe
