#include "pfapipe/guided_filter.hpp"

#include "pfapipe/box_filter.hpp"

namespace pfapipe {

namespace {

Plane multiply(const Plane& a, const Plane& b) {
  Plane out(a.width(), a.height());
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  for (std::size_t i = 0; i < out.size(); ++i) po[i] = pa[i] * pb[i];
  return out;
}

}  // namespace

Plane guided_filter(const Plane& p, const Plane& guide, const GuidedFilterParams& params) {
  params.validate();
  require_same_size(p, guide, "guided_filter");

  const int r = params.radius;
  Plane mean_i = box_mean_replicate(guide, r);
  Plane mean_p = box_mean_replicate(p, r);
  Plane mean_ii = box_mean_replicate(multiply(guide, guide), r);
  Plane mean_ip = box_mean_replicate(multiply(guide, p), r);

  Plane a(p.width(), p.height());
  Plane b(p.width(), p.height());
  for (std::size_t k = 0; k < a.size(); ++k) {
    double mi = mean_i.data()[k];
    double mp = mean_p.data()[k];
    double var_i = mean_ii.data()[k] - mi * mi;
    double cov_ip = mean_ip.data()[k] - mi * mp;
    double ak = cov_ip / (var_i + params.epsilon);
    a.data()[k] = ak;
    b.data()[k] = mp - ak * mi;
  }

  Plane mean_a = box_mean_replicate(a, r);
  Plane mean_b = box_mean_replicate(b, r);
  Plane out(p.width(), p.height());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.data()[k] = mean_a.data()[k] * guide.data()[k] + mean_b.data()[k];
  }
  return out;
}

Plane guided_filter_masked(const Plane& p, const Plane& mask, const Plane& guide,
                           const GuidedFilterParams& params) {
  params.validate();
  require_same_size(p, guide, "guided_filter_masked");
  require_same_size(p, mask, "guided_filter_masked");

  const int r = params.radius;
  Plane count = box_sum_replicate(mask, r);
  Plane sum_i = box_sum_replicate(multiply(guide, mask), r);
  Plane sum_p = box_sum_replicate(p, r);  // p is zero off-mask by contract
  Plane sum_ii = box_sum_replicate(multiply(multiply(guide, guide), mask), r);
  Plane sum_ip = box_sum_replicate(multiply(guide, p), r);

  Plane a(p.width(), p.height());
  Plane b(p.width(), p.height());
  for (std::size_t k = 0; k < a.size(); ++k) {
    double n = count.data()[k];
    if (n < 1.0) {
      // No observed sample reaches this window; fall back to a flat model.
      a.data()[k] = 0.0;
      b.data()[k] = 0.0;
      continue;
    }
    double mi = sum_i.data()[k] / n;
    double mp = sum_p.data()[k] / n;
    double var_i = sum_ii.data()[k] / n - mi * mi;
    double cov_ip = sum_ip.data()[k] / n - mi * mp;
    double ak = cov_ip / (var_i + params.epsilon);
    a.data()[k] = ak;
    b.data()[k] = mp - ak * mi;
  }

  Plane mean_a = box_mean_replicate(a, r);
  Plane mean_b = box_mean_replicate(b, r);
  Plane out(p.width(), p.height());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.data()[k] = mean_a.data()[k] * guide.data()[k] + mean_b.data()[k];
  }
  return out;
}

}  // namespace pfapipe
