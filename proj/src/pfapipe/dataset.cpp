#include "pfapipe/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pfapipe {

void CaptureBurst::validate() const {
  if (frames.size() < 3) {
    throw ContractError("CaptureBurst: need at least 3 frames");
  }
  for (const auto& f : frames) {
    if (f.width() != frames.front().width() || f.height() != frames.front().height()) {
      throw ContractError("CaptureBurst: frame dimensions differ");
    }
  }
}

namespace {

double frame_mean(const RgbImage& frame) {
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    for (double v : frame.channel(c).samples()) sum += v;
  }
  return sum / (3.0 * static_cast<double>(frame.r.size()));
}

// Lower median of the values at the given indices.
double lower_median(const std::vector<double>& values, const std::vector<int>& indices) {
  std::vector<double> sorted;
  sorted.reserve(indices.size());
  for (int i : indices) sorted.push_back(values[i]);
  std::sort(sorted.begin(), sorted.end());
  return sorted[(sorted.size() - 1) / 2];
}

}  // namespace

GroundTruthResult build_ground_truth(const CaptureBurst& burst, int exclude_count) {
  burst.validate();
  const int n = static_cast<int>(burst.frames.size());
  if (exclude_count < 0 || exclude_count >= n) {
    throw ContractError("build_ground_truth: exclude_count must be in [0, frame count)");
  }

  std::vector<double> mu(n);
  for (int k = 0; k < n; ++k) mu[k] = frame_mean(burst.frames[k]);

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  double mu_med = lower_median(mu, all);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double da = std::abs(mu[a] - mu_med);
    double db = std::abs(mu[b] - mu_med);
    if (da != db) return da > db;
    return a > b;  // exclude higher indices first on ties
  });

  GroundTruthResult result;
  result.excluded_indices.assign(order.begin(), order.begin() + exclude_count);
  result.retained_indices.assign(order.begin() + exclude_count, order.end());
  std::sort(result.excluded_indices.begin(), result.excluded_indices.end());
  std::sort(result.retained_indices.begin(), result.retained_indices.end());

  const int w = burst.frames.front().width();
  const int h = burst.frames.front().height();
  result.gt = RgbImage(Plane(w, h), Plane(w, h), Plane(w, h));
  // Accumulation in ascending frame index keeps the average bit-reproducible.
  for (int idx : result.retained_indices) {
    for (int c = 0; c < 3; ++c) {
      const double* src = burst.frames[idx].channel(c).data();
      double* dst = result.gt.channel(c).data();
      for (std::size_t i = 0; i < result.gt.r.size(); ++i) dst[i] += src[i];
    }
  }
  double inv = 1.0 / static_cast<double>(result.retained_indices.size());
  for (int c = 0; c < 3; ++c) {
    for (double& v : result.gt.channel(c).samples()) v *= inv;
  }

  double med_retained = lower_median(mu, result.retained_indices);
  result.median_frame_index = -1;
  for (int idx : result.retained_indices) {
    if (mu[idx] == med_retained) {
      result.median_frame_index = idx;
      break;
    }
  }
  return result;
}

std::array<double, 3> estimate_noise_levels(const CaptureBurst& burst, const RgbImage& gt) {
  burst.validate();
  if (gt.width() != burst.frames.front().width() ||
      gt.height() != burst.frames.front().height()) {
    throw ContractError("estimate_noise_levels: gt dimensions do not match the burst");
  }
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    double sum = 0.0, sum_sq = 0.0;
    std::size_t count = 0;
    const double* ref = gt.channel(c).data();
    for (const auto& frame : burst.frames) {
      const double* src = frame.channel(c).data();
      for (std::size_t i = 0; i < gt.r.size(); ++i) {
        double d = src[i] - ref[i];
        sum += d;
        sum_sq += d * d;
      }
      count += gt.r.size();
    }
    double mean = sum / static_cast<double>(count);
    out[c] = std::sqrt(std::max(0.0, sum_sq / static_cast<double>(count) - mean * mean));
  }
  return out;
}

double compute_digital_gain(const std::vector<Plane>& images, double percentile,
                            double full_scale) {
  if (!(percentile > 0.0 && percentile < 100.0)) {
    throw ContractError("compute_digital_gain: percentile must be in (0,100)");
  }
  if (!(full_scale > 0.0)) {
    throw ContractError("compute_digital_gain: full_scale must be > 0");
  }
  std::size_t total = 0;
  for (const auto& img : images) total += img.size();
  if (total == 0) {
    throw ContractError("compute_digital_gain: no pixels");
  }
  std::vector<double> pooled;
  pooled.reserve(total);
  for (const auto& img : images) {
    pooled.insert(pooled.end(), img.samples().begin(), img.samples().end());
  }
  // Smallest value v such that at least percentile% of pixels are <= v.
  std::size_t k = static_cast<std::size_t>(
      std::ceil(percentile / 100.0 * static_cast<double>(total)));
  k = std::clamp<std::size_t>(k, 1, total);
  std::nth_element(pooled.begin(), pooled.begin() + (k - 1), pooled.end());
  double p = pooled[k - 1];
  if (!(p > 0.0)) {
    throw DegenerateInputError("compute_digital_gain: percentile value is not positive");
  }
  return full_scale / p;
}

const std::array<NoiseCondition, 3>& noise_conditions() {
  static const std::array<NoiseCondition, 3> conditions = {{
      {"low", 0.0, 2.14, 1.0 / 30.0, {2.12, 1.75, 3.27}},
      {"medium", 12.0, 1.90, 1.0 / 120.0, {5.16, 4.29, 9.08}},
      {"high", 12.0, 3.67, 1.0 / 250.0, {8.62, 7.31, 15.79}},
  }};
  return conditions;
}

const NoiseCondition& noise_condition(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (const auto& c : noise_conditions()) {
    if (c.name == lower) return c;
  }
  throw ContractError("unknown noise condition: " + name);
}

}  // namespace pfapipe
