#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfapipe/plane.hpp"

namespace pfapipe {

// PSNR in dB against the given peak; the evaluation region excludes `border`
// pixels on every side. nullopt means the images are identical on that
// region ("identical" in reports).
std::optional<double> psnr(const Plane& ref, const Plane& test, double peak = 1.0,
                           int border = 4);

// PSNR with the MSE pooled jointly over the three color planes.
std::optional<double> cpsnr(const RgbImage& ref, const RgbImage& test, double peak = 1.0,
                            int border = 4);

// Circular RMSE in degrees for angle images in [0,180): per-pixel difference
// d = min(|a-b|, 180-|a-b|). Optionally restricted to pixels where
// `dop >= dop_threshold` (AoP is meaningless where nothing is polarized).
double angle_rmse(const Plane& ref_deg, const Plane& test_deg, int border = 4,
                  const Plane* dop = nullptr, double dop_threshold = 0.0);

// One benchmark row: PSNRs for the four intensities, S0/S1/S2, DoP, and the
// AoP circular RMSE.
struct EvalReport {
  std::string scene;
  std::string method;
  std::string noise_level;
  std::optional<double> i0, i45, i90, i135, s0, s1, s2, dop;
  double aop_rmse_deg = 0.0;
};

std::string eval_csv_header();
std::string eval_csv_row(const EvalReport& report);

// Per-method mean across scenes. Any "identical" (unbounded) constituent
// makes the pooled mean unbounded, reported as "identical" too.
EvalReport mean_report(const std::vector<EvalReport>& rows, const std::string& method,
                       const std::string& noise_level);

}  // namespace pfapipe
