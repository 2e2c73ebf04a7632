#pragma once

#include "pfapipe/plane.hpp"

namespace pfapipe {

// Two-stage BM3D parameters. Defaults are the classic published settings;
// matching distance thresholds are per-pixel squared differences on the
// normalized [0,1] intensity scale.
struct Bm3dParams {
  int block_size = 8;
  int step = 3;
  int search_radius = 19;
  int max_blocks_stage1 = 16;
  int max_blocks_stage2 = 32;
  double lambda_hard = 2.7;
  double tau_match_stage1 = 3000.0 / (255.0 * 255.0);
  double tau_match_stage2 = 400.0 / (255.0 * 255.0);
  double kaiser_beta = 2.0;

  void validate() const;
};

// Two-stage BM3D: hard-thresholding stage on the noisy image, then empirical
// Wiener filtering re-matched on the stage-1 estimate. sigma == 0 returns the
// input unchanged. The 3-D DC coefficient passes both stages untouched, so
// constant images are exact fixed points and adding a constant offset shifts
// the output by exactly that offset.
Plane bm3d_denoise(const Plane& noisy, double sigma, const Bm3dParams& params = {});

}  // namespace pfapipe
