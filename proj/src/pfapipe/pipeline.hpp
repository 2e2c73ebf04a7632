#pragma once

#include <string>

#include "pfapipe/demosaic.hpp"
#include "pfapipe/metrics.hpp"
#include "pfapipe/pfcd.hpp"
#include "pfapipe/polarimetry.hpp"

namespace pfapipe {

enum class PipelineKind {
  demosaick_only,
  demosaick_then_denoise,
  denoise_then_demosaick,
};

enum class Demosaicker { igri2, bilinear };

PipelineKind pipeline_kind_from_name(const std::string& name);
const char* pipeline_kind_name(PipelineKind kind);
Demosaicker demosaicker_from_name(const std::string& name);

struct RunConfig {
  PipelineKind pipeline = PipelineKind::denoise_then_demosaick;
  Demosaicker demosaicker = Demosaicker::igri2;
  NoiseProfile profile;
  Bm3dParams bm3d;
  DemosaicParams demosaic;
  int border = 4;
};

struct PipelineOutput {
  PolarizationStack stack;
  // Mono stacks carry one Stokes set; color stacks one per color (r,g,b).
  std::vector<StokesImage> stokes;
  std::vector<Plane> dop;
  std::vector<Plane> aop_deg;
};

// Executes the configured chain on an MPFA or CPFA mosaic and derives the
// polarimetric outputs.
PipelineOutput run_pipeline(const RunConfig& config, const MosaicImage& input);

// Benchmark scoring of a reconstruction against ground truth. Mono stacks use
// plain PSNR; color stacks pool CPSNR over the color planes and pool the AoP
// error over the per-color angle images. CPFA reconstructions live at half
// the mosaic resolution, so a full-resolution color gt is reduced by
// phase-aligned decimation (each angle keeps its own observed phase).
EvalReport evaluate_stack(const PolarizationStack& gt, const PolarizationStack& test,
                          int border);

// Phase-aligned 2x decimation of a color gt stack matching demosaick_cpfa's
// output grid for the given CPFA pattern.
PolarizationStack decimate_gt_for_cpfa(const PolarizationStack& gt,
                                       const PatternDescriptor& cpfa_pattern);

}  // namespace pfapipe
