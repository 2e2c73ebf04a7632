#include "pfapipe/pfapipe.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "pfapipe/dataset.hpp"
#include "pfapipe/image_io.hpp"
#include "pfapipe/json_params.hpp"
#include "pfapipe/mosaic_ops.hpp"
#include "pfapipe/pipeline.hpp"
#include "pfapipe/synth.hpp"
#include "pfapipe/threading.hpp"

using namespace pfapipe;

struct pfp_plane {
  Plane v;
};
struct pfp_pattern {
  PatternDescriptor v;
};
struct pfp_mosaic {
  MosaicImage v;
};
struct pfp_stack {
  PolarizationStack v;
};
struct pfp_burst {
  CaptureBurst v;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
pfp_status guarded(F&& fn) {
  try {
    fn();
    return PFP_OK;
  } catch (const ContractError& e) {
    g_last_error = e.what();
    return PFP_ERR_CONTRACT;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return PFP_ERR_IO;
  } catch (const FormatError& e) {
    g_last_error = e.what();
    return PFP_ERR_FORMAT;
  } catch (const DegenerateInputError& e) {
    g_last_error = e.what();
    return PFP_ERR_DEGENERATE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PFP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PFP_ERR_INTERNAL;
  }
}

void require_arg(const void* p, const char* name) {
  if (!p) throw ContractError(std::string(name) + " must not be NULL");
}

Color to_color(pfp_color c) {
  switch (c) {
    case PFP_MONO: return Color::mono;
    case PFP_R: return Color::r;
    case PFP_G: return Color::g;
    case PFP_B: return Color::b;
  }
  throw ContractError("invalid pfp_color");
}

std::array<int, 4> to_angles(const int* angles) {
  if (!angles) return kDefaultAngleLayout;
  return {angles[0], angles[1], angles[2], angles[3]};
}

Bm3dParams to_bm3d(const pfp_bm3d_params* p) {
  if (!p) return {};
  Bm3dParams out;
  out.block_size = p->block_size;
  out.step = p->step;
  out.search_radius = p->search_radius;
  out.max_blocks_stage1 = p->max_blocks_stage1;
  out.max_blocks_stage2 = p->max_blocks_stage2;
  out.lambda_hard = p->lambda_hard;
  out.tau_match_stage1 = p->tau_match_stage1;
  out.tau_match_stage2 = p->tau_match_stage2;
  out.kaiser_beta = p->kaiser_beta;
  return out;
}

DemosaicParams to_demosaic(const pfp_guided_params* p) {
  if (!p) return {};
  DemosaicParams out;
  out.polar_gf.radius = p->radius;
  out.polar_gf.epsilon = p->epsilon;
  out.bayer_gf.radius = p->bayer_radius;
  out.bayer_gf.epsilon = p->bayer_epsilon;
  out.guide_iterations = p->iterations;
  return out;
}

NoiseProfile to_profile(const double* sigmas, int count) {
  require_arg(sigmas, "sigmas");
  if (count == 1) return NoiseProfile::mono(sigmas[0]);
  if (count == 3) return NoiseProfile::rgb(sigmas[0], sigmas[1], sigmas[2]);
  throw ContractError("sigma_count must be 1 (mono) or 3 (R,G,B)");
}

double score_value(const std::optional<double>& v) {
  return v.has_value() ? *v : std::numeric_limits<double>::infinity();
}

}  // namespace

extern "C" {

const char* pfp_version(void) { return "0.1.0"; }

const char* pfp_last_error(void) { return g_last_error.c_str(); }

void pfp_set_max_threads(int n) { set_max_threads(n); }

/* ---- planes ---- */

pfp_status pfp_plane_create(int width, int height, const double* samples, pfp_plane** out) {
  return guarded([&] {
    require_arg(samples, "samples");
    require_arg(out, "out");
    std::vector<double> data(samples, samples + static_cast<std::size_t>(width) * height);
    *out = new pfp_plane{Plane(width, height, std::move(data))};
  });
}

void pfp_plane_free(pfp_plane* plane) { delete plane; }

int pfp_plane_width(const pfp_plane* plane) { return plane ? plane->v.width() : 0; }

int pfp_plane_height(const pfp_plane* plane) { return plane ? plane->v.height() : 0; }

pfp_status pfp_plane_read(const pfp_plane* plane, double* out) {
  return guarded([&] {
    require_arg(plane, "plane");
    require_arg(out, "out");
    std::memcpy(out, plane->v.data(), plane->v.size() * sizeof(double));
  });
}

pfp_status pfp_plane_load(const char* path, pfp_format format, pfp_plane** out) {
  return guarded([&] {
    require_arg(path, "path");
    require_arg(out, "out");
    *out = new pfp_plane{load_plane(
        path, format == PFP_FORMAT_PNG16 ? PlaneFormat::png16 : PlaneFormat::pfi_raw)};
  });
}

pfp_status pfp_plane_store(const pfp_plane* plane, const char* path, pfp_format format) {
  return guarded([&] {
    require_arg(plane, "plane");
    require_arg(path, "path");
    store_plane(plane->v, path,
                format == PFP_FORMAT_PNG16 ? PlaneFormat::png16 : PlaneFormat::pfi_raw);
  });
}

/* ---- patterns ---- */

pfp_status pfp_pattern_mpfa(const int* angles, pfp_pattern** out) {
  return guarded([&] {
    require_arg(out, "out");
    *out = new pfp_pattern{PatternDescriptor::mpfa(to_angles(angles))};
  });
}

pfp_status pfp_pattern_bayer(int angle, pfp_pattern** out) {
  return guarded([&] {
    require_arg(out, "out");
    *out = new pfp_pattern{PatternDescriptor::bayer(angle)};
  });
}

pfp_status pfp_pattern_cpfa(const int* angles, pfp_pattern** out) {
  return guarded([&] {
    require_arg(out, "out");
    *out = new pfp_pattern{PatternDescriptor::cpfa(to_angles(angles))};
  });
}

void pfp_pattern_free(pfp_pattern* pattern) { delete pattern; }

/* ---- mosaics & stacks ---- */

pfp_status pfp_mosaic_create(const pfp_plane* plane, const pfp_pattern* pattern,
                             pfp_mosaic** out) {
  return guarded([&] {
    require_arg(plane, "plane");
    require_arg(pattern, "pattern");
    require_arg(out, "out");
    *out = new pfp_mosaic{MosaicImage(plane->v, pattern->v)};
  });
}

pfp_status pfp_mosaic_get_plane(const pfp_mosaic* mosaic, pfp_plane** out) {
  return guarded([&] {
    require_arg(mosaic, "mosaic");
    require_arg(out, "out");
    *out = new pfp_plane{mosaic->v.plane()};
  });
}

void pfp_mosaic_free(pfp_mosaic* mosaic) { delete mosaic; }

pfp_status pfp_stack_create(pfp_stack** out) {
  return guarded([&] {
    require_arg(out, "out");
    *out = new pfp_stack{};
  });
}

pfp_status pfp_stack_add(pfp_stack* stack, int angle, pfp_color color,
                         const pfp_plane* plane) {
  return guarded([&] {
    require_arg(stack, "stack");
    require_arg(plane, "plane");
    stack->v.add({angle, to_color(color)}, plane->v);
  });
}

int pfp_stack_count(const pfp_stack* stack) {
  return stack ? static_cast<int>(stack->v.channel_count()) : 0;
}

pfp_status pfp_stack_channel_label(const pfp_stack* stack, int index, int* angle,
                                   pfp_color* color) {
  return guarded([&] {
    require_arg(stack, "stack");
    if (index < 0 || index >= static_cast<int>(stack->v.channel_count())) {
      throw ContractError("channel index out of range");
    }
    const auto& label = stack->v.channels()[index].label;
    if (angle) *angle = label.angle;
    if (color) *color = static_cast<pfp_color>(label.color);
  });
}

pfp_status pfp_stack_get(const pfp_stack* stack, int angle, pfp_color color,
                         pfp_plane** out) {
  return guarded([&] {
    require_arg(stack, "stack");
    require_arg(out, "out");
    *out = new pfp_plane{stack->v.plane({angle, to_color(color)})};
  });
}

pfp_status pfp_stack_load_pfi(const char* path, pfp_stack** out) {
  return guarded([&] {
    require_arg(path, "path");
    require_arg(out, "out");
    *out = new pfp_stack{load_stack_pfi(path)};
  });
}

pfp_status pfp_stack_store_pfi(const pfp_stack* stack, const char* path) {
  return guarded([&] {
    require_arg(stack, "stack");
    require_arg(path, "path");
    store_stack_pfi(stack->v, path);
  });
}

void pfp_stack_free(pfp_stack* stack) { delete stack; }

pfp_status pfp_mosaic_from_stack(const pfp_stack* stack, const pfp_pattern* pattern,
                                 pfp_mosaic** out) {
  return guarded([&] {
    require_arg(stack, "stack");
    require_arg(pattern, "pattern");
    require_arg(out, "out");
    *out = new pfp_mosaic{mosaic_from_stack(stack->v, pattern->v)};
  });
}

/* ---- denoising ---- */

void pfp_bm3d_params_init(pfp_bm3d_params* out) {
  if (!out) return;
  Bm3dParams d;
  out->block_size = d.block_size;
  out->step = d.step;
  out->search_radius = d.search_radius;
  out->max_blocks_stage1 = d.max_blocks_stage1;
  out->max_blocks_stage2 = d.max_blocks_stage2;
  out->lambda_hard = d.lambda_hard;
  out->tau_match_stage1 = d.tau_match_stage1;
  out->tau_match_stage2 = d.tau_match_stage2;
  out->kaiser_beta = d.kaiser_beta;
}

void pfp_guided_params_init(pfp_guided_params* out) {
  if (!out) return;
  DemosaicParams d;
  out->radius = d.polar_gf.radius;
  out->epsilon = d.polar_gf.epsilon;
  out->bayer_radius = d.bayer_gf.radius;
  out->bayer_epsilon = d.bayer_gf.epsilon;
  out->iterations = d.guide_iterations;
}

pfp_status pfp_params_load_json(const char* path, pfp_bm3d_params* bm3d,
                                pfp_guided_params* guided, int* threads) {
  return guarded([&] {
    require_arg(path, "path");
    ToolParams p = tool_params_from_file(path);
    if (bm3d) {
      bm3d->block_size = p.bm3d.block_size;
      bm3d->step = p.bm3d.step;
      bm3d->search_radius = p.bm3d.search_radius;
      bm3d->max_blocks_stage1 = p.bm3d.max_blocks_stage1;
      bm3d->max_blocks_stage2 = p.bm3d.max_blocks_stage2;
      bm3d->lambda_hard = p.bm3d.lambda_hard;
      bm3d->tau_match_stage1 = p.bm3d.tau_match_stage1;
      bm3d->tau_match_stage2 = p.bm3d.tau_match_stage2;
      bm3d->kaiser_beta = p.bm3d.kaiser_beta;
    }
    if (guided) {
      guided->radius = p.demosaic.polar_gf.radius;
      guided->epsilon = p.demosaic.polar_gf.epsilon;
      guided->bayer_radius = p.demosaic.bayer_gf.radius;
      guided->bayer_epsilon = p.demosaic.bayer_gf.epsilon;
      guided->iterations = p.demosaic.guide_iterations;
    }
    if (threads) *threads = p.threads;
  });
}

pfp_status pfp_bm3d_denoise(const pfp_plane* noisy, double sigma,
                            const pfp_bm3d_params* params, pfp_plane** out) {
  return guarded([&] {
    require_arg(noisy, "noisy");
    require_arg(out, "out");
    *out = new pfp_plane{bm3d_denoise(noisy->v, sigma, to_bm3d(params))};
  });
}

pfp_status pfp_denoise_mpfa(const pfp_mosaic* mosaic, double sigma,
                            const pfp_bm3d_params* params, pfp_mosaic** out) {
  return guarded([&] {
    require_arg(mosaic, "mosaic");
    require_arg(out, "out");
    *out = new pfp_mosaic{denoise_mpfa(mosaic->v, NoiseProfile::mono(sigma), to_bm3d(params))};
  });
}

pfp_status pfp_denoise_cpfa(const pfp_mosaic* mosaic, double sigma_r, double sigma_g,
                            double sigma_b, const pfp_bm3d_params* params,
                            pfp_mosaic** out) {
  return guarded([&] {
    require_arg(mosaic, "mosaic");
    require_arg(out, "out");
    *out = new pfp_mosaic{denoise_cpfa(mosaic->v, NoiseProfile::rgb(sigma_r, sigma_g, sigma_b),
                                       to_bm3d(params))};
  });
}

/* ---- demosaicking ---- */

pfp_status pfp_demosaick_mpfa_igri2(const pfp_mosaic* mosaic,
                                    const pfp_guided_params* params, pfp_stack** out) {
  return guarded([&] {
    require_arg(mosaic, "mosaic");
    require_arg(out, "out");
    *out = new pfp_stack{demosaick_mpfa_igri2(mosaic->v, to_demosaic(params))};
  });
}

pfp_status pfp_demosaick_cpfa(const pfp_mosaic* mosaic, const pfp_guided_params* params,
                              pfp_stack** out) {
  return guarded([&] {
    require_arg(mosaic, "mosaic");
    require_arg(out, "out");
    *out = new pfp_stack{demosaick_cpfa(mosaic->v, to_demosaic(params))};
  });
}

pfp_status pfp_demosaick_bilinear(const pfp_mosaic* mosaic, pfp_stack** out) {
  return guarded([&] {
    require_arg(mosaic, "mosaic");
    require_arg(out, "out");
    *out = new pfp_stack{demosaick_bilinear(mosaic->v)};
  });
}

/* ---- polarimetry ---- */

pfp_status pfp_stokes_compute(const pfp_stack* stack, pfp_color color, pfp_plane** s0,
                              pfp_plane** s1, pfp_plane** s2, pfp_plane** dop,
                              pfp_plane** aop_deg) {
  return guarded([&] {
    require_arg(stack, "stack");
    StokesImage stokes = stokes_from_angles(stack->v.angle_planes(to_color(color)));
    if (dop) *dop = new pfp_plane{compute_dop(stokes)};
    if (aop_deg) *aop_deg = new pfp_plane{compute_aop(stokes)};
    if (s0) *s0 = new pfp_plane{std::move(stokes.s0)};
    if (s1) *s1 = new pfp_plane{std::move(stokes.s1)};
    if (s2) *s2 = new pfp_plane{std::move(stokes.s2)};
  });
}

pfp_status pfp_render_aop_dop(const pfp_plane* aop_deg, const pfp_plane* dop,
                              const pfp_plane* s0, const char* png_path) {
  return guarded([&] {
    require_arg(aop_deg, "aop_deg");
    require_arg(dop, "dop");
    require_arg(s0, "s0");
    require_arg(png_path, "png_path");
    store_rgb_png8(render_aop_dop(aop_deg->v, dop->v, s0->v), png_path);
  });
}

/* ---- metrics ---- */

pfp_status pfp_psnr(const pfp_plane* ref, const pfp_plane* test, double peak, int border,
                    double* out_db) {
  return guarded([&] {
    require_arg(ref, "ref");
    require_arg(test, "test");
    require_arg(out_db, "out_db");
    *out_db = score_value(psnr(ref->v, test->v, peak, border));
  });
}

pfp_status pfp_cpsnr(const pfp_plane* ref_r, const pfp_plane* ref_g, const pfp_plane* ref_b,
                     const pfp_plane* test_r, const pfp_plane* test_g,
                     const pfp_plane* test_b, double peak, int border, double* out_db) {
  return guarded([&] {
    for (const auto* p : {ref_r, ref_g, ref_b, test_r, test_g, test_b}) {
      require_arg(p, "plane");
    }
    require_arg(out_db, "out_db");
    RgbImage ref(ref_r->v, ref_g->v, ref_b->v);
    RgbImage test(test_r->v, test_g->v, test_b->v);
    *out_db = score_value(cpsnr(ref, test, peak, border));
  });
}

pfp_status pfp_angle_rmse(const pfp_plane* ref_deg, const pfp_plane* test_deg, int border,
                          double* out_deg) {
  return guarded([&] {
    require_arg(ref_deg, "ref_deg");
    require_arg(test_deg, "test_deg");
    require_arg(out_deg, "out_deg");
    *out_deg = angle_rmse(ref_deg->v, test_deg->v, border);
  });
}

pfp_status pfp_evaluate(const pfp_stack* gt, const pfp_stack* test, int border,
                        pfp_eval_scores* out) {
  return guarded([&] {
    require_arg(gt, "gt");
    require_arg(test, "test");
    require_arg(out, "out");
    EvalReport rep = evaluate_stack(gt->v, test->v, border);
    out->i0 = score_value(rep.i0);
    out->i45 = score_value(rep.i45);
    out->i90 = score_value(rep.i90);
    out->i135 = score_value(rep.i135);
    out->s0 = score_value(rep.s0);
    out->s1 = score_value(rep.s1);
    out->s2 = score_value(rep.s2);
    out->dop = score_value(rep.dop);
    out->aop_rmse_deg = rep.aop_rmse_deg;
  });
}

pfp_status pfp_decimate_gt_for_cpfa(const pfp_stack* gt, const pfp_pattern* cpfa_pattern,
                                    pfp_stack** out) {
  return guarded([&] {
    require_arg(gt, "gt");
    require_arg(cpfa_pattern, "cpfa_pattern");
    require_arg(out, "out");
    *out = new pfp_stack{decimate_gt_for_cpfa(gt->v, cpfa_pattern->v)};
  });
}

/* ---- pipelines ---- */

pfp_status pfp_run_pipeline(const pfp_mosaic* input, pfp_pipeline pipeline,
                            pfp_demosaicker demosaicker, const double* sigmas,
                            int sigma_count, const pfp_bm3d_params* bm3d,
                            const pfp_guided_params* guided, pfp_stack** out_stack) {
  return guarded([&] {
    require_arg(input, "input");
    require_arg(out_stack, "out_stack");
    RunConfig config;
    switch (pipeline) {
      case PFP_DEMOSAICK_ONLY: config.pipeline = PipelineKind::demosaick_only; break;
      case PFP_DEMOSAICK_THEN_DENOISE:
        config.pipeline = PipelineKind::demosaick_then_denoise;
        break;
      case PFP_DENOISE_THEN_DEMOSAICK:
        config.pipeline = PipelineKind::denoise_then_demosaick;
        break;
      default: throw ContractError("invalid pfp_pipeline");
    }
    switch (demosaicker) {
      case PFP_IGRI2: config.demosaicker = Demosaicker::igri2; break;
      case PFP_BILINEAR: config.demosaicker = Demosaicker::bilinear; break;
      default: throw ContractError("invalid pfp_demosaicker");
    }
    if (config.pipeline != PipelineKind::demosaick_only || sigmas) {
      config.profile = to_profile(sigmas, sigma_count);
    }
    config.bm3d = to_bm3d(bm3d);
    config.demosaic = to_demosaic(guided);
    PipelineOutput out = run_pipeline(config, input->v);
    *out_stack = new pfp_stack{std::move(out.stack)};
  });
}

/* ---- synthesis ---- */

void pfp_scene_spec_init(pfp_scene_spec* out) {
  if (!out) return;
  SceneSpec d;
  out->width = d.width;
  out->height = d.height;
  out->seed = d.seed;
  out->smooth_modes = d.smooth_modes;
  out->max_cycles = d.max_cycles;
  out->edge_features = d.edge_features;
  out->edge_width_px = d.edge_width_px;
  out->s0_min = d.s0_min;
  out->s0_max = d.s0_max;
  out->dop_min = d.dop_min;
  out->dop_max = d.dop_max;
}

pfp_status pfp_synthesize_scene(const pfp_scene_spec* spec, int color, pfp_stack** out) {
  return guarded([&] {
    require_arg(spec, "spec");
    require_arg(out, "out");
    SceneSpec s;
    s.width = spec->width;
    s.height = spec->height;
    s.seed = spec->seed;
    s.smooth_modes = spec->smooth_modes;
    s.max_cycles = spec->max_cycles;
    s.edge_features = spec->edge_features;
    s.edge_width_px = spec->edge_width_px;
    s.s0_min = spec->s0_min;
    s.s0_max = spec->s0_max;
    s.dop_min = spec->dop_min;
    s.dop_max = spec->dop_max;
    *out = new pfp_stack{color ? synthesize_scene_color(s) : synthesize_scene(s)};
  });
}

pfp_status pfp_add_awgn(const pfp_plane* plane, double sigma, uint64_t seed,
                        pfp_plane** out) {
  return guarded([&] {
    require_arg(plane, "plane");
    require_arg(out, "out");
    *out = new pfp_plane{add_awgn(plane->v, sigma, seed)};
  });
}

/* ---- dataset construction ---- */

pfp_status pfp_burst_create(int angle, pfp_burst** out) {
  return guarded([&] {
    require_arg(out, "out");
    auto* b = new pfp_burst{};
    b->v.angle = angle;
    *out = b;
  });
}

pfp_status pfp_burst_add_frame(pfp_burst* burst, const pfp_plane* r, const pfp_plane* g,
                               const pfp_plane* b) {
  return guarded([&] {
    require_arg(burst, "burst");
    require_arg(r, "r");
    require_arg(g, "g");
    require_arg(b, "b");
    burst->v.frames.emplace_back(r->v, g->v, b->v);
  });
}

int pfp_burst_count(const pfp_burst* burst) {
  return burst ? static_cast<int>(burst->v.frames.size()) : 0;
}

pfp_status pfp_burst_select(const pfp_burst* burst, const int* indices, int count,
                            pfp_burst** out) {
  return guarded([&] {
    require_arg(burst, "burst");
    require_arg(indices, "indices");
    require_arg(out, "out");
    auto* b = new pfp_burst{};
    b->v.angle = burst->v.angle;
    try {
      for (int i = 0; i < count; ++i) {
        int idx = indices[i];
        if (idx < 0 || idx >= static_cast<int>(burst->v.frames.size())) {
          throw ContractError("frame index out of range");
        }
        b->v.frames.push_back(burst->v.frames[idx]);
      }
    } catch (...) {
      delete b;
      throw;
    }
    *out = b;
  });
}

void pfp_burst_free(pfp_burst* burst) { delete burst; }

pfp_status pfp_build_ground_truth(const pfp_burst* burst, int exclude_count,
                                  pfp_plane** gt_r, pfp_plane** gt_g, pfp_plane** gt_b,
                                  int* median_frame_index, int* excluded_indices) {
  return guarded([&] {
    require_arg(burst, "burst");
    GroundTruthResult res = build_ground_truth(burst->v, exclude_count);
    if (gt_r) *gt_r = new pfp_plane{std::move(res.gt.r)};
    if (gt_g) *gt_g = new pfp_plane{std::move(res.gt.g)};
    if (gt_b) *gt_b = new pfp_plane{std::move(res.gt.b)};
    if (median_frame_index) *median_frame_index = res.median_frame_index;
    if (excluded_indices) {
      for (int i = 0; i < exclude_count; ++i) excluded_indices[i] = res.excluded_indices[i];
    }
  });
}

pfp_status pfp_estimate_noise_levels(const pfp_burst* retained, const pfp_plane* gt_r,
                                     const pfp_plane* gt_g, const pfp_plane* gt_b,
                                     double out_sigma_rgb[3]) {
  return guarded([&] {
    require_arg(retained, "retained");
    require_arg(gt_r, "gt_r");
    require_arg(gt_g, "gt_g");
    require_arg(gt_b, "gt_b");
    require_arg(out_sigma_rgb, "out_sigma_rgb");
    RgbImage gt(gt_r->v, gt_g->v, gt_b->v);
    std::array<double, 3> sigma = estimate_noise_levels(retained->v, gt);
    for (int i = 0; i < 3; ++i) out_sigma_rgb[i] = sigma[i];
  });
}

pfp_status pfp_compute_digital_gain(const pfp_plane* const* images, int count,
                                    double percentile, double full_scale,
                                    double* out_gain) {
  return guarded([&] {
    require_arg(images, "images");
    require_arg(out_gain, "out_gain");
    std::vector<Plane> planes;
    planes.reserve(count);
    for (int i = 0; i < count; ++i) {
      require_arg(images[i], "images[i]");
      planes.push_back(images[i]->v);
    }
    *out_gain = compute_digital_gain(planes, percentile, full_scale);
  });
}

pfp_status pfp_noise_condition(const char* name, double out_sigma_rgb[3],
                               double* analog_gain_db, double* digital_gain,
                               double* shutter_s) {
  return guarded([&] {
    require_arg(name, "name");
    const NoiseCondition& c = noise_condition(name);
    if (out_sigma_rgb) {
      auto s = c.sigma_normalized();
      for (int i = 0; i < 3; ++i) out_sigma_rgb[i] = s[i];
    }
    if (analog_gain_db) *analog_gain_db = c.analog_gain_db;
    if (digital_gain) *digital_gain = c.digital_gain;
    if (shutter_s) *shutter_s = c.shutter_s;
  });
}

} /* extern "C" */
