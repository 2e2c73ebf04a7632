/* pfapipe — polarization filter array denoising/demosaicking pipeline.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns a
 * pfp_status and leaves a thread-local message readable via pfp_last_error().
 * Out-parameters are written only on PFP_OK.
 */
#ifndef PFAPIPE_H
#define PFAPIPE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pfp_status {
  PFP_OK = 0,
  PFP_ERR_CONTRACT = 1,   /* violated precondition or invariant */
  PFP_ERR_IO = 2,         /* filesystem failure */
  PFP_ERR_FORMAT = 3,     /* malformed file contents */
  PFP_ERR_DEGENERATE = 4, /* numerically unusable input */
  PFP_ERR_INTERNAL = 5
} pfp_status;

const char* pfp_version(void);
const char* pfp_last_error(void);
/* Run-wide worker budget for internally parallel operations; 0 = hardware. */
void pfp_set_max_threads(int n);

typedef struct pfp_plane pfp_plane;
typedef struct pfp_pattern pfp_pattern;
typedef struct pfp_mosaic pfp_mosaic;
typedef struct pfp_stack pfp_stack;
typedef struct pfp_burst pfp_burst;

typedef enum pfp_color { PFP_MONO = 0, PFP_R = 1, PFP_G = 2, PFP_B = 3 } pfp_color;

#define PFP_NO_ANGLE (-1)

typedef enum pfp_format { PFP_FORMAT_PNG16 = 0, PFP_FORMAT_PFI = 1 } pfp_format;

/* ---- planes ------------------------------------------------------------ */

/* samples: row-major doubles, full scale 1.0; copied. */
pfp_status pfp_plane_create(int width, int height, const double* samples, pfp_plane** out);
void pfp_plane_free(pfp_plane* plane);
int pfp_plane_width(const pfp_plane* plane);
int pfp_plane_height(const pfp_plane* plane);
/* out must hold width*height doubles. */
pfp_status pfp_plane_read(const pfp_plane* plane, double* out);
pfp_status pfp_plane_load(const char* path, pfp_format format, pfp_plane** out);
pfp_status pfp_plane_store(const pfp_plane* plane, const char* path, pfp_format format);

/* ---- patterns ----------------------------------------------------------- */

/* angles: row-major 2x2 layout covering {0,45,90,135}; NULL = (90,45/135,0). */
pfp_status pfp_pattern_mpfa(const int* angles, pfp_pattern** out);
pfp_status pfp_pattern_bayer(int angle, pfp_pattern** out);
pfp_status pfp_pattern_cpfa(const int* angles, pfp_pattern** out);
void pfp_pattern_free(pfp_pattern* pattern);

/* ---- mosaics & stacks ---------------------------------------------------- */

pfp_status pfp_mosaic_create(const pfp_plane* plane, const pfp_pattern* pattern,
                             pfp_mosaic** out);
pfp_status pfp_mosaic_get_plane(const pfp_mosaic* mosaic, pfp_plane** out);
void pfp_mosaic_free(pfp_mosaic* mosaic);

pfp_status pfp_stack_create(pfp_stack** out);
pfp_status pfp_stack_add(pfp_stack* stack, int angle, pfp_color color,
                         const pfp_plane* plane);
int pfp_stack_count(const pfp_stack* stack);
pfp_status pfp_stack_channel_label(const pfp_stack* stack, int index, int* angle,
                                   pfp_color* color);
pfp_status pfp_stack_get(const pfp_stack* stack, int angle, pfp_color color,
                         pfp_plane** out);
pfp_status pfp_stack_load_pfi(const char* path, pfp_stack** out);
pfp_status pfp_stack_store_pfi(const pfp_stack* stack, const char* path);
void pfp_stack_free(pfp_stack* stack);

/* Each mosaic pixel samples the stack plane of its pattern cell. */
pfp_status pfp_mosaic_from_stack(const pfp_stack* stack, const pfp_pattern* pattern,
                                 pfp_mosaic** out);

/* ---- denoising ----------------------------------------------------------- */

typedef struct pfp_bm3d_params {
  int block_size;
  int step;
  int search_radius;
  int max_blocks_stage1;
  int max_blocks_stage2;
  double lambda_hard;
  double tau_match_stage1;
  double tau_match_stage2;
  double kaiser_beta;
} pfp_bm3d_params;
void pfp_bm3d_params_init(pfp_bm3d_params* out);

typedef struct pfp_guided_params {
  int radius;           /* polarization-channel RI */
  double epsilon;
  int bayer_radius;     /* Bayer R/B RI */
  double bayer_epsilon;
  int iterations;       /* guide/RI passes */
} pfp_guided_params;
void pfp_guided_params_init(pfp_guided_params* out);

/* Reads the JSON config document; missing fields keep their defaults.
 * Any out-pointer may be NULL. */
pfp_status pfp_params_load_json(const char* path, pfp_bm3d_params* bm3d,
                                pfp_guided_params* guided, int* threads);

/* params NULL = defaults everywhere below. */
pfp_status pfp_bm3d_denoise(const pfp_plane* noisy, double sigma,
                            const pfp_bm3d_params* params, pfp_plane** out);
pfp_status pfp_denoise_mpfa(const pfp_mosaic* mosaic, double sigma,
                            const pfp_bm3d_params* params, pfp_mosaic** out);
pfp_status pfp_denoise_cpfa(const pfp_mosaic* mosaic, double sigma_r, double sigma_g,
                            double sigma_b, const pfp_bm3d_params* params,
                            pfp_mosaic** out);

/* ---- demosaicking --------------------------------------------------------- */

pfp_status pfp_demosaick_mpfa_igri2(const pfp_mosaic* mosaic,
                                    const pfp_guided_params* params, pfp_stack** out);
/* Output planes are at half the CPFA mosaic resolution. */
pfp_status pfp_demosaick_cpfa(const pfp_mosaic* mosaic, const pfp_guided_params* params,
                              pfp_stack** out);
pfp_status pfp_demosaick_bilinear(const pfp_mosaic* mosaic, pfp_stack** out);

/* ---- polarimetry ----------------------------------------------------------- */

/* Stokes products of one color of a stack (PFP_MONO for 4-channel stacks).
 * Any out-pointer may be NULL to skip that product. AoP is in degrees
 * [0,180). */
pfp_status pfp_stokes_compute(const pfp_stack* stack, pfp_color color, pfp_plane** s0,
                              pfp_plane** s1, pfp_plane** s2, pfp_plane** dop,
                              pfp_plane** aop_deg);
/* HSV visualization written as an 8-bit RGB PNG. */
pfp_status pfp_render_aop_dop(const pfp_plane* aop_deg, const pfp_plane* dop,
                              const pfp_plane* s0, const char* png_path);

/* ---- metrics --------------------------------------------------------------- */

/* Identical images report +infinity. border excludes that many pixels per side. */
pfp_status pfp_psnr(const pfp_plane* ref, const pfp_plane* test, double peak, int border,
                    double* out_db);
pfp_status pfp_cpsnr(const pfp_plane* ref_r, const pfp_plane* ref_g, const pfp_plane* ref_b,
                     const pfp_plane* test_r, const pfp_plane* test_g,
                     const pfp_plane* test_b, double peak, int border, double* out_db);
pfp_status pfp_angle_rmse(const pfp_plane* ref_deg, const pfp_plane* test_deg, int border,
                          double* out_deg);

typedef struct pfp_eval_scores {
  double i0, i45, i90, i135, s0, s1, s2, dop; /* dB; +inf = identical */
  double aop_rmse_deg;
} pfp_eval_scores;

/* Mono stacks use PSNR, color stacks CPSNR (pooled over colors). */
pfp_status pfp_evaluate(const pfp_stack* gt, const pfp_stack* test, int border,
                        pfp_eval_scores* out);
/* Phase-aligned 2x decimation of a full-resolution color gt stack onto the
 * grid produced by pfp_demosaick_cpfa. */
pfp_status pfp_decimate_gt_for_cpfa(const pfp_stack* gt, const pfp_pattern* cpfa_pattern,
                                    pfp_stack** out);

/* ---- pipelines -------------------------------------------------------------- */

typedef enum pfp_pipeline {
  PFP_DEMOSAICK_ONLY = 0,
  PFP_DEMOSAICK_THEN_DENOISE = 1,
  PFP_DENOISE_THEN_DEMOSAICK = 2
} pfp_pipeline;

typedef enum pfp_demosaicker { PFP_IGRI2 = 0, PFP_BILINEAR = 1 } pfp_demosaicker;

/* sigmas: 1 value (mono) or 3 values (R,G,B) in normalized units. */
pfp_status pfp_run_pipeline(const pfp_mosaic* input, pfp_pipeline pipeline,
                            pfp_demosaicker demosaicker, const double* sigmas,
                            int sigma_count, const pfp_bm3d_params* bm3d,
                            const pfp_guided_params* guided, pfp_stack** out_stack);

/* ---- synthesis --------------------------------------------------------------- */

typedef struct pfp_scene_spec {
  int width, height;
  uint64_t seed;
  int smooth_modes;
  double max_cycles;
  int edge_features;
  double edge_width_px;
  double s0_min, s0_max;
  double dop_min, dop_max;
} pfp_scene_spec;
void pfp_scene_spec_init(pfp_scene_spec* out);

/* color = 0 gives a 4-channel mono stack, 1 a 12-channel color stack. */
pfp_status pfp_synthesize_scene(const pfp_scene_spec* spec, int color, pfp_stack** out);
pfp_status pfp_add_awgn(const pfp_plane* plane, double sigma, uint64_t seed,
                        pfp_plane** out);

/* ---- dataset construction ------------------------------------------------------ */

pfp_status pfp_burst_create(int angle, pfp_burst** out);
pfp_status pfp_burst_add_frame(pfp_burst* burst, const pfp_plane* r, const pfp_plane* g,
                               const pfp_plane* b);
int pfp_burst_count(const pfp_burst* burst);
/* New burst holding the given frame indices (e.g. the retained set). */
pfp_status pfp_burst_select(const pfp_burst* burst, const int* indices, int count,
                            pfp_burst** out);
void pfp_burst_free(pfp_burst* burst);

/* Outlier-excluding ground-truth average. excluded_indices (optional) must
 * hold exclude_count ints; it receives the excluded frames in ascending
 * order. */
pfp_status pfp_build_ground_truth(const pfp_burst* burst, int exclude_count,
                                  pfp_plane** gt_r, pfp_plane** gt_g, pfp_plane** gt_b,
                                  int* median_frame_index, int* excluded_indices);
pfp_status pfp_estimate_noise_levels(const pfp_burst* retained, const pfp_plane* gt_r,
                                     const pfp_plane* gt_g, const pfp_plane* gt_b,
                                     double out_sigma_rgb[3]);
pfp_status pfp_compute_digital_gain(const pfp_plane* const* images, int count,
                                    double percentile, double full_scale,
                                    double* out_gain);

/* Published capture conditions ("low", "medium", "high"). Out-pointers may be
 * NULL; sigmas are normalized to full scale 1.0. */
pfp_status pfp_noise_condition(const char* name, double out_sigma_rgb[3],
                               double* analog_gain_db, double* digital_gain,
                               double* shutter_s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PFAPIPE_H */
