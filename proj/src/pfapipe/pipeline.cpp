#include "pfapipe/pipeline.hpp"

#include <cmath>

namespace pfapipe {

PipelineKind pipeline_kind_from_name(const std::string& name) {
  if (name == "demosaick-only") return PipelineKind::demosaick_only;
  if (name == "demosaick-then-denoise") return PipelineKind::demosaick_then_denoise;
  if (name == "denoise-then-demosaick") return PipelineKind::denoise_then_demosaick;
  throw ContractError("unknown pipeline: " + name);
}

const char* pipeline_kind_name(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::demosaick_only: return "demosaick-only";
    case PipelineKind::demosaick_then_denoise: return "demosaick-then-denoise";
    default: return "denoise-then-demosaick";
  }
}

Demosaicker demosaicker_from_name(const std::string& name) {
  if (name == "igri2") return Demosaicker::igri2;
  if (name == "bilinear") return Demosaicker::bilinear;
  throw ContractError("unknown demosaicker: " + name);
}

namespace {

PolarizationStack demosaick(const MosaicImage& mosaic, const RunConfig& config) {
  if (config.demosaicker == Demosaicker::bilinear) {
    return demosaick_bilinear(mosaic);
  }
  if (mosaic.pattern().kind() == PatternKind::mpfa) {
    return demosaick_mpfa_igri2(mosaic, config.demosaic);
  }
  if (mosaic.pattern().kind() == PatternKind::cpfa) {
    return demosaick_cpfa(mosaic, config.demosaic);
  }
  throw ContractError("run_pipeline: unsupported mosaic pattern");
}

MosaicImage denoise_mosaic(const MosaicImage& mosaic, const RunConfig& config) {
  if (mosaic.pattern().kind() == PatternKind::mpfa) {
    return denoise_mpfa(mosaic, config.profile, config.bm3d);
  }
  return denoise_cpfa(mosaic, config.profile, config.bm3d);
}

PolarizationStack denoise_planes(const PolarizationStack& stack, const RunConfig& config) {
  PolarizationStack out;
  for (const auto& channel : stack.channels()) {
    double sigma = config.profile.sigma_for(channel.label);
    out.add(channel.label, bm3d_denoise(channel.plane, sigma, config.bm3d));
  }
  return out;
}

}  // namespace

PipelineOutput run_pipeline(const RunConfig& config, const MosaicImage& input) {
  if (input.pattern().kind() == PatternKind::bayer) {
    throw ContractError("run_pipeline: pattern must be MPFA or CPFA");
  }

  PipelineOutput out;
  switch (config.pipeline) {
    case PipelineKind::demosaick_only:
      out.stack = demosaick(input, config);
      break;
    case PipelineKind::demosaick_then_denoise:
      out.stack = denoise_planes(demosaick(input, config), config);
      break;
    case PipelineKind::denoise_then_demosaick:
      out.stack = demosaick(denoise_mosaic(input, config), config);
      break;
  }

  std::vector<Color> colors;
  if (out.stack.is_mono()) {
    colors = {Color::mono};
  } else if (out.stack.is_color()) {
    colors = {Color::r, Color::g, Color::b};
  } else {
    throw ContractError("run_pipeline: reconstruction is neither mono nor color");
  }
  for (Color c : colors) {
    StokesImage stokes = stokes_from_angles(out.stack.angle_planes(c));
    out.dop.push_back(compute_dop(stokes));
    out.aop_deg.push_back(compute_aop(stokes));
    out.stokes.push_back(std::move(stokes));
  }
  return out;
}

namespace {

std::optional<double> pooled_psnr(const std::vector<const Plane*>& refs,
                                  const std::vector<const Plane*>& tests, double peak,
                                  int border) {
  if (refs.size() == 1) {
    return psnr(*refs[0], *tests[0], peak, border);
  }
  RgbImage ref(*refs[0], *refs[1], *refs[2]);
  RgbImage test(*tests[0], *tests[1], *tests[2]);
  return cpsnr(ref, test, peak, border);
}

double pooled_angle_rmse(const std::vector<const Plane*>& refs,
                         const std::vector<const Plane*>& tests, int border) {
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    double r = angle_rmse(*refs[i], *tests[i], border);
    sum_sq += r * r;
  }
  return std::sqrt(sum_sq / static_cast<double>(refs.size()));
}

}  // namespace

EvalReport evaluate_stack(const PolarizationStack& gt, const PolarizationStack& test,
                          int border) {
  std::vector<Color> colors;
  if (gt.is_mono() && test.is_mono()) {
    colors = {Color::mono};
  } else if (gt.is_color() && test.is_color()) {
    colors = {Color::r, Color::g, Color::b};
  } else {
    throw ContractError("evaluate_stack: stacks must both be mono or both color");
  }

  struct Derived {
    StokesImage stokes;
    Plane dop, aop;
  };
  auto derive = [&](const PolarizationStack& stack, Color c) {
    Derived d;
    d.stokes = stokes_from_angles(stack.angle_planes(c));
    d.dop = compute_dop(d.stokes);
    d.aop = compute_aop(d.stokes);
    return d;
  };

  std::vector<Derived> gt_d, test_d;
  for (Color c : colors) {
    gt_d.push_back(derive(gt, c));
    test_d.push_back(derive(test, c));
  }

  auto collect = [&](auto member) {
    std::pair<std::vector<const Plane*>, std::vector<const Plane*>> out;
    for (std::size_t i = 0; i < colors.size(); ++i) {
      out.first.push_back(member(gt_d[i], colors[i]));
      out.second.push_back(member(test_d[i], colors[i]));
    }
    return out;
  };

  EvalReport rep;
  const std::array<std::optional<double> EvalReport::*, 4> angle_fields = {
      &EvalReport::i0, &EvalReport::i45, &EvalReport::i90, &EvalReport::i135};
  for (int i = 0; i < 4; ++i) {
    std::vector<const Plane*> refs, tests;
    for (Color c : colors) {
      refs.push_back(&gt.plane(kAngles[i], c));
      tests.push_back(&test.plane(kAngles[i], c));
    }
    rep.*angle_fields[i] = pooled_psnr(refs, tests, 1.0, border);
  }

  auto [s0_r, s0_t] = collect([](const Derived& d, Color) { return &d.stokes.s0; });
  auto [s1_r, s1_t] = collect([](const Derived& d, Color) { return &d.stokes.s1; });
  auto [s2_r, s2_t] = collect([](const Derived& d, Color) { return &d.stokes.s2; });
  auto [dop_r, dop_t] = collect([](const Derived& d, Color) { return &d.dop; });
  auto [aop_r, aop_t] = collect([](const Derived& d, Color) { return &d.aop; });
  rep.s0 = pooled_psnr(s0_r, s0_t, 1.0, border);
  rep.s1 = pooled_psnr(s1_r, s1_t, 1.0, border);
  rep.s2 = pooled_psnr(s2_r, s2_t, 1.0, border);
  rep.dop = pooled_psnr(dop_r, dop_t, 1.0, border);
  rep.aop_rmse_deg = pooled_angle_rmse(aop_r, aop_t, border);
  return rep;
}

PolarizationStack decimate_gt_for_cpfa(const PolarizationStack& gt,
                                       const PatternDescriptor& cpfa_pattern) {
  if (cpfa_pattern.kind() != PatternKind::cpfa) {
    throw ContractError("decimate_gt_for_cpfa: pattern must be CPFA");
  }
  if (!gt.is_color()) {
    throw ContractError("decimate_gt_for_cpfa: gt must be a 12-channel color stack");
  }
  std::array<int, 4> angles = cpfa_pattern.angle_layout();
  PolarizationStack out;
  for (const auto& channel : gt.channels()) {
    int ay = 0, ax = 0;
    for (int i = 0; i < 4; ++i) {
      if (angles[i] == channel.label.angle) {
        ay = i / 2;
        ax = i % 2;
      }
    }
    const Plane& src = channel.plane;
    Plane dst(src.width() / 2, src.height() / 2);
    for (int y = 0; y < dst.height(); ++y) {
      for (int x = 0; x < dst.width(); ++x) {
        dst.at(y, x) = src.at(2 * y + ay, 2 * x + ax);
      }
    }
    out.add(channel.label, std::move(dst));
  }
  return out;
}

}  // namespace pfapipe
