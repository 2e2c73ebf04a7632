#include "pfapipe/demosaic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pfapipe/box_filter.hpp"
#include "pfapipe/mosaic_ops.hpp"

namespace pfapipe {

namespace {

constexpr double kDirectionalEps = 1e-10;
const std::vector<double> kLowpass5 = {1.0 / 8, 2.0 / 8, 2.0 / 8, 2.0 / 8, 1.0 / 8};
const std::vector<double> kLowpass3 = {1.0 / 4, 2.0 / 4, 1.0 / 4};

// Directional gradient energies of a 2x2-periodic mosaic. The centered
// difference at distance 2 compares same-channel samples, so edges are
// detected without channel crosstalk.
void directional_weights(const Plane& mosaic, Plane& w_h, Plane& w_v) {
  const int w = mosaic.width();
  const int h = mosaic.height();
  Plane gh2(w, h), gv2(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double gh = mosaic.at_clamped(y, x + 1) - mosaic.at_clamped(y, x - 1);
      double gv = mosaic.at_clamped(y + 1, x) - mosaic.at_clamped(y - 1, x);
      gh2.at(y, x) = gh * gh;
      gv2.at(y, x) = gv * gv;
    }
  }
  Plane eh = box_sum_replicate(gh2, 2);
  Plane ev = box_sum_replicate(gv2, 2);
  w_h = Plane(w, h);
  w_v = Plane(w, h);
  for (std::size_t k = 0; k < w_h.size(); ++k) {
    w_h.data()[k] = 1.0 / (kDirectionalEps + eh.data()[k]);
    w_v.data()[k] = 1.0 / (kDirectionalEps + ev.data()[k]);
  }
}

Plane blend_directional(const Plane& est_h, const Plane& est_v,
                        const Plane& w_h, const Plane& w_v) {
  Plane out(est_h.width(), est_h.height());
  for (std::size_t k = 0; k < out.size(); ++k) {
    double wh = w_h.data()[k], wv = w_v.data()[k];
    out.data()[k] = (wh * est_h.data()[k] + wv * est_v.data()[k]) / (wh + wv);
  }
  return out;
}

}  // namespace

SparseChannel sparse_channel_from_mosaic(const MosaicImage& mosaic, const ChannelLabel& label) {
  const PatternDescriptor& pat = mosaic.pattern();
  auto phases = pat.phases_of(label);
  if (phases.size() != 1) {
    throw ContractError("sparse_channel_from_mosaic: label must occupy exactly one tile cell");
  }
  SparseChannel s;
  s.pitch_y = pat.tile_height();
  s.pitch_x = pat.tile_width();
  s.plane = Plane(mosaic.width(), mosaic.height());
  s.mask = Plane(mosaic.width(), mosaic.height());
  auto [oy, ox] = phases.front();
  for (int y = oy; y < mosaic.height(); y += s.pitch_y) {
    for (int x = ox; x < mosaic.width(); x += s.pitch_x) {
      s.plane.at(y, x) = mosaic.plane().at(y, x);
      s.mask.at(y, x) = 1.0;
    }
  }
  return s;
}

Plane generate_intensity_guide(const MosaicImage& mosaic) {
  mosaic.require_kind(PatternKind::mpfa, "generate_intensity_guide");
  const Plane& m = mosaic.plane();

  // The long kernel runs along the estimate's direction; the short cross
  // kernel brings in the other row/column so every angle contributes 1/4.
  Plane est_h = convolve_separable_replicate(m, kLowpass5, kLowpass3);
  Plane est_v = convolve_separable_replicate(m, kLowpass3, kLowpass5);

  Plane w_h, w_v;
  directional_weights(m, w_h, w_v);
  return blend_directional(est_h, est_v, w_h, w_v);
}

Plane lattice_bilinear_upsample(const Plane& values, const Plane& mask,
                                int pitch_y, int pitch_x) {
  require_same_size(values, mask, "lattice_bilinear_upsample");
  std::vector<double> kx = triangle_kernel(pitch_x);
  std::vector<double> ky = triangle_kernel(pitch_y);
  Plane num = convolve_separable_zero(values, kx, ky);
  Plane den = convolve_separable_zero(mask, kx, ky);
  Plane out(values.width(), values.height());
  for (std::size_t k = 0; k < out.size(); ++k) {
    double d = den.data()[k];
    out.data()[k] = d > 1e-12 ? num.data()[k] / d : 0.0;
  }
  return out;
}

Plane residual_interpolate_channel(const SparseChannel& sparse, const Plane& guide,
                                   const GuidedFilterParams& params) {
  require_same_size(sparse.plane, guide, "residual_interpolate_channel");
  require_same_size(sparse.plane, sparse.mask, "residual_interpolate_channel");
  bool any = false;
  for (double v : sparse.mask.samples()) {
    if (v != 0.0) {
      any = true;
      break;
    }
  }
  if (!any) {
    throw ContractError("residual_interpolate_channel: empty mask");
  }

  Plane tentative = guided_filter_masked(sparse.plane, sparse.mask, guide, params);

  Plane residual(sparse.plane.width(), sparse.plane.height());
  for (std::size_t k = 0; k < residual.size(); ++k) {
    if (sparse.mask.data()[k] != 0.0) {
      residual.data()[k] = sparse.plane.data()[k] - tentative.data()[k];
    }
  }
  Plane residual_full =
      lattice_bilinear_upsample(residual, sparse.mask, sparse.pitch_y, sparse.pitch_x);

  Plane out(sparse.plane.width(), sparse.plane.height());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.data()[k] = sparse.mask.data()[k] != 0.0
                        ? sparse.plane.data()[k]
                        : tentative.data()[k] + residual_full.data()[k];
  }
  return out;
}

PolarizationStack demosaick_mpfa_igri2(const MosaicImage& mosaic,
                                       const DemosaicParams& params) {
  mosaic.require_kind(PatternKind::mpfa, "demosaick_mpfa_igri2");
  params.validate();

  Plane guide = generate_intensity_guide(mosaic);
  std::array<Plane, 4> planes;
  for (int pass = 0; pass < params.guide_iterations; ++pass) {
    for (int i = 0; i < 4; ++i) {
      SparseChannel sparse = sparse_channel_from_mosaic(mosaic, {kAngles[i], Color::mono});
      planes[i] = residual_interpolate_channel(sparse, guide, params.polar_gf);
    }
    if (pass + 1 < params.guide_iterations) {
      guide = Plane(mosaic.width(), mosaic.height());
      for (std::size_t k = 0; k < guide.size(); ++k) {
        guide.data()[k] = 0.25 * (planes[0].data()[k] + planes[1].data()[k] +
                                  planes[2].data()[k] + planes[3].data()[k]);
      }
    }
  }

  PolarizationStack out;
  for (int i = 0; i < 4; ++i) {
    out.add({kAngles[i], Color::mono}, std::move(planes[i]));
  }
  return out;
}

RgbImage demosaick_bayer_ri(const MosaicImage& bayer, const DemosaicParams& params) {
  bayer.require_kind(PatternKind::bayer, "demosaick_bayer_ri");
  params.validate();
  const Plane& m = bayer.plane();
  const PatternDescriptor& pat = bayer.pattern();

  // G first: horizontal/vertical neighbor averages at non-G pixels, blended
  // edge-aware; observed G samples pass through. At the image border the
  // one-sided in-bounds neighbor is used twice so the estimate never mixes
  // in the center pixel's own (different-color) sample.
  const int w = m.width(), h = m.height();
  Plane est_h(w, h), est_v(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double left = x > 0 ? m.at(y, x - 1) : m.at(y, x + 1);
      double right = x + 1 < w ? m.at(y, x + 1) : m.at(y, x - 1);
      est_h.at(y, x) = 0.5 * (left + right);
      double up = y > 0 ? m.at(y - 1, x) : m.at(y + 1, x);
      double down = y + 1 < h ? m.at(y + 1, x) : m.at(y - 1, x);
      est_v.at(y, x) = 0.5 * (up + down);
    }
  }
  Plane w_h, w_v;
  directional_weights(m, w_h, w_v);
  Plane blended = blend_directional(est_h, est_v, w_h, w_v);

  Plane green(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      green.at(y, x) =
          pat.label_at(y, x).color == Color::g ? m.at(y, x) : blended.at(y, x);
    }
  }

  auto interpolate_against_green = [&](Color color) {
    ChannelLabel label{pat.cell(0, 0).angle, color};
    SparseChannel sparse = sparse_channel_from_mosaic(bayer, label);
    return residual_interpolate_channel(sparse, green, params.bayer_gf);
  };
  Plane red = interpolate_against_green(Color::r);
  Plane blue = interpolate_against_green(Color::b);
  return RgbImage(std::move(red), std::move(green), std::move(blue));
}

PolarizationStack demosaick_cpfa(const MosaicImage& mosaic, const DemosaicParams& params) {
  mosaic.require_kind(PatternKind::cpfa, "demosaick_cpfa");
  params.validate();

  std::map<int, MosaicImage> bayers = split_cpfa_to_bayer(mosaic);
  std::map<int, RgbImage> rgb;
  for (const auto& [angle, bayer] : bayers) {
    rgb.emplace(angle, demosaick_bayer_ri(bayer, params));
  }

  PatternDescriptor mpfa_pat = PatternDescriptor::mpfa(mosaic.pattern().angle_layout());
  std::map<Color, MosaicImage> color_mosaics = rearrange_rgb_to_mpfa(rgb, mpfa_pat);

  PolarizationStack out;
  for (Color color : {Color::r, Color::g, Color::b}) {
    PolarizationStack mono = demosaick_mpfa_igri2(color_mosaics.at(color), params);
    for (int a : kAngles) {
      out.add({a, color}, mono.plane(a, Color::mono));
    }
  }
  return out;
}

PolarizationStack demosaick_bilinear(const MosaicImage& mosaic) {
  const PatternDescriptor& pat = mosaic.pattern();
  const Plane& m = mosaic.plane();

  PolarizationStack out;
  for (const ChannelLabel& label : pat.labels()) {
    auto phases = pat.phases_of(label);
    Plane acc(m.width(), m.height());
    for (auto [oy, ox] : phases) {
      Plane values(m.width(), m.height());
      Plane mask(m.width(), m.height());
      for (int y = oy; y < m.height(); y += pat.tile_height()) {
        for (int x = ox; x < m.width(); x += pat.tile_width()) {
          values.at(y, x) = m.at(y, x);
          mask.at(y, x) = 1.0;
        }
      }
      Plane up = lattice_bilinear_upsample(values, mask, pat.tile_height(), pat.tile_width());
      for (std::size_t k = 0; k < acc.size(); ++k) acc.data()[k] += up.data()[k];
    }
    double inv = 1.0 / static_cast<double>(phases.size());
    for (double& v : acc.samples()) v *= inv;
    // Observed samples are preserved exactly in their own channel plane.
    for (int y = 0; y < m.height(); ++y) {
      for (int x = 0; x < m.width(); ++x) {
        if (pat.label_at(y, x) == label) acc.at(y, x) = m.at(y, x);
      }
    }
    out.add(label, std::move(acc));
  }
  return out;
}

}  // namespace pfapipe
