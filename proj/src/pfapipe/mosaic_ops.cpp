#include "pfapipe/mosaic_ops.hpp"

namespace pfapipe {

std::vector<Plane> split_phases(const Plane& plane, int tile_h, int tile_w) {
  if (plane.width() % tile_w != 0 || plane.height() % tile_h != 0) {
    throw ContractError("split_phases: dimensions not multiples of the tile");
  }
  int ow = plane.width() / tile_w;
  int oh = plane.height() / tile_h;
  std::vector<Plane> out;
  out.reserve(static_cast<std::size_t>(tile_w) * tile_h);
  for (int ty = 0; ty < tile_h; ++ty) {
    for (int tx = 0; tx < tile_w; ++tx) {
      Plane p(ow, oh);
      for (int y = 0; y < oh; ++y) {
        const double* src = plane.row(y * tile_h + ty);
        double* dst = p.row(y);
        for (int x = 0; x < ow; ++x) {
          dst[x] = src[x * tile_w + tx];
        }
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

Plane merge_phases(const std::vector<Plane>& phases, int tile_h, int tile_w) {
  if (phases.size() != static_cast<std::size_t>(tile_w) * tile_h) {
    throw ContractError("merge_phases: wrong phase count");
  }
  for (const auto& p : phases) {
    if (!p.same_size(phases.front())) {
      throw ContractError("merge_phases: phase dimensions differ");
    }
  }
  int ow = phases.front().width();
  int oh = phases.front().height();
  Plane out(ow * tile_w, oh * tile_h);
  for (int ty = 0; ty < tile_h; ++ty) {
    for (int tx = 0; tx < tile_w; ++tx) {
      const Plane& p = phases[ty * tile_w + tx];
      for (int y = 0; y < oh; ++y) {
        const double* src = p.row(y);
        double* dst = out.row(y * tile_h + ty);
        for (int x = 0; x < ow; ++x) {
          dst[x * tile_w + tx] = src[x];
        }
      }
    }
  }
  return out;
}

std::map<int, Plane> split_mpfa_quads(const MosaicImage& mosaic) {
  mosaic.require_kind(PatternKind::mpfa, "split_mpfa_quads");
  std::vector<Plane> phases = split_phases(mosaic.plane(), 2, 2);
  std::map<int, Plane> out;
  const PatternDescriptor& pat = mosaic.pattern();
  for (int ty = 0; ty < 2; ++ty) {
    for (int tx = 0; tx < 2; ++tx) {
      out.emplace(pat.cell(ty, tx).angle, std::move(phases[ty * 2 + tx]));
    }
  }
  return out;
}

MosaicImage merge_quads_to_mpfa(const std::map<int, Plane>& quads,
                                const PatternDescriptor& pattern) {
  if (pattern.kind() != PatternKind::mpfa) {
    throw ContractError("merge_quads_to_mpfa: pattern must be MPFA");
  }
  std::vector<Plane> phases(4);
  for (int ty = 0; ty < 2; ++ty) {
    for (int tx = 0; tx < 2; ++tx) {
      auto it = quads.find(pattern.cell(ty, tx).angle);
      if (it == quads.end()) {
        throw ContractError("merge_quads_to_mpfa: missing angle " +
                            std::to_string(pattern.cell(ty, tx).angle));
      }
      phases[ty * 2 + tx] = it->second;
    }
  }
  return MosaicImage(merge_phases(phases, 2, 2), pattern);
}

std::map<int, MosaicImage> split_cpfa_to_bayer(const MosaicImage& mosaic) {
  mosaic.require_kind(PatternKind::cpfa, "split_cpfa_to_bayer");
  const PatternDescriptor& pat = mosaic.pattern();
  std::array<int, 4> angles = pat.angle_layout();

  // Phase order over the 4x4 tile is row-major; the angle sub-phase within
  // each 2x2 color block selects that angle's Bayer mosaic.
  std::vector<Plane> phases = split_phases(mosaic.plane(), 2, 2);
  std::map<int, MosaicImage> out;
  for (int ay = 0; ay < 2; ++ay) {
    for (int ax = 0; ax < 2; ++ax) {
      int angle = angles[ay * 2 + ax];
      out.emplace(angle, MosaicImage(std::move(phases[ay * 2 + ax]),
                                     PatternDescriptor::bayer(angle)));
    }
  }
  return out;
}

MosaicImage merge_bayer_to_cpfa(const std::map<int, MosaicImage>& bayers,
                                const PatternDescriptor& cpfa_pattern) {
  if (cpfa_pattern.kind() != PatternKind::cpfa) {
    throw ContractError("merge_bayer_to_cpfa: pattern must be CPFA");
  }
  std::array<int, 4> angles = cpfa_pattern.angle_layout();
  std::vector<Plane> phases(4);
  for (int ay = 0; ay < 2; ++ay) {
    for (int ax = 0; ax < 2; ++ax) {
      auto it = bayers.find(angles[ay * 2 + ax]);
      if (it == bayers.end()) {
        throw ContractError("merge_bayer_to_cpfa: missing angle " +
                            std::to_string(angles[ay * 2 + ax]));
      }
      it->second.require_kind(PatternKind::bayer, "merge_bayer_to_cpfa");
      phases[ay * 2 + ax] = it->second.plane();
    }
  }
  return MosaicImage(merge_phases(phases, 2, 2), cpfa_pattern);
}

std::map<Color, MosaicImage> rearrange_rgb_to_mpfa(const std::map<int, RgbImage>& per_angle,
                                                   const PatternDescriptor& mpfa_pattern) {
  if (mpfa_pattern.kind() != PatternKind::mpfa) {
    throw ContractError("rearrange_rgb_to_mpfa: pattern must be MPFA");
  }
  for (int a : kAngles) {
    if (!per_angle.count(a)) {
      throw ContractError("rearrange_rgb_to_mpfa: missing angle " + std::to_string(a));
    }
  }
  const RgbImage& first = per_angle.begin()->second;
  for (const auto& [angle, img] : per_angle) {
    if (img.width() != first.width() || img.height() != first.height()) {
      throw ContractError("rearrange_rgb_to_mpfa: image dimensions differ");
    }
  }
  if (first.width() % 2 != 0 || first.height() % 2 != 0) {
    throw ContractError("rearrange_rgb_to_mpfa: dimensions must be even");
  }

  std::map<Color, MosaicImage> out;
  for (int c = 0; c < 3; ++c) {
    Color color = static_cast<Color>(c + 1);
    Plane mosaic(first.width(), first.height());
    for (int y = 0; y < mosaic.height(); ++y) {
      double* dst = mosaic.row(y);
      for (int x = 0; x < mosaic.width(); ++x) {
        int angle = mpfa_pattern.label_at(y, x).angle;
        dst[x] = per_angle.at(angle).channel(c).at(y, x);
      }
    }
    out.emplace(color, MosaicImage(std::move(mosaic), mpfa_pattern));
  }
  return out;
}

MosaicImage mosaic_from_stack(const PolarizationStack& stack,
                              const PatternDescriptor& pattern) {
  for (const ChannelLabel& label : pattern.labels()) {
    if (!stack.has(label)) {
      throw ContractError("mosaic_from_stack: stack is missing channel " + label_name(label));
    }
  }
  if (stack.width() % pattern.tile_width() != 0 ||
      stack.height() % pattern.tile_height() != 0) {
    throw ContractError("mosaic_from_stack: dimensions not multiples of the tile");
  }
  Plane mosaic(stack.width(), stack.height());
  for (int y = 0; y < mosaic.height(); ++y) {
    double* dst = mosaic.row(y);
    for (int x = 0; x < mosaic.width(); ++x) {
      dst[x] = stack.plane(pattern.label_at(y, x)).at(y, x);
    }
  }
  return MosaicImage(std::move(mosaic), pattern);
}

}  // namespace pfapipe
