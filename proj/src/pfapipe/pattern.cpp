#include "pfapipe/pattern.hpp"

#include <algorithm>
#include <set>

namespace pfapipe {

const char* color_name(Color c) {
  switch (c) {
    case Color::mono: return "mono";
    case Color::r: return "R";
    case Color::g: return "G";
    default: return "B";
  }
}

Color color_from_name(const std::string& name) {
  if (name == "mono") return Color::mono;
  if (name == "R" || name == "r") return Color::r;
  if (name == "G" || name == "g") return Color::g;
  if (name == "B" || name == "b") return Color::b;
  throw ContractError("unknown color name: " + name);
}

std::string label_name(const ChannelLabel& label) {
  std::string s = label.angle == kNoAngle ? std::string("-") : std::to_string(label.angle);
  return s + "/" + color_name(label.color);
}

const char* pattern_kind_name(PatternKind k) {
  switch (k) {
    case PatternKind::mpfa: return "mpfa";
    case PatternKind::bayer: return "bayer";
    default: return "cpfa";
  }
}

namespace {

void require_valid_angles(const std::array<int, 4>& angles) {
  std::set<int> seen(angles.begin(), angles.end());
  if (seen != std::set<int>(kAngles.begin(), kAngles.end())) {
    throw ContractError("angle layout must cover {0,45,90,135} exactly once");
  }
}

}  // namespace

PatternDescriptor::PatternDescriptor(PatternKind kind, int tile_w, int tile_h,
                                     std::vector<ChannelLabel> cells)
    : kind_(kind), tile_w_(tile_w), tile_h_(tile_h), cells_(std::move(cells)) {}

PatternDescriptor PatternDescriptor::mpfa(const std::array<int, 4>& angles) {
  require_valid_angles(angles);
  std::vector<ChannelLabel> cells(4);
  for (int i = 0; i < 4; ++i) cells[i] = {angles[i], Color::mono};
  return PatternDescriptor(PatternKind::mpfa, 2, 2, std::move(cells));
}

PatternDescriptor PatternDescriptor::bayer(int angle) {
  std::vector<ChannelLabel> cells = {
      {angle, Color::r}, {angle, Color::g},
      {angle, Color::g}, {angle, Color::b}};
  return PatternDescriptor(PatternKind::bayer, 2, 2, std::move(cells));
}

PatternDescriptor PatternDescriptor::cpfa(const std::array<int, 4>& angles) {
  require_valid_angles(angles);
  // 2x2 Bayer arrangement (R,G / G,B) of single-color 2x2 angle blocks.
  const std::array<Color, 4> block_colors = {Color::r, Color::g, Color::g, Color::b};
  std::vector<ChannelLabel> cells(16);
  for (int by = 0; by < 2; ++by) {
    for (int bx = 0; bx < 2; ++bx) {
      Color c = block_colors[by * 2 + bx];
      for (int ay = 0; ay < 2; ++ay) {
        for (int ax = 0; ax < 2; ++ax) {
          cells[(by * 2 + ay) * 4 + (bx * 2 + ax)] = {angles[ay * 2 + ax], c};
        }
      }
    }
  }
  return PatternDescriptor(PatternKind::cpfa, 4, 4, std::move(cells));
}

std::vector<ChannelLabel> PatternDescriptor::labels() const {
  std::vector<ChannelLabel> out;
  for (const auto& c : cells_) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

std::vector<std::pair<int, int>> PatternDescriptor::phases_of(const ChannelLabel& label) const {
  std::vector<std::pair<int, int>> out;
  for (int ty = 0; ty < tile_h_; ++ty) {
    for (int tx = 0; tx < tile_w_; ++tx) {
      if (cell(ty, tx) == label) out.emplace_back(ty, tx);
    }
  }
  return out;
}

std::array<int, 4> PatternDescriptor::angle_layout() const {
  if (kind_ == PatternKind::mpfa) {
    return {cell(0, 0).angle, cell(0, 1).angle, cell(1, 0).angle, cell(1, 1).angle};
  }
  if (kind_ == PatternKind::cpfa) {
    return {cell(0, 0).angle, cell(0, 1).angle, cell(1, 0).angle, cell(1, 1).angle};
  }
  throw ContractError("angle_layout: pattern carries no polarization layout");
}

MosaicImage::MosaicImage(Plane plane, PatternDescriptor pattern)
    : plane_(std::move(plane)), pattern_(std::move(pattern)) {
  if (plane_.width() % pattern_.tile_width() != 0 ||
      plane_.height() % pattern_.tile_height() != 0) {
    throw ContractError("mosaic dimensions must be multiples of the pattern tile");
  }
}

void MosaicImage::require_kind(PatternKind kind, const char* context) const {
  if (pattern_.kind() != kind) {
    throw ContractError(std::string(context) + ": expected " + pattern_kind_name(kind) +
                        " pattern, got " + pattern_kind_name(pattern_.kind()));
  }
}

void PolarizationStack::add(ChannelLabel label, Plane plane) {
  if (has(label)) {
    throw ContractError("stack already contains channel " + label_name(label));
  }
  if (!channels_.empty() && !channels_.front().plane.same_size(plane)) {
    throw ContractError("stack planes must share dimensions");
  }
  channels_.push_back({label, std::move(plane)});
}

bool PolarizationStack::has(const ChannelLabel& label) const {
  for (const auto& c : channels_) {
    if (c.label == label) return true;
  }
  return false;
}

const Plane& PolarizationStack::plane(const ChannelLabel& label) const {
  for (const auto& c : channels_) {
    if (c.label == label) return c.plane;
  }
  throw ContractError("stack is missing channel " + label_name(label));
}

bool PolarizationStack::is_mono() const {
  if (channels_.size() != 4) return false;
  for (int a : kAngles) {
    if (!has({a, Color::mono})) return false;
  }
  return true;
}

bool PolarizationStack::is_color() const {
  if (channels_.size() != 12) return false;
  for (int a : kAngles) {
    for (Color c : {Color::r, Color::g, Color::b}) {
      if (!has({a, c})) return false;
    }
  }
  return true;
}

std::array<Plane, 4> PolarizationStack::angle_planes(Color color) const {
  return {plane(0, color), plane(45, color), plane(90, color), plane(135, color)};
}

}  // namespace pfapipe
