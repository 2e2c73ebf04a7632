#pragma once

#include <array>
#include <string>
#include <vector>

#include "pfapipe/plane.hpp"

namespace pfapipe {

enum class Color { mono = 0, r = 1, g = 2, b = 3 };

const char* color_name(Color c);
Color color_from_name(const std::string& name);

// Angle placeholder for channels that carry no polarization angle
// (e.g. plain Bayer cells).
inline constexpr int kNoAngle = -1;

// (polarizer angle, color filter) pair identifying one mosaic channel.
struct ChannelLabel {
  int angle = kNoAngle;  // degrees, one of {0,45,90,135} or kNoAngle
  Color color = Color::mono;

  bool operator==(const ChannelLabel&) const = default;
  bool operator<(const ChannelLabel& o) const {
    return angle != o.angle ? angle < o.angle : color < o.color;
  }
};

std::string label_name(const ChannelLabel& label);

inline constexpr std::array<int, 4> kAngles = {0, 45, 90, 135};

// Sony-style commercial layout: row 0 carries (90,45), row 1 carries (135,0).
inline constexpr std::array<int, 4> kDefaultAngleLayout = {90, 45, 135, 0};

enum class PatternKind { mpfa, bayer, cpfa };

const char* pattern_kind_name(PatternKind k);

// Periodic tile mapping pixel position -> channel label. Three supported
// tiles: 2x2 MPFA (four angles), 2x2 Bayer (R,G / G,B), and 4x4 CPFA
// (Bayer arrangement of single-color 2x2 angle blocks).
class PatternDescriptor {
public:
  static PatternDescriptor mpfa(const std::array<int, 4>& angles = kDefaultAngleLayout);
  static PatternDescriptor bayer(int angle = kNoAngle);
  static PatternDescriptor cpfa(const std::array<int, 4>& angles = kDefaultAngleLayout);

  PatternKind kind() const { return kind_; }
  int tile_width() const { return tile_w_; }
  int tile_height() const { return tile_h_; }

  const ChannelLabel& cell(int ty, int tx) const { return cells_[ty * tile_w_ + tx]; }
  const ChannelLabel& label_at(int y, int x) const {
    return cells_[(y % tile_h_) * tile_w_ + (x % tile_w_)];
  }

  // Distinct labels in first-appearance (row-major) order.
  std::vector<ChannelLabel> labels() const;
  // Tile offsets carrying the given label.
  std::vector<std::pair<int, int>> phases_of(const ChannelLabel& label) const;

  // MPFA/CPFA angle layout of the 2x2 (sub-)tile, row-major.
  std::array<int, 4> angle_layout() const;

  bool operator==(const PatternDescriptor&) const = default;

private:
  PatternDescriptor(PatternKind kind, int tile_w, int tile_h, std::vector<ChannelLabel> cells);

  PatternKind kind_;
  int tile_w_ = 0;
  int tile_h_ = 0;
  std::vector<ChannelLabel> cells_;
};

// Single mosaic plane plus the pattern describing which channel each pixel
// carries. Dimensions must be exact multiples of the tile size; images that
// do not tile are rejected rather than padded so that sub-sampling and
// re-mosaicking stay exactly invertible.
class MosaicImage {
public:
  MosaicImage(Plane plane, PatternDescriptor pattern);

  const Plane& plane() const { return plane_; }
  Plane& plane() { return plane_; }
  const PatternDescriptor& pattern() const { return pattern_; }

  int width() const { return plane_.width(); }
  int height() const { return plane_.height(); }

  void require_kind(PatternKind kind, const char* context) const;

private:
  Plane plane_;
  PatternDescriptor pattern_;
};

// Full-resolution multi-plane image indexed by (angle, color). Channel order
// is preserved as inserted; helpers provide the canonical orders.
class PolarizationStack {
public:
  struct Channel {
    ChannelLabel label;
    Plane plane;
  };

  PolarizationStack() = default;

  void add(ChannelLabel label, Plane plane);
  bool has(const ChannelLabel& label) const;
  const Plane& plane(const ChannelLabel& label) const;
  const Plane& plane(int angle, Color color = Color::mono) const {
    return plane(ChannelLabel{angle, color});
  }

  const std::vector<Channel>& channels() const { return channels_; }
  std::size_t channel_count() const { return channels_.size(); }
  int width() const { return channels_.empty() ? 0 : channels_.front().plane.width(); }
  int height() const { return channels_.empty() ? 0 : channels_.front().plane.height(); }

  bool is_mono() const;   // exactly angles {0,45,90,135} x {mono}
  bool is_color() const;  // exactly 4 angles x {r,g,b}

  // The four angle planes of one color in (0,45,90,135) order.
  std::array<Plane, 4> angle_planes(Color color = Color::mono) const;

private:
  std::vector<Channel> channels_;
};

}  // namespace pfapipe
