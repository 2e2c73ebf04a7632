#include "pfapipe/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pfapipe/polarimetry.hpp"
#include "pfapipe/rng.hpp"

namespace pfapipe {

void SceneSpec::validate() const {
  if (width <= 0 || height <= 0) {
    throw ContractError("SceneSpec: dimensions must be positive");
  }
  if (!(dop_min >= 0.0 && dop_min <= dop_max && dop_max <= 1.0)) {
    throw ContractError("SceneSpec: DoP range must satisfy 0 <= min <= max <= 1");
  }
  if (!(s0_min >= 0.0 && s0_min <= s0_max)) {
    throw ContractError("SceneSpec: S0 range must satisfy 0 <= min <= max");
  }
  if (smooth_modes < 1) {
    throw ContractError("SceneSpec: smooth_modes must be >= 1");
  }
  if (edge_features < 0 || !(edge_width_px > 0.0)) {
    throw ContractError("SceneSpec: bad edge feature parameters");
  }
}

namespace {

Plane smooth_field(Rng rng, int w, int h, int modes, double max_cycles) {
  struct Mode {
    double u, v, phase, amp;
  };
  std::vector<Mode> ms(modes);
  for (auto& m : ms) {
    m.u = rng.uniform(-max_cycles, max_cycles);
    m.v = rng.uniform(-max_cycles, max_cycles);
    m.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    m.amp = rng.uniform(0.5, 1.0);
  }
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    double* row = out.row(y);
    for (int x = 0; x < w; ++x) {
      double v = 0.0;
      for (const auto& m : ms) {
        v += m.amp * std::cos(2.0 * std::numbers::pi *
                                  (m.u * x / w + m.v * y / h) +
                              m.phase);
      }
      row[x] = v;
    }
  }
  double lo = out.data()[0], hi = out.data()[0];
  for (double v : out.samples()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span = hi - lo;
  for (double& v : out.samples()) {
    v = span > 1e-12 ? (v - lo) / span : 0.5;
  }
  return out;
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

Plane edge_field(Rng rng, int w, int h, int features, double edge_width) {
  Plane out(w, h);
  if (features == 0) return out;
  for (int f = 0; f < features; ++f) {
    bool stripe = rng.uniform() < 0.5;
    bool flip = rng.uniform() < 0.5;
    if (stripe) {
      double theta = rng.uniform(0.0, std::numbers::pi);
      double c = std::cos(theta), s = std::sin(theta);
      double pmin = std::min({0.0, c * (w - 1), s * (h - 1), c * (w - 1) + s * (h - 1)});
      double pmax = std::max({0.0, c * (w - 1), s * (h - 1), c * (w - 1) + s * (h - 1)});
      double offset = pmin + rng.uniform(0.25, 0.75) * (pmax - pmin);
      for (int y = 0; y < h; ++y) {
        double* row = out.row(y);
        for (int x = 0; x < w; ++x) {
          double g = logistic((c * x + s * y - offset) / edge_width);
          row[x] += flip ? 1.0 - g : g;
        }
      }
    } else {
      double cx = rng.uniform(0.2, 0.8) * w;
      double cy = rng.uniform(0.2, 0.8) * h;
      double radius = rng.uniform(0.1, 0.3) * std::min(w, h);
      for (int y = 0; y < h; ++y) {
        double* row = out.row(y);
        for (int x = 0; x < w; ++x) {
          double dist = std::hypot(x - cx, y - cy);
          double g = logistic((radius - dist) / edge_width);
          row[x] += flip ? 1.0 - g : g;
        }
      }
    }
  }
  for (double& v : out.samples()) v /= features;
  return out;
}

// 0.55 smooth + 0.45 shared edge skeleton, mapped to [lo,hi]. All fields of a
// scene blend the same skeleton so intensity and polarization boundaries
// coincide, as they do across real object boundaries.
Plane scene_field(const SceneSpec& spec, Rng rng, const Plane* edges, double lo,
                  double hi) {
  Plane smooth = smooth_field(rng, spec.width, spec.height, spec.smooth_modes,
                              spec.max_cycles);
  if (edges) {
    for (std::size_t k = 0; k < smooth.size(); ++k) {
      smooth.data()[k] = 0.55 * smooth.data()[k] + 0.45 * edges->data()[k];
    }
  }
  for (double& v : smooth.samples()) v = lo + (hi - lo) * v;
  return smooth;
}

StokesImage scene_stokes(const SceneSpec& spec, const Rng& root) {
  Plane edges;
  const Plane* skeleton = nullptr;
  if (spec.edge_features > 0) {
    edges = edge_field(root.fork(5), spec.width, spec.height, spec.edge_features,
                       spec.edge_width_px);
    skeleton = &edges;
  }
  Plane s0 = scene_field(spec, root.fork(10), skeleton, spec.s0_min, spec.s0_max);
  Plane dop = scene_field(spec, root.fork(20), skeleton, spec.dop_min, spec.dop_max);
  // Smooth doubled-angle phase: AoP = phi/2 sweeps its full cycle without the
  // orientation singularities a normalized random vector field would have.
  Plane phi =
      scene_field(spec, root.fork(30), skeleton, 0.0, 2.0 * std::numbers::pi);

  Plane s1(spec.width, spec.height), s2(spec.width, spec.height);
  for (std::size_t k = 0; k < s0.size(); ++k) {
    double magnitude = s0.data()[k] * dop.data()[k];
    s1.data()[k] = magnitude * std::cos(phi.data()[k]);
    s2.data()[k] = magnitude * std::sin(phi.data()[k]);
  }
  return StokesImage(std::move(s0), std::move(s1), std::move(s2));
}

}  // namespace

PolarizationStack synthesize_scene(const SceneSpec& spec) {
  spec.validate();
  Rng root(spec.seed);
  std::array<Plane, 4> angles = angles_from_stokes(scene_stokes(spec, root));
  PolarizationStack out;
  for (int i = 0; i < 4; ++i) {
    out.add({kAngles[i], Color::mono}, std::move(angles[i]));
  }
  return out;
}

PolarizationStack synthesize_scene_color(const SceneSpec& spec) {
  spec.validate();
  Rng root(spec.seed);
  StokesImage stokes = scene_stokes(spec, root);

  PolarizationStack out;
  int stream = 50;
  for (Color color : {Color::r, Color::g, Color::b}) {
    Plane gain = scene_field(spec, root.fork(stream++), nullptr, 0.5, 1.0);
    Plane s0(spec.width, spec.height), s1(spec.width, spec.height), s2(spec.width, spec.height);
    for (std::size_t k = 0; k < gain.size(); ++k) {
      s0.data()[k] = stokes.s0.data()[k] * gain.data()[k];
      s1.data()[k] = stokes.s1.data()[k] * gain.data()[k];
      s2.data()[k] = stokes.s2.data()[k] * gain.data()[k];
    }
    std::array<Plane, 4> angles =
        angles_from_stokes(StokesImage(std::move(s0), std::move(s1), std::move(s2)));
    for (int i = 0; i < 4; ++i) {
      out.add({kAngles[i], color}, std::move(angles[i]));
    }
  }
  return out;
}

Plane add_awgn(const Plane& image, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ContractError("add_awgn: sigma must be finite and >= 0");
  }
  Plane out = image;
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (double& v : out.samples()) v += sigma * rng.gaussian();
  return out;
}

RgbImage add_awgn(const RgbImage& image, double sigma, std::uint64_t seed) {
  Rng root(seed);
  RgbImage out = image;
  for (int c = 0; c < 3; ++c) {
    Rng rng = root.fork(static_cast<std::uint64_t>(c) + 1);
    for (double& v : out.channel(c).samples()) v += sigma * rng.gaussian();
  }
  return out;
}

}  // namespace pfapipe
