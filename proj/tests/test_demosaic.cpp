#include <doctest.h>

#include <cmath>

#include "pfapipe/demosaic.hpp"
#include "pfapipe/mosaic_ops.hpp"
#include "pfapipe/synth.hpp"
#include "testutil.hpp"

using namespace pfapipe;

namespace {

PolarizationStack angle_independent_stack(const Plane& x) {
  PolarizationStack s;
  for (int a : kAngles) s.add({a, Color::mono}, x);
  return s;
}

Plane transpose(const Plane& p) {
  Plane out(p.height(), p.width());
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) out.at(x, y) = p.at(y, x);
  }
  return out;
}

}  // namespace

TEST_CASE("guided filter reproduces the guide when filtering it by itself") {
  Rng rng(61);
  Plane g = testutil::random_plane(24, 24, rng, 0.1, 0.9);
  Plane out = guided_filter(g, g, {2, 1e-12});
  CHECK(testutil::max_abs_diff(out, g) <= 1e-6);
}

TEST_CASE("guided filter maps constants to constants") {
  Rng rng(62);
  Plane g = testutil::random_plane(20, 16, rng);
  Plane out = guided_filter(Plane(20, 16, 0.33), g, {2, 1e-6});
  for (double v : out.samples()) CHECK(v == doctest::Approx(0.33).epsilon(1e-9));
}

TEST_CASE("guided filter is exact on affine relationships") {
  Rng rng(63);
  Plane g = testutil::random_plane(24, 20, rng, 0.1, 0.9);
  Plane p(24, 20);
  for (std::size_t k = 0; k < p.size(); ++k) p.data()[k] = 2.0 * g.data()[k] + 0.1;
  Plane out = guided_filter(p, g, {2, 1e-9});
  CHECK(testutil::max_abs_diff(out, p) <= 1e-6);
}

TEST_CASE("guided filter validates parameters and sizes") {
  CHECK_THROWS_AS(guided_filter(Plane(4, 4, 0.0), Plane(4, 4, 0.0), {0, 1e-6}),
                  ContractError);
  CHECK_THROWS_AS(guided_filter(Plane(4, 4, 0.0), Plane(4, 4, 0.0), {2, 0.0}),
                  ContractError);
  CHECK_THROWS_AS(guided_filter(Plane(4, 4, 0.0), Plane(8, 8, 0.0), {2, 1e-6}),
                  ContractError);
}

TEST_CASE("intensity guide preserves constants") {
  MosaicImage m(Plane(16, 16, 0.4), PatternDescriptor::mpfa());
  Plane guide = generate_intensity_guide(m);
  for (double v : guide.samples()) CHECK(v == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("intensity guide recovers an angle-independent smooth image") {
  Plane x = testutil::polynomial_plane(64, 48);
  MosaicImage m = mosaic_from_stack(angle_independent_stack(x), PatternDescriptor::mpfa());
  Plane guide = generate_intensity_guide(m);
  CHECK(testutil::interior_max_abs_diff(guide, x, 2) <= 1e-3);
}

TEST_CASE("intensity guide equals the local four-angle average on polarized constants") {
  // Constant-per-angle stack: the guide must equal the four-angle average
  // everywhere, regardless of pixel phase.
  PolarizationStack s;
  s.add({0, Color::mono}, Plane(16, 16, 0.40));
  s.add({45, Color::mono}, Plane(16, 16, 0.30));
  s.add({90, Color::mono}, Plane(16, 16, 0.20));
  s.add({135, Color::mono}, Plane(16, 16, 0.30));
  MosaicImage m = mosaic_from_stack(s, PatternDescriptor::mpfa());
  Plane guide = generate_intensity_guide(m);
  // The replicate border ring unbalances the angle weights; the interior is
  // exact regardless of pixel phase.
  CHECK(testutil::interior_max_abs_diff(guide, Plane(16, 16, 0.30), 2) <= 1e-9);
}

TEST_CASE("intensity guide keeps vertical step edges sharp") {
  const int w = 48, h = 32, edge = 24;
  Plane x(w, h);
  for (int y = 0; y < h; ++y) {
    for (int xx = 0; xx < w; ++xx) x.at(y, xx) = xx < edge ? 0.2 : 0.8;
  }
  MosaicImage m = mosaic_from_stack(angle_independent_stack(x), PatternDescriptor::mpfa());
  Plane guide = generate_intensity_guide(m);
  // No horizontal smearing beyond 1 pixel of the edge.
  for (int y = 2; y < h - 2; ++y) {
    for (int xx = 2; xx < w - 2; ++xx) {
      if (xx < edge - 1 || xx > edge) {
        CHECK(std::abs(guide.at(y, xx) - x.at(y, xx)) <= 0.02);
      }
    }
  }
}

TEST_CASE("residual interpolation returns the guide when samples agree with it") {
  Plane guide = testutil::polynomial_plane(32, 32);
  MosaicImage m = mosaic_from_stack(angle_independent_stack(guide),
                                    PatternDescriptor::mpfa());
  SparseChannel sparse = sparse_channel_from_mosaic(m, {90, Color::mono});
  Plane out = residual_interpolate_channel(sparse, guide, {2, 1e-9});
  CHECK(testutil::interior_max_abs_diff(out, guide, 4) <= 1e-4);
}

TEST_CASE("residual interpolation maps constant observations to constants") {
  MosaicImage m(Plane(16, 16, 0.55), PatternDescriptor::mpfa());
  SparseChannel sparse = sparse_channel_from_mosaic(m, {0, Color::mono});
  Rng rng(64);
  Plane guide = testutil::random_plane(16, 16, rng);
  Plane out = residual_interpolate_channel(sparse, guide, {2, 1e-6});
  for (double v : out.samples()) CHECK(v == doctest::Approx(0.55).epsilon(1e-9));
}

TEST_CASE("residual interpolation preserves observed samples exactly") {
  Rng rng(65);
  MosaicImage m(testutil::random_plane(24, 24, rng), PatternDescriptor::mpfa());
  Plane guide = generate_intensity_guide(m);
  SparseChannel sparse = sparse_channel_from_mosaic(m, {45, Color::mono});
  Plane out = residual_interpolate_channel(sparse, guide, {2, 1e-6});
  for (int y = 0; y < 24; ++y) {
    for (int x = 0; x < 24; ++x) {
      if (sparse.mask.at(y, x) != 0.0) {
        CHECK(out.at(y, x) == m.plane().at(y, x));
      }
    }
  }
}

TEST_CASE("residual interpolation rejects an empty mask") {
  SparseChannel sparse{Plane(8, 8, 0.0), Plane(8, 8, 0.0), 2, 2};
  CHECK_THROWS_AS(residual_interpolate_channel(sparse, Plane(8, 8, 0.5), {2, 1e-6}),
                  ContractError);
}

TEST_CASE("igri2 recovers angle-independent smooth stacks accurately") {
  Plane x = testutil::polynomial_plane(96, 64);
  MosaicImage m = mosaic_from_stack(angle_independent_stack(x), PatternDescriptor::mpfa());
  PolarizationStack out = demosaick_mpfa_igri2(m);
  for (int a : kAngles) {
    CHECK(testutil::interior_psnr(x, out.plane(a, Color::mono), 4) >= 50.0);
  }
}

TEST_CASE("igri2 maps constant mosaics to constant planes") {
  MosaicImage m(Plane(16, 16, 0.27), PatternDescriptor::mpfa());
  PolarizationStack out = demosaick_mpfa_igri2(m);
  for (int a : kAngles) {
    for (double v : out.plane(a, Color::mono).samples()) {
      CHECK(v == doctest::Approx(0.27).epsilon(1e-9));
    }
  }
}

TEST_CASE("igri2 preserves each angle's observed mosaic samples") {
  Rng rng(66);
  MosaicImage m(testutil::random_plane(16, 16, rng), PatternDescriptor::mpfa());
  PolarizationStack out = demosaick_mpfa_igri2(m);
  const PatternDescriptor& pat = m.pattern();
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      int angle = pat.label_at(y, x).angle;
      CHECK(out.plane(angle, Color::mono).at(y, x) == m.plane().at(y, x));
    }
  }
}

TEST_CASE("igri2 is equivariant under transposition") {
  SceneSpec spec;
  spec.width = 48;
  spec.height = 32;
  spec.seed = 5;
  PolarizationStack stack = synthesize_scene(spec);
  PatternDescriptor pat = PatternDescriptor::mpfa();  // 90,45 / 135,0
  MosaicImage m = mosaic_from_stack(stack, pat);

  // Transposing the mosaic swaps the roles of 45 and 135 in the tile.
  PatternDescriptor pat_t = PatternDescriptor::mpfa({90, 135, 45, 0});
  MosaicImage mt(transpose(m.plane()), pat_t);

  PolarizationStack out = demosaick_mpfa_igri2(m);
  PolarizationStack out_t = demosaick_mpfa_igri2(mt);
  for (int a : kAngles) {
    CHECK(testutil::max_abs_diff(transpose(out.plane(a, Color::mono)),
                                 out_t.plane(a, Color::mono)) <= 1e-6);
  }
}

TEST_CASE("bayer ri recovers gray-world smooth mosaics") {
  Plane x = testutil::polynomial_plane(96, 64);
  PolarizationStack rgb;
  for (Color c : {Color::r, Color::g, Color::b}) rgb.add({kNoAngle, c}, x);
  MosaicImage bayer = mosaic_from_stack(rgb, PatternDescriptor::bayer());
  RgbImage out = demosaick_bayer_ri(bayer);
  for (int c = 0; c < 3; ++c) {
    CHECK(testutil::interior_psnr(x, out.channel(c), 4) >= 45.0);
  }
}

TEST_CASE("bayer ri maps constants to constants and keeps observed samples") {
  MosaicImage bayer(Plane(16, 16, 0.61), PatternDescriptor::bayer());
  RgbImage out = demosaick_bayer_ri(bayer);
  for (int c = 0; c < 3; ++c) {
    for (double v : out.channel(c).samples()) {
      CHECK(v == doctest::Approx(0.61).epsilon(1e-9));
    }
  }

  Rng rng(67);
  MosaicImage noisy(testutil::random_plane(16, 16, rng), PatternDescriptor::bayer());
  RgbImage rec = demosaick_bayer_ri(noisy);
  const PatternDescriptor& pat = noisy.pattern();
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      Color color = pat.label_at(y, x).color;
      const Plane& plane = color == Color::r ? rec.r : (color == Color::g ? rec.g : rec.b);
      CHECK(plane.at(y, x) == noisy.plane().at(y, x));
    }
  }
}

TEST_CASE("cpfa demosaicking recovers 12 constant planes exactly") {
  PolarizationStack stack;
  double v = 0.1;
  for (int a : kAngles) {
    for (Color c : {Color::r, Color::g, Color::b}) {
      stack.add({a, c}, Plane(16, 16, v));
      v += 0.05;
    }
  }
  MosaicImage m = mosaic_from_stack(stack, PatternDescriptor::cpfa());
  PolarizationStack out = demosaick_cpfa(m);
  CHECK(out.width() == 8);
  CHECK(out.height() == 8);
  for (const auto& channel : out.channels()) {
    double expect = stack.plane(channel.label).at(0, 0);
    for (double s : channel.plane.samples()) {
      CHECK(s == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("cpfa demosaicking handles gray unpolarized smooth scenes") {
  Plane x = testutil::polynomial_plane(128, 96);
  PolarizationStack stack;
  for (int a : kAngles) {
    for (Color c : {Color::r, Color::g, Color::b}) stack.add({a, c}, x);
  }
  PatternDescriptor pat = PatternDescriptor::cpfa();
  MosaicImage m = mosaic_from_stack(stack, pat);
  PolarizationStack out = demosaick_cpfa(m);
  REQUIRE(out.width() == 64);

  // Reference: the gt decimated at each angle's own observed phase.
  std::array<int, 4> layout = pat.angle_layout();
  for (const auto& channel : out.channels()) {
    int ay = 0, ax = 0;
    for (int i = 0; i < 4; ++i) {
      if (layout[i] == channel.label.angle) {
        ay = i / 2;
        ax = i % 2;
      }
    }
    Plane ref(64, 48);
    for (int y = 0; y < 48; ++y) {
      for (int xx = 0; xx < 64; ++xx) ref.at(y, xx) = x.at(2 * y + ay, 2 * xx + ax);
    }
    CHECK(testutil::interior_psnr(ref, channel.plane, 4) >= 40.0);
  }
}

TEST_CASE("cpfa demosaicking keeps angle-constant scenes angle-constant") {
  // Each angle's output grid sits at its own sub-pixel phase of the CPFA
  // mosaic, so angle planes of an angle-constant scene agree up to a
  // one-pixel phase shift; a gentle gradient keeps that term below 1e-3.
  Plane cr = testutil::polynomial_plane(64, 64);
  for (double& v : cr.samples()) v = 0.4 + (v - 0.4) / 20.0;
  Plane cg(64, 64), cb(64, 64);
  for (std::size_t k = 0; k < cr.size(); ++k) {
    cg.data()[k] = 0.8 * cr.data()[k] + 0.05;
    cb.data()[k] = 0.5 * cr.data()[k] + 0.2;
  }
  PolarizationStack stack;
  for (int a : kAngles) {
    stack.add({a, Color::r}, cr);
    stack.add({a, Color::g}, cg);
    stack.add({a, Color::b}, cb);
  }
  MosaicImage m = mosaic_from_stack(stack, PatternDescriptor::cpfa());
  PolarizationStack out = demosaick_cpfa(m);
  for (Color c : {Color::r, Color::g, Color::b}) {
    const Plane& ref = out.plane(0, c);
    for (int a : {45, 90, 135}) {
      CHECK(testutil::interior_max_abs_diff(ref, out.plane(a, c), 4) <= 1e-3);
    }
  }
}

TEST_CASE("bilinear baseline maps constants to constants") {
  MosaicImage m(Plane(16, 16, 0.45), PatternDescriptor::mpfa());
  PolarizationStack out = demosaick_bilinear(m);
  for (const auto& channel : out.channels()) {
    for (double v : channel.plane.samples()) {
      CHECK(v == doctest::Approx(0.45).epsilon(1e-12));
    }
  }
}

TEST_CASE("bilinear baseline recovers per-channel linear ramps on the interior") {
  // Affine plane per channel; bilinear interpolation reproduces affine data.
  const int w = 32, h = 32;
  PolarizationStack stack;
  for (int a : kAngles) {
    Plane p(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        p.at(y, x) = 0.1 + 0.01 * x + 0.005 * y + 0.0002 * a;
      }
    }
    stack.add({a, Color::mono}, p);
  }
  MosaicImage m = mosaic_from_stack(stack, PatternDescriptor::mpfa());
  PolarizationStack out = demosaick_bilinear(m);
  for (int a : kAngles) {
    CHECK(testutil::interior_max_abs_diff(out.plane(a, Color::mono),
                                          stack.plane(a, Color::mono), 2) <= 1e-9);
  }

  // CPFA variant at full mosaic resolution.
  PolarizationStack cstack;
  for (int a : kAngles) {
    for (Color c : {Color::r, Color::g, Color::b}) {
      Plane p(w, h);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) p.at(y, x) = 0.2 + 0.004 * x + 0.006 * y;
      }
      cstack.add({a, c}, p);
    }
  }
  MosaicImage cm = mosaic_from_stack(cstack, PatternDescriptor::cpfa());
  PolarizationStack cout_stack = demosaick_bilinear(cm);
  CHECK(cout_stack.width() == w);
  for (const auto& channel : cout_stack.channels()) {
    CHECK(testutil::interior_max_abs_diff(channel.plane,
                                          cstack.plane(channel.label), 4) <= 1e-9);
  }
}

TEST_CASE("bilinear baseline preserves observed samples") {
  Rng rng(68);
  MosaicImage m(testutil::random_plane(16, 16, rng), PatternDescriptor::cpfa());
  PolarizationStack out = demosaick_bilinear(m);
  const PatternDescriptor& pat = m.pattern();
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      CHECK(out.plane(pat.label_at(y, x)).at(y, x) == m.plane().at(y, x));
    }
  }
}
