#include <doctest.h>

#include <algorithm>

#include "pfapipe/mosaic_ops.hpp"
#include "testutil.hpp"

using namespace pfapipe;

namespace {

MosaicImage random_mosaic(Rng& rng, const PatternDescriptor& pat, int w, int h) {
  return MosaicImage(testutil::random_plane(w, h, rng), pat);
}

std::vector<double> sorted_samples(const Plane& p) {
  std::vector<double> v(p.samples().begin(), p.samples().end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("split_mpfa_quads routes each tile cell to its angle") {
  PatternDescriptor pat = PatternDescriptor::mpfa();  // 90,45 / 135,0
  MosaicImage m(Plane(2, 2, std::vector<double>{1.0, 2.0, 3.0, 4.0}), pat);
  auto quads = split_mpfa_quads(m);
  CHECK(quads.at(90).at(0, 0) == 1.0);
  CHECK(quads.at(45).at(0, 0) == 2.0);
  CHECK(quads.at(135).at(0, 0) == 3.0);
  CHECK(quads.at(0).at(0, 0) == 4.0);
}

TEST_CASE("constant mosaic splits into constant quads") {
  MosaicImage m(Plane(8, 6, 0.7), PatternDescriptor::mpfa());
  for (const auto& [angle, quad] : split_mpfa_quads(m)) {
    CHECK(quad.width() == 4);
    CHECK(quad.height() == 3);
    for (double v : quad.samples()) CHECK(v == 0.7);
  }
}

TEST_CASE("merge_quads_to_mpfa inverts split_mpfa_quads") {
  Rng rng(3);
  for (int it = 0; it < 100; ++it) {
    int w = 2 * rng.uniform_int(1, 10);
    int h = 2 * rng.uniform_int(1, 10);
    MosaicImage m = random_mosaic(rng, PatternDescriptor::mpfa(), w, h);
    MosaicImage back = merge_quads_to_mpfa(split_mpfa_quads(m), m.pattern());
    CHECK(testutil::identical(m.plane(), back.plane()));
  }
}

TEST_CASE("merge_quads composes 2x2 from singletons") {
  std::map<int, Plane> quads;
  quads.emplace(90, Plane(1, 1, 1.0));
  quads.emplace(45, Plane(1, 1, 2.0));
  quads.emplace(135, Plane(1, 1, 3.0));
  quads.emplace(0, Plane(1, 1, 4.0));
  MosaicImage m = merge_quads_to_mpfa(quads, PatternDescriptor::mpfa());
  CHECK(m.plane().at(0, 0) == 1.0);
  CHECK(m.plane().at(0, 1) == 2.0);
  CHECK(m.plane().at(1, 0) == 3.0);
  CHECK(m.plane().at(1, 1) == 4.0);

  auto roundtrip = split_mpfa_quads(m);
  for (const auto& [angle, quad] : quads) {
    CHECK(testutil::identical(roundtrip.at(angle), quad));
  }
}

TEST_CASE("merge_quads rejects missing angles and size mismatches") {
  std::map<int, Plane> quads;
  quads.emplace(90, Plane(2, 2, 0.0));
  quads.emplace(45, Plane(2, 2, 0.0));
  quads.emplace(135, Plane(2, 2, 0.0));
  CHECK_THROWS_AS(merge_quads_to_mpfa(quads, PatternDescriptor::mpfa()), ContractError);
  quads.emplace(0, Plane(1, 2, 0.0));
  CHECK_THROWS_AS(merge_quads_to_mpfa(quads, PatternDescriptor::mpfa()), ContractError);
}

TEST_CASE("split_mpfa_quads requires an MPFA mosaic") {
  MosaicImage bayer(Plane(4, 4, 0.0), PatternDescriptor::bayer());
  CHECK_THROWS_AS(split_mpfa_quads(bayer), ContractError);
}

TEST_CASE("split_cpfa_to_bayer extracts per-angle Bayer mosaics") {
  PatternDescriptor pat = PatternDescriptor::cpfa();
  std::vector<double> samples(16);
  for (int i = 0; i < 16; ++i) samples[i] = i;
  MosaicImage m(Plane(4, 4, samples), pat);
  auto bayers = split_cpfa_to_bayer(m);
  REQUIRE(bayers.size() == 4);
  for (const auto& [angle, bayer] : bayers) {
    CHECK(bayer.pattern().kind() == PatternKind::bayer);
    CHECK(bayer.width() == 2);
    CHECK(bayer.height() == 2);
    // Each Bayer pixel is the angle's sample within the corresponding
    // 2x2 color block.
    for (int by = 0; by < 2; ++by) {
      for (int bx = 0; bx < 2; ++bx) {
        double got = bayer.plane().at(by, bx);
        bool found = false;
        for (int ay = 0; ay < 2 && !found; ++ay) {
          for (int ax = 0; ax < 2 && !found; ++ax) {
            if (pat.cell(2 * (by % 2) + ay, 2 * (bx % 2) + ax).angle == angle) {
              CHECK(got == m.plane().at(2 * by + ay, 2 * bx + ax));
              found = true;
            }
          }
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("merge_bayer_to_cpfa inverts split_cpfa_to_bayer") {
  Rng rng(5);
  for (int it = 0; it < 100; ++it) {
    int w = 4 * rng.uniform_int(1, 5);
    int h = 4 * rng.uniform_int(1, 5);
    MosaicImage m = random_mosaic(rng, PatternDescriptor::cpfa(), w, h);
    auto bayers = split_cpfa_to_bayer(m);
    MosaicImage back = merge_bayer_to_cpfa(bayers, m.pattern());
    CHECK(testutil::identical(m.plane(), back.plane()));

    auto again = split_cpfa_to_bayer(back);
    for (const auto& [angle, bayer] : bayers) {
      CHECK(testutil::identical(again.at(angle).plane(), bayer.plane()));
    }
  }
}

TEST_CASE("merge_bayer_to_cpfa rejects a missing angle") {
  MosaicImage m = MosaicImage(Plane(8, 8, 0.0), PatternDescriptor::cpfa());
  auto bayers = split_cpfa_to_bayer(m);
  bayers.erase(45);
  CHECK_THROWS_AS(merge_bayer_to_cpfa(bayers, m.pattern()), ContractError);
}

TEST_CASE("rearrangements preserve the multiset of samples") {
  Rng rng(9);
  MosaicImage m = random_mosaic(rng, PatternDescriptor::cpfa(), 16, 8);
  auto bayers = split_cpfa_to_bayer(m);
  std::vector<double> collected;
  for (const auto& [angle, bayer] : bayers) {
    auto s = bayer.plane().samples();
    collected.insert(collected.end(), s.begin(), s.end());
  }
  std::sort(collected.begin(), collected.end());
  CHECK(collected == sorted_samples(m.plane()));
}

TEST_CASE("mosaic_from_stack samples each pixel's own channel") {
  PatternDescriptor pat = PatternDescriptor::cpfa();
  // plane(angle, color) = angle + 1000 * color-code, constant per channel:
  // every mosaic pixel is then verifiable by index arithmetic.
  PolarizationStack stack;
  for (int a : kAngles) {
    for (Color c : {Color::r, Color::g, Color::b}) {
      stack.add({a, c}, Plane(8, 8, a + 1000.0 * static_cast<int>(c)));
    }
  }
  MosaicImage m = mosaic_from_stack(stack, pat);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      ChannelLabel label = pat.label_at(y, x);
      CHECK(m.plane().at(y, x) == label.angle + 1000.0 * static_cast<int>(label.color));
    }
  }
}

TEST_CASE("mosaic_from_stack of constant planes tiles the constants") {
  PolarizationStack stack;
  double v = 1.0;
  for (int a : {90, 45, 135, 0}) {
    stack.add({a, Color::mono}, Plane(4, 4, v));
    v += 1.0;
  }
  MosaicImage m = mosaic_from_stack(stack, PatternDescriptor::mpfa());
  CHECK(m.plane().at(0, 0) == 1.0);
  CHECK(m.plane().at(0, 1) == 2.0);
  CHECK(m.plane().at(1, 0) == 3.0);
  CHECK(m.plane().at(1, 1) == 4.0);
  CHECK(m.plane().at(2, 2) == 1.0);
}

TEST_CASE("mosaic_from_stack rejects missing channels") {
  PolarizationStack stack;
  for (int a : kAngles) stack.add({a, Color::mono}, Plane(4, 4, 0.0));
  CHECK_THROWS_AS(mosaic_from_stack(stack, PatternDescriptor::cpfa()), ContractError);
}

TEST_CASE("split of a stack mosaic recovers each plane's own phase") {
  Rng rng(17);
  PolarizationStack stack;
  for (int a : kAngles) stack.add({a, Color::mono}, testutil::random_plane(8, 6, rng));
  PatternDescriptor pat = PatternDescriptor::mpfa();
  auto quads = split_mpfa_quads(mosaic_from_stack(stack, pat));
  for (int ty = 0; ty < 2; ++ty) {
    for (int tx = 0; tx < 2; ++tx) {
      int angle = pat.cell(ty, tx).angle;
      const Plane& src = stack.plane(angle, Color::mono);
      const Plane& quad = quads.at(angle);
      for (int y = 0; y < quad.height(); ++y) {
        for (int x = 0; x < quad.width(); ++x) {
          CHECK(quad.at(y, x) == src.at(2 * y + ty, 2 * x + tx));
        }
      }
    }
  }
}

TEST_CASE("rearrange_rgb_to_mpfa picks each angle's color value") {
  PatternDescriptor mpfa = PatternDescriptor::mpfa();
  std::map<int, RgbImage> per_angle;
  for (int a : kAngles) {
    per_angle.emplace(a, RgbImage(Plane(4, 4, a + 0.1), Plane(4, 4, a + 0.2),
                                  Plane(4, 4, a + 0.3)));
  }
  auto mosaics = rearrange_rgb_to_mpfa(per_angle, mpfa);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      int angle = mpfa.label_at(y, x).angle;
      CHECK(mosaics.at(Color::r).plane().at(y, x) == doctest::Approx(angle + 0.1));
      CHECK(mosaics.at(Color::g).plane().at(y, x) == doctest::Approx(angle + 0.2));
      CHECK(mosaics.at(Color::b).plane().at(y, x) == doctest::Approx(angle + 0.3));
    }
  }
}

TEST_CASE("rearrange_rgb_to_mpfa on identical angle images samples that image") {
  Rng rng(21);
  RgbImage img(testutil::random_plane(8, 8, rng), testutil::random_plane(8, 8, rng),
               testutil::random_plane(8, 8, rng));
  std::map<int, RgbImage> per_angle;
  for (int a : kAngles) per_angle.emplace(a, img);
  auto mosaics = rearrange_rgb_to_mpfa(per_angle, PatternDescriptor::mpfa());
  CHECK(testutil::identical(mosaics.at(Color::r).plane(), img.r));
  CHECK(testutil::identical(mosaics.at(Color::g).plane(), img.g));
  CHECK(testutil::identical(mosaics.at(Color::b).plane(), img.b));
}

TEST_CASE("rearrange_rgb_to_mpfa matches mosaic_from_stack on consistent data") {
  // Brute-force index check on 8x8: feeding the per-angle full RGB images of
  // a stack through the rearrangement equals mosaicking each color's
  // sub-stack directly.
  Rng rng(23);
  PolarizationStack stack;
  for (int a : kAngles) {
    for (Color c : {Color::r, Color::g, Color::b}) {
      stack.add({a, c}, testutil::random_plane(8, 8, rng));
    }
  }
  PatternDescriptor mpfa = PatternDescriptor::mpfa();
  std::map<int, RgbImage> per_angle;
  for (int a : kAngles) {
    per_angle.emplace(a, RgbImage(stack.plane(a, Color::r), stack.plane(a, Color::g),
                                  stack.plane(a, Color::b)));
  }
  auto mosaics = rearrange_rgb_to_mpfa(per_angle, mpfa);
  for (Color c : {Color::r, Color::g, Color::b}) {
    PolarizationStack sub;
    for (int a : kAngles) sub.add({a, Color::mono}, stack.plane(a, c));
    MosaicImage direct = mosaic_from_stack(sub, mpfa);
    CHECK(testutil::identical(mosaics.at(c).plane(), direct.plane()));
  }
}
