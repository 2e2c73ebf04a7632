#include <doctest.h>

#include <cmath>

#include "pfapipe/mosaic_ops.hpp"
#include "pfapipe/pfcd.hpp"
#include "pfapipe/synth.hpp"
#include "testutil.hpp"

using namespace pfapipe;

namespace {

// Piecewise-constant test image: flat rectangles with strong steps.
Plane piecewise_constant(int w, int h) {
  Plane p(w, h, 0.2);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x >= w / 4 && x < 3 * w / 4 && y >= h / 4 && y < 3 * h / 4) p.at(y, x) = 0.7;
      if (x >= w / 2 && y < h / 3) p.at(y, x) = 0.45;
      if (y >= 2 * h / 3 && x < w / 3) p.at(y, x) = 0.9;
    }
  }
  return p;
}

double plane_psnr(const Plane& ref, const Plane& test) {
  return 10.0 * std::log10(1.0 / std::pow(testutil::rmse(ref, test), 2.0));
}

PolarizationStack smooth_mono_stack(int w, int h, std::uint64_t seed) {
  SceneSpec spec;
  spec.width = w;
  spec.height = h;
  spec.seed = seed;
  spec.edge_features = 0;  // smooth only
  return synthesize_scene(spec);
}

}  // namespace

TEST_CASE("bm3d: constant planes are exact fixed points") {
  for (double sigma : {0.001, 25.0 / 255.0, 0.2}) {
    Plane c(48, 40, 0.37);
    Plane out = bm3d_denoise(c, sigma);
    CHECK(testutil::identical(c, out));
  }
}

TEST_CASE("bm3d: sigma zero returns the input bit-exactly") {
  Rng rng(51);
  Plane p = testutil::random_plane(32, 32, rng);
  Plane out = bm3d_denoise(p, 0.0);
  CHECK(testutil::identical(p, out));
}

TEST_CASE("bm3d: rejects invalid parameters") {
  Plane p(16, 16, 0.0);
  Bm3dParams bad;
  bad.block_size = 2;
  CHECK_THROWS_AS(bm3d_denoise(p, 0.1, bad), ContractError);
  bad = {};
  bad.max_blocks_stage1 = 12;
  CHECK_THROWS_AS(bm3d_denoise(p, 0.1, bad), ContractError);
  bad = {};
  bad.step = 0;
  CHECK_THROWS_AS(bm3d_denoise(p, 0.1, bad), ContractError);
  CHECK_THROWS_AS(bm3d_denoise(p, -0.1), ContractError);
}

TEST_CASE("bm3d: denoising beats the noisy input by at least 5 dB") {
  const double sigma = 25.0 / 255.0;
  Plane clean = piecewise_constant(128, 128);
  Plane noisy = add_awgn(clean, sigma, 2024);
  double noisy_psnr = plane_psnr(clean, noisy);
  CHECK(noisy_psnr == doctest::Approx(20.17).epsilon(0.05));

  Plane denoised = bm3d_denoise(noisy, sigma);
  double out_psnr = plane_psnr(clean, denoised);
  CHECK(out_psnr >= noisy_psnr + 5.0);
}

TEST_CASE("bm3d: adding a constant offset shifts the output by that offset") {
  const double sigma = 10.0 / 255.0;
  Plane clean = piecewise_constant(64, 64);
  Plane noisy = add_awgn(clean, sigma, 99);
  Plane shifted = noisy;
  const double c = 0.1;
  for (double& v : shifted.samples()) v += c;

  Plane a = bm3d_denoise(noisy, sigma);
  Plane b = bm3d_denoise(shifted, sigma);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(b.data()[i] - (a.data()[i] + c)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("bm3d: tiny images fall back to clamped block sizes") {
  Plane p(3, 2, std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  Plane out = bm3d_denoise(p, 0.05);
  CHECK(out.width() == 3);
  CHECK(out.height() == 2);
  for (double v : out.samples()) CHECK(std::isfinite(v));
}

TEST_CASE("pfcd: zero sigmas return the channels bit-exactly") {
  Rng rng(52);
  std::array<Plane, 4> ch = {testutil::random_plane(16, 16, rng),
                             testutil::random_plane(16, 16, rng),
                             testutil::random_plane(16, 16, rng),
                             testutil::random_plane(16, 16, rng)};
  std::array<Plane, 4> out = pfcd_denoise(ch, {0.0, 0.0, 0.0, 0.0});
  for (int i = 0; i < 4; ++i) CHECK(testutil::identical(ch[i], out[i]));
}

TEST_CASE("pfcd: identical signal with independent noise converges across channels") {
  // The common signal rides the first principal component; components 2-4 are
  // pure noise and denoise toward zero, so the outputs converge to each other
  // far below the input noise level.
  const double sigma = 0.25 / 255.0;
  Plane base = piecewise_constant(96, 96);
  std::array<Plane, 4> ch;
  for (int i = 0; i < 4; ++i) {
    ch[i] = add_awgn(base, sigma, 300 + i);
  }
  std::array<Plane, 4> out = pfcd_denoise(ch, {sigma, sigma, sigma, sigma});
  double worst_in = 0.0, worst_out = 0.0;
  for (int i = 1; i < 4; ++i) {
    worst_in = std::max(worst_in, testutil::max_abs_diff(ch[0], ch[i]));
    worst_out = std::max(worst_out, testutil::max_abs_diff(out[0], out[i]));
  }
  CHECK(worst_out <= 1e-3);
  CHECK(worst_out <= 0.2 * worst_in);
}

TEST_CASE("denoise_mpfa: zero-sigma profile is the identity") {
  Rng rng(53);
  MosaicImage m(testutil::random_plane(32, 32, rng), PatternDescriptor::mpfa());
  MosaicImage out = denoise_mpfa(m, NoiseProfile::mono(0.0));
  CHECK(testutil::identical(m.plane(), out.plane()));
}

TEST_CASE("denoise_mpfa: constant mosaics are fixed points") {
  MosaicImage m(Plane(32, 32, 0.42), PatternDescriptor::mpfa());
  MosaicImage out = denoise_mpfa(m, NoiseProfile::mono(8.0 / 255.0));
  CHECK(testutil::identical(m.plane(), out.plane()));
}

TEST_CASE("denoise_mpfa: reduces mosaic-domain RMSE by at least 40%") {
  const double sigma = 7.31 / 255.0;  // high-condition sigma_G
  PolarizationStack stack = smooth_mono_stack(256, 256, 7);
  MosaicImage clean = mosaic_from_stack(stack, PatternDescriptor::mpfa());
  MosaicImage noisy(add_awgn(clean.plane(), sigma, 1234), clean.pattern());

  MosaicImage denoised = denoise_mpfa(noisy, NoiseProfile::mono(sigma));
  double before = testutil::rmse(clean.plane(), noisy.plane());
  double after = testutil::rmse(clean.plane(), denoised.plane());
  CHECK(after <= 0.6 * before);
}

TEST_CASE("denoise_cpfa: zero-sigma profile and constants") {
  Rng rng(54);
  MosaicImage m(testutil::random_plane(32, 32, rng), PatternDescriptor::cpfa());
  CHECK(testutil::identical(m.plane(),
                            denoise_cpfa(m, NoiseProfile::rgb(0, 0, 0)).plane()));

  MosaicImage c(Plane(32, 32, 0.3), PatternDescriptor::cpfa());
  MosaicImage out = denoise_cpfa(c, NoiseProfile::rgb(0.02, 0.03, 0.05));
  CHECK(testutil::identical(c.plane(), out.plane()));
}

TEST_CASE("denoise_cpfa: reduces per-channel RMSE by at least 40%") {
  const std::array<double, 3> sigma = {8.62 / 255.0, 7.31 / 255.0, 15.79 / 255.0};
  SceneSpec spec;
  spec.width = 256;
  spec.height = 256;
  spec.seed = 11;
  spec.edge_features = 0;
  PolarizationStack stack = synthesize_scene_color(spec);
  PatternDescriptor pat = PatternDescriptor::cpfa();
  MosaicImage clean = mosaic_from_stack(stack, pat);

  // Per-channel noise: build the noisy mosaic from per-channel noisy planes
  // so each color carries its own sigma.
  PolarizationStack noisy_stack;
  int stream = 0;
  for (const auto& channel : stack.channels()) {
    double s = sigma[static_cast<int>(channel.label.color) - 1];
    noisy_stack.add(channel.label, add_awgn(channel.plane, s, 9000 + stream++));
  }
  MosaicImage noisy = mosaic_from_stack(noisy_stack, pat);

  MosaicImage denoised =
      denoise_cpfa(noisy, NoiseProfile::rgb(sigma[0], sigma[1], sigma[2]));

  // Compare per color over the mosaic positions of that color.
  for (Color color : {Color::r, Color::g, Color::b}) {
    double before_sq = 0.0, after_sq = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < clean.height(); ++y) {
      for (int x = 0; x < clean.width(); ++x) {
        if (pat.label_at(y, x).color != color) continue;
        double d0 = noisy.plane().at(y, x) - clean.plane().at(y, x);
        double d1 = denoised.plane().at(y, x) - clean.plane().at(y, x);
        before_sq += d0 * d0;
        after_sq += d1 * d1;
        ++n;
      }
    }
    double before = std::sqrt(before_sq / n);
    double after = std::sqrt(after_sq / n);
    CHECK(after <= 0.6 * before);
  }
}

TEST_CASE("denoise_mpfa commutes with consistent pattern relabeling") {
  const double sigma = 6.0 / 255.0;
  PolarizationStack stack = smooth_mono_stack(64, 64, 15);
  std::array<int, 4> layout_a = {90, 45, 135, 0};
  std::array<int, 4> layout_b = {45, 90, 0, 135};  // relabel angles in place

  // Same physical plane; pattern cells renamed. Per-angle sigmas follow the
  // relabeling so each pixel sees the same sigma either way.
  MosaicImage ma(mosaic_from_stack(stack, PatternDescriptor::mpfa(layout_a)));
  MosaicImage mb(ma.plane(), PatternDescriptor::mpfa(layout_b));

  NoiseProfile pa, pb;
  std::array<double, 4> sigmas = {sigma, 1.5 * sigma, 0.5 * sigma, 2.0 * sigma};
  for (int i = 0; i < 4; ++i) {
    pa.set({layout_a[i], Color::mono}, sigmas[i]);
    pb.set({layout_b[i], Color::mono}, sigmas[i]);
  }

  MosaicImage noisy_a(add_awgn(ma.plane(), sigma, 777), ma.pattern());
  MosaicImage noisy_b(noisy_a.plane(), mb.pattern());
  MosaicImage out_a = denoise_mpfa(noisy_a, pa);
  MosaicImage out_b = denoise_mpfa(noisy_b, pb);
  CHECK(testutil::max_abs_diff(out_a.plane(), out_b.plane()) <= 1e-9);
}

TEST_CASE("noise profile lookup falls back from angle to color") {
  NoiseProfile p = NoiseProfile::rgb(0.01, 0.02, 0.03);
  CHECK(p.sigma_for({45, Color::g}) == 0.02);
  CHECK(p.sigma_for({kNoAngle, Color::b}) == 0.03);
  CHECK_THROWS_AS(p.sigma_for({0, Color::mono}), ContractError);

  p.set({0, Color::g}, 0.05);
  CHECK(p.sigma_for({0, Color::g}) == 0.05);
  CHECK(p.sigma_for({90, Color::g}) == 0.02);

  CHECK_THROWS_AS(NoiseProfile::mono(-1.0), ContractError);
}
