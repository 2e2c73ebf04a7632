#include "pfapipe/pfcd.hpp"

#include <algorithm>
#include <cmath>

#include "pfapipe/mosaic_ops.hpp"
#include "pfapipe/pca.hpp"

namespace pfapipe {

NoiseProfile NoiseProfile::mono(double sigma) {
  NoiseProfile p;
  p.set({kNoAngle, Color::mono}, sigma);
  return p;
}

NoiseProfile NoiseProfile::rgb(double sigma_r, double sigma_g, double sigma_b) {
  NoiseProfile p;
  p.set({kNoAngle, Color::r}, sigma_r);
  p.set({kNoAngle, Color::g}, sigma_g);
  p.set({kNoAngle, Color::b}, sigma_b);
  return p;
}

void NoiseProfile::set(ChannelLabel label, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ContractError("NoiseProfile: sigma must be finite and >= 0");
  }
  for (auto& [l, s] : entries_) {
    if (l == label) {
      s = sigma;
      return;
    }
  }
  entries_.emplace_back(label, sigma);
}

double NoiseProfile::sigma_for(const ChannelLabel& label) const {
  for (const auto& [l, s] : entries_) {
    if (l == label) return s;
  }
  for (const auto& [l, s] : entries_) {
    if (l.angle == kNoAngle && l.color == label.color) return s;
  }
  throw ContractError("NoiseProfile: no sigma for channel " + label_name(label));
}

bool NoiseProfile::all_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.second == 0.0; });
}

std::array<Plane, 4> pfcd_denoise(const std::array<Plane, 4>& channels,
                                  const std::array<double, 4>& sigmas,
                                  const Bm3dParams& params) {
  for (double s : sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ContractError("pfcd_denoise: sigmas must be finite and >= 0");
    }
  }
  if (std::all_of(sigmas.begin(), sigmas.end(), [](double s) { return s == 0.0; })) {
    return channels;
  }

  PcaTransform t = compute_pca_transform(channels);
  std::array<double, 4> component_sigma = propagate_noise_sigma(t, sigmas);
  std::array<Plane, 4> components = pca_forward(t, channels);
  for (int i = 0; i < 4; ++i) {
    components[i] = bm3d_denoise(components[i], component_sigma[i], params);
  }
  return pca_inverse(t, components);
}

MosaicImage denoise_mpfa(const MosaicImage& mosaic, const NoiseProfile& profile,
                         const Bm3dParams& params) {
  mosaic.require_kind(PatternKind::mpfa, "denoise_mpfa");
  if (profile.all_zero()) {
    return mosaic;
  }
  std::map<int, Plane> quads = split_mpfa_quads(mosaic);
  std::array<Plane, 4> channels = {quads.at(0), quads.at(45), quads.at(90), quads.at(135)};
  std::array<double, 4> sigmas;
  for (int i = 0; i < 4; ++i) {
    sigmas[i] = profile.sigma_for({kAngles[i], Color::mono});
  }
  channels = pfcd_denoise(channels, sigmas, params);
  std::map<int, Plane> denoised;
  for (int i = 0; i < 4; ++i) {
    denoised.emplace(kAngles[i], std::move(channels[i]));
  }
  return merge_quads_to_mpfa(denoised, mosaic.pattern());
}

MosaicImage denoise_cpfa(const MosaicImage& mosaic, const NoiseProfile& profile,
                         const Bm3dParams& params) {
  mosaic.require_kind(PatternKind::cpfa, "denoise_cpfa");
  if (profile.all_zero()) {
    return mosaic;
  }
  std::map<int, MosaicImage> bayers = split_cpfa_to_bayer(mosaic);
  std::map<int, MosaicImage> denoised;
  for (const auto& [angle, bayer] : bayers) {
    // Bayer phases in row-major order are (R, G, G, B) for the RG/GB tile.
    std::vector<Plane> phases = split_phases(bayer.plane(), 2, 2);
    std::array<Plane, 4> channels = {phases[0], phases[1], phases[2], phases[3]};
    std::array<double, 4> sigmas;
    for (int i = 0; i < 4; ++i) {
      ChannelLabel cell = bayer.pattern().cell(i / 2, i % 2);
      sigmas[i] = profile.sigma_for(cell);
    }
    channels = pfcd_denoise(channels, sigmas, params);
    for (int i = 0; i < 4; ++i) phases[i] = std::move(channels[i]);
    denoised.emplace(angle, MosaicImage(merge_phases(phases, 2, 2), bayer.pattern()));
  }
  return merge_bayer_to_cpfa(denoised, mosaic.pattern());
}

}  // namespace pfapipe
