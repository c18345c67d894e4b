#pragma once

#include <cstdint>
#include <string>

#include "cchs/image.hpp"
#include "cchs/plane.hpp"

namespace cchs {

enum class NoiseKind { kPoisson, kGaussian, kSpeckle, kSaltPepper };

const char* to_string(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string& name);

/// parameter is the variance for gaussian/speckle, the density for
/// salt_pepper and ignored for poisson.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kGaussian;
  double parameter = 0.0;
  std::uint64_t seed = 0;
};

/// Photon count of a full-scale sample under the Poisson model.
inline constexpr double kPoissonPhotonScale = 255.0;

/// Corrupts a [0, 1] image; the result is clamped back to [0, 1].
///
/// Every random draw is a pure function of (seed, channel, pixel index, draw
/// index), so the output is identical for any worker count.
///   gaussian:    x + N(0, var)
///   speckle:     x * (1 + N(0, var))
///   salt_pepper: the whole pixel becomes 0 or 1, each with probability density/2
///   poisson:     Poisson(x * 255) / 255
ColorImage corrupt(const ColorImage& img, const NoiseSpec& spec);

/// Reported for identical inputs, where the ratio is unbounded.
inline constexpr double kDecibelCap = 99.0;

/// 10 log10(sum clean^2 / sum (clean - noisy)^2) over all channels.
double snr(const ColorImage& clean, const ColorImage& noisy);
double snr(const Plane& clean, const Plane& noisy);

/// Counter-based generator: uniform in (0, 1) from a key and a counter.
double counter_uniform(std::uint64_t key, std::uint64_t counter);
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t channel, std::uint64_t index);

}  // namespace cchs
