#include "cchs/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cchs/error.hpp"
#include "cchs/parallel.hpp"

namespace cchs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double standard_normal(std::uint64_t key, std::uint64_t counter) {
  const double u1 = counter_uniform(key, 2 * counter);
  const double u2 = counter_uniform(key, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Inversion by sequential search; mean is at most kPoissonPhotonScale so exp(-mean) stays normal.
double poisson_sample(double mean, std::uint64_t key) {
  if (mean <= 0.0) return 0.0;
  const double u = counter_uniform(key, 0);
  double p = std::exp(-mean);
  double cdf = p;
  int k = 0;
  while (u > cdf && k < 10000) {
    ++k;
    p *= mean / k;
    cdf += p;
    if (p == 0.0 && static_cast<double>(k) > mean) break;
  }
  return k;
}

void validate(const NoiseSpec& spec) {
  if (!std::isfinite(spec.parameter)) throw ParameterError("noise parameter must be finite");
  switch (spec.kind) {
    case NoiseKind::kGaussian:
    case NoiseKind::kSpeckle:
      if (spec.parameter < 0.0) throw ParameterError("noise variance must be non-negative");
      break;
    case NoiseKind::kSaltPepper:
      if (spec.parameter < 0.0 || spec.parameter > 1.0) {
        throw ParameterError("salt and pepper density must lie in [0, 1]");
      }
      break;
    case NoiseKind::kPoisson:
      break;
  }
}

}  // namespace

const char* to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kPoisson:
      return "poisson";
    case NoiseKind::kGaussian:
      return "gaussian";
    case NoiseKind::kSpeckle:
      return "speckle";
    case NoiseKind::kSaltPepper:
      return "salt_pepper";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(const std::string& name) {
  for (NoiseKind k : {NoiseKind::kPoisson, NoiseKind::kGaussian, NoiseKind::kSpeckle,
                      NoiseKind::kSaltPepper}) {
    if (name == to_string(k)) return k;
  }
  throw ParameterError("unknown noise kind '" + name + "'");
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t channel, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64((channel << 48) ^ index));
}

double counter_uniform(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t bits = splitmix64(key ^ splitmix64(counter));
  // 53 random mantissa bits, shifted off zero.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

ColorImage corrupt(const ColorImage& img, const NoiseSpec& spec) {
  validate(spec);
  ColorImage out = img;
  const int w = img.width();
  parallel_for(img.height(), [&](int r) {
    for (int c = 0; c < w; ++c) {
      const auto index = static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(w) +
                         static_cast<std::uint64_t>(c);
      if (spec.kind == NoiseKind::kSaltPepper) {
        const double u = counter_uniform(stream_key(spec.seed, 3, index), 0);
        if (u < spec.parameter / 2.0) {
          out.set_pixel(r, c, {0.0, 0.0, 0.0});
        } else if (u < spec.parameter) {
          out.set_pixel(r, c, {1.0, 1.0, 1.0});
        }
        continue;
      }
      for (int k = 0; k < 3; ++k) {
        const double x = img.channel(k)(r, c);
        const std::uint64_t key = stream_key(spec.seed, static_cast<std::uint64_t>(k), index);
        double y = x;
        switch (spec.kind) {
          case NoiseKind::kGaussian:
            y = x + std::sqrt(spec.parameter) * standard_normal(key, 0);
            break;
          case NoiseKind::kSpeckle:
            y = x * (1.0 + std::sqrt(spec.parameter) * standard_normal(key, 0));
            break;
          case NoiseKind::kPoisson:
            y = poisson_sample(std::clamp(x, 0.0, 1.0) * kPoissonPhotonScale, key) /
                kPoissonPhotonScale;
            break;
          case NoiseKind::kSaltPepper:
            break;
        }
        out.channel(k)(r, c) = std::clamp(y, 0.0, 1.0);
      }
    }
  });
  return out;
}

double snr(const Plane& clean, const Plane& noisy) {
  if (!clean.same_shape(noisy)) throw ParameterError("snr needs equally sized planes");
  double signal = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double s = clean.values()[i];
    const double e = s - noisy.values()[i];
    signal += s * s;
    error += e * e;
  }
  if (error == 0.0) return kDecibelCap;
  return std::min(kDecibelCap, 10.0 * std::log10(signal / error));
}

double snr(const ColorImage& clean, const ColorImage& noisy) {
  if (clean.width() != noisy.width() || clean.height() != noisy.height()) {
    throw ParameterError("snr needs equally sized images");
  }
  double signal = 0.0;
  double error = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < clean.channel(k).size(); ++i) {
      const double s = clean.channel(k).values()[i];
      const double e = s - noisy.channel(k).values()[i];
      signal += s * s;
      error += e * e;
    }
  }
  if (error == 0.0) return kDecibelCap;
  return std::min(kDecibelCap, 10.0 * std::log10(signal / error));
}

}  // namespace cchs
