#pragma once

#include <array>

#include "cchs/plane.hpp"

namespace cchs {

/// Working color space of a ColorImage's three channels.
enum class ColorSpace {
  kRawRgb,  ///< sRGB-encoded channels in [0, 1]
  kLab,     ///< CIE L*a*b* mapped affinely to [0, 1]
};

const char* to_string(ColorSpace space);

inline constexpr int kMinImageSide = 8;

/// Three-channel raster f = f1 e1 + f2 e2 + f3 e3.
///
/// Invariants: all channels share dimensions, both sides are at least
/// kMinImageSide and every sample is finite.
class ColorImage {
 public:
  ColorImage(Plane c1, Plane c2, Plane c3, ColorSpace space);
  static ColorImage filled(int width, int height, std::array<double, 3> value, ColorSpace space);

  int width() const { return channels_[0].width(); }
  int height() const { return channels_[0].height(); }
  ColorSpace space() const { return space_; }

  const Plane& channel(int i) const { return channels_.at(static_cast<std::size_t>(i)); }
  /// Mutable channel access. Callers keep samples finite.
  Plane& channel(int i) { return channels_.at(static_cast<std::size_t>(i)); }

  std::array<double, 3> pixel(int row, int col) const;
  void set_pixel(int row, int col, std::array<double, 3> value);

  /// f1 + f2 + f3.
  Plane channel_sum() const;
  /// Rec.601 luma of the three channels, used as the intensity of raw RGB input.
  Plane luma() const;

 private:
  std::array<Plane, 3> channels_;
  ColorSpace space_;
};

}  // namespace cchs
