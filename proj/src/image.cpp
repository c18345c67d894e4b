#include "cchs/image.hpp"

#include "cchs/error.hpp"

namespace cchs {

const char* to_string(ColorSpace space) {
  switch (space) {
    case ColorSpace::kRawRgb:
      return "raw-rgb";
    case ColorSpace::kLab:
      return "lab";
  }
  return "unknown";
}

ColorImage::ColorImage(Plane c1, Plane c2, Plane c3, ColorSpace space)
    : channels_{std::move(c1), std::move(c2), std::move(c3)}, space_(space) {
  if (!channels_[0].same_shape(channels_[1]) || !channels_[0].same_shape(channels_[2])) {
    throw ParameterError("color channels differ in size");
  }
  if (width() < kMinImageSide || height() < kMinImageSide) {
    throw ParameterError("image must be at least 8x8 pixels");
  }
  for (const auto& c : channels_) {
    if (!c.all_finite()) throw ParameterError("image contains non-finite samples");
  }
}

ColorImage ColorImage::filled(int width, int height, std::array<double, 3> value,
                              ColorSpace space) {
  return ColorImage(Plane(width, height, value[0]), Plane(width, height, value[1]),
                    Plane(width, height, value[2]), space);
}

std::array<double, 3> ColorImage::pixel(int row, int col) const {
  return {channels_[0](row, col), channels_[1](row, col), channels_[2](row, col)};
}

void ColorImage::set_pixel(int row, int col, std::array<double, 3> value) {
  for (std::size_t i = 0; i < 3; ++i) channels_[i](row, col) = value[i];
}

Plane ColorImage::channel_sum() const { return channels_[0] + channels_[1] + channels_[2]; }

Plane ColorImage::luma() const {
  Plane out(width(), height());
  auto r = channels_[0].values();
  auto g = channels_[1].values();
  auto b = channels_[2].values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
  return out;
}

}  // namespace cchs
