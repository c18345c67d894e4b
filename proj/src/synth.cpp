#include "cchs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cchs/error.hpp"

namespace cchs {

namespace {

// Length of [a0, a1) covered by [b0, b1).
double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

double RoundedRect::corner_radius() const { return curvature * std::min(width, height); }

bool RoundedRect::contains(double x, double y) const {
  if (x < x0 || x > x0 + width || y < y0 || y > y0 + height) return false;
  const double r = corner_radius();
  const double cx = std::clamp(x, x0 + r, x0 + width - r);
  const double cy = std::clamp(y, y0 + r, y0 + height - r);
  const double dx = x - cx;
  const double dy = y - cy;
  return dx * dx + dy * dy <= r * r;
}

double RoundedRect::perimeter() const {
  const double r = corner_radius();
  return 2.0 * (width + height) - 8.0 * r + 2.0 * std::numbers::pi * r;
}

const EdgeMap& RectanglesFixture::truth_for(const std::string& name) const {
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (shapes[i].name == name) return truth[i];
  }
  throw ParameterError("no shape named '" + name + "'");
}

const RoundedRect& RectanglesFixture::shape(const std::string& name) const {
  for (const auto& s : shapes) {
    if (s.name == name) return s;
  }
  throw ParameterError("no shape named '" + name + "'");
}

RectanglesFixture rectangles(int width, int height) {
  if (width < 64 || height < 48) throw ParameterError("rectangles fixture needs at least 64x48");
  const double w = width;
  const double h = height;
  auto px = [](double v) { return std::round(v); };
  std::vector<RoundedRect> shapes = {
      {"blue", {0.0, 0.0, 1.0}, px(w / 16), px(h / 12), px(w / 2), px(h / 5), 0.2},
      {"red", {1.0, 0.0, 0.0}, px(7 * w / 16), px(5 * h / 12), px(w / 2), px(h / 4), 0.2},
      {"yellow", {1.0, 1.0, 0.0}, px(3 * w / 32), px(17 * h / 24), px(5 * w / 16), px(5 * h / 24), 0.1},
  };
  ColorImage image = ColorImage::filled(width, height, kBackgroundGray, ColorSpace::kRawRgb);
  std::vector<EdgeMap> truth;
  for (const auto& s : shapes) {
    EdgeMap inside(width, height);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        if (s.contains(c + 0.5, r + 0.5)) {
          inside.set(r, c, true);
          image.set_pixel(r, c, s.color);
        }
      }
    }
    EdgeMap boundary(width, height);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        if (!inside.at(r, c)) continue;
        const bool outside_neighbour =
            r == 0 || c == 0 || r == height - 1 || c == width - 1 || !inside.at(r - 1, c) ||
            !inside.at(r + 1, c) || !inside.at(r, c - 1) || !inside.at(r, c + 1);
        boundary.set(r, c, outside_neighbour);
      }
    }
    truth.push_back(std::move(boundary));
  }
  return RectanglesFixture{std::move(image), std::move(shapes), std::move(truth)};
}

StepEdgeFixture step_edge(int width, int height, const std::array<double, 3>& left,
                          const std::array<double, 3>& right, double edge) {
  if (!(edge > 0.0 && edge < width)) throw ParameterError("edge must lie inside the image");
  ColorImage image = ColorImage::filled(width, height, left, ColorSpace::kRawRgb);
  EdgeMap truth(width, height);
  const int truth_column = static_cast<int>(std::floor(edge));
  for (int c = 0; c < width; ++c) {
    const double right_share = overlap(c, c + 1.0, edge, width);
    std::array<double, 3> value{};
    for (std::size_t k = 0; k < 3; ++k) value[k] = (1.0 - right_share) * left[k] + right_share * right[k];
    for (int r = 0; r < height; ++r) image.set_pixel(r, c, value);
  }
  for (int r = 0; r < height; ++r) truth.set(r, truth_column, true);
  return StepEdgeFixture{std::move(image), std::move(truth), edge};
}

SquarePairFixture translated_square_pair(double dx, double dy, int size, int window) {
  if (std::max(std::abs(dx), std::abs(dy)) > window / 2.0) {
    throw ParameterError("unsupported motion: shift exceeds half the flow window");
  }
  const double side = std::round(size / 3.0);
  const double x0 = std::round((size - side) / 2.0);
  const double y0 = x0;
  auto render = [&](double ox, double oy) {
    ColorImage img = ColorImage::filled(size, size, kBackgroundGray, ColorSpace::kRawRgb);
    for (int r = 0; r < size; ++r) {
      for (int c = 0; c < size; ++c) {
        const double share = overlap(c, c + 1.0, ox, ox + side) * overlap(r, r + 1.0, oy, oy + side);
        std::array<double, 3> value{};
        for (std::size_t k = 0; k < 3; ++k) {
          value[k] = (1.0 - share) * kBackgroundGray[k] + share * kSquareColor[k];
        }
        img.set_pixel(r, c, value);
      }
    }
    return img;
  };
  return SquarePairFixture{render(x0, y0), render(x0 + dx, y0 + dy), dx, dy, x0, y0, side};
}

}  // namespace cchs
