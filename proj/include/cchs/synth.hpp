/**
 * @file synth.hpp
 * @brief Deterministic test fixtures.
 *
 * Rectangles layout (fractions of the image size, default 320x240):
 *
 *   shape   color          x0     y0     width  height  curvature
 *   blue    (0, 0, 1)      1/16   1/12   1/2    1/5     0.2
 *   red     (1, 0, 0)      7/16   5/12   1/2    1/4     0.2
 *   yellow  (1, 1, 0)      3/32   17/24  5/16   5/24    0.1
 *
 * on a (0.5, 0.5, 0.5) background. Curvature is the corner radius divided by
 * the shorter side. A pixel belongs to a shape when its center lies inside the
 * rounded rectangle; the truth map holds the shape's inner boundary pixels
 * (inside pixels with a 4-neighbour outside).
 */
#pragma once

#include <array>
#include <string>
#include <vector>

#include "cchs/detectors.hpp"
#include "cchs/image.hpp"

namespace cchs {

struct RoundedRect {
  std::string name;
  std::array<double, 3> color;
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 0.0;
  double height = 0.0;
  double curvature = 0.0;

  double corner_radius() const;
  bool contains(double x, double y) const;
  /// 2 (w + h) - 8 r + 2 pi r.
  double perimeter() const;
};

struct RectanglesFixture {
  ColorImage image;
  std::vector<RoundedRect> shapes;
  std::vector<EdgeMap> truth;  ///< parallel to shapes

  const EdgeMap& truth_for(const std::string& name) const;
  const RoundedRect& shape(const std::string& name) const;
};

inline constexpr std::array<double, 3> kBackgroundGray{0.5, 0.5, 0.5};

RectanglesFixture rectangles(int width = 320, int height = 240);

struct StepEdgeFixture {
  ColorImage image;
  EdgeMap truth;
  double edge = 0.0;  ///< boundary position in pixel-edge coordinates
};

/// Left color for pixels left of `edge`, right color beyond it. Pixel c spans
/// [c, c+1); a pixel cut by the boundary gets the area-weighted mix. The truth
/// map marks column floor(edge) on every row.
StepEdgeFixture step_edge(int width, int height, const std::array<double, 3>& left,
                          const std::array<double, 3>& right, double edge);

struct SquarePairFixture {
  ColorImage first;
  ColorImage second;
  double dx = 0.0;
  double dy = 0.0;
  double x0 = 0.0;  ///< square origin in the first frame
  double y0 = 0.0;
  double side = 0.0;
};

inline constexpr std::array<double, 3> kSquareColor{0.9, 0.75, 0.1};

/// A square of kSquareColor on gray, and the same frame with the square moved
/// by (dx, dy) pixels (area-weighted for fractional shifts). Shifts larger than
/// half the flow window are rejected as unsupported motion.
SquarePairFixture translated_square_pair(double dx, double dy, int size = 96, int window = 15);

}  // namespace cchs
