/**
 * @file detectors.hpp
 * @brief Color-selective generalized gradient magnitudes and non-maximum suppression.
 *
 * CHED and MCHED take the larger eigenvalue of the 2x2 metric of the feature
 * image, built from spatial derivatives (CHED) or from their scale-derivative
 * rewrite (MCHED). MaSED1..3 take the trace of a 4x4 Gram matrix over
 * (x1, x2, y1, y2):
 *   MaSED1: spatial entries by central differences, scale entries analytic;
 *   MaSED2: spatial entries rewritten as scale derivatives, scale entries analytic;
 *   MaSED3: spatial entries by central differences, scale entries rewritten as
 *           spatial differences.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cchs/color_algebra.hpp"
#include "cchs/features.hpp"
#include "cchs/image.hpp"
#include "cchs/plane.hpp"

namespace cchs {

enum class Method { kChed, kMched, kMased1, kMased2, kMased3 };

const char* to_string(Method method);
/// Parses "ched", "mched", "mased1".."mased3"; throws ParameterError otherwise.
Method parse_method(const std::string& name);
/// (2, 2) for every method except MCHED, which uses (8, 8).
ScalePair default_scales(Method method);

/// Magnitude plane plus an optional edge-normal direction (radians, measured
/// from the x1 axis towards x2). NaN directions mean "unknown".
struct GradientMap {
  Plane magnitude;
  std::optional<Plane> direction;
};

class EdgeMap {
 public:
  EdgeMap(int width, int height) : width_(width), height_(height),
      edges_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int row, int col) const { return edges_[index(row, col)] != 0; }
  void set(int row, int col, bool on) { edges_[index(row, col)] = on ? 1 : 0; }
  std::size_t count() const;
  /// 1.0 on edges, 0.0 elsewhere.
  Plane to_plane() const;
  /// Pixels with value > 0.5 become edges.
  static EdgeMap from_plane(const Plane& plane);

  double radius = 0.0;
  double threshold = 0.0;

  bool operator==(const EdgeMap& other) const {
    return width_ == other.width_ && height_ == other.height_ && edges_ == other.edges_;
  }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c);
  }
  int width_;
  int height_;
  std::vector<std::uint8_t> edges_;
};

struct Metric2x2 {
  Plane g11;
  Plane g12;
  Plane g22;
};

/// Gram entries of the per-axis 2-vectors (dsc, dtheta).
Metric2x2 metric_2x2(const BandDerivatives& d);

struct LambdaPlus {
  double lambda = 0.0;  ///< larger eigenvalue
  double angle = 0.0;   ///< eigenvector angle in [0, pi)
};
LambdaPlus lambda_plus(double g11, double g12, double g22);

/// Larger eigenvalue and its direction at every pixel of a 2x2 metric.
GradientMap eigen_gradient(const Metric2x2& metric);

using Matrix4 = std::array<double, 16>;

/// Gram matrix of the four 2-vectors (dsc, dtheta) along x1, x2, y1, y2 at one pixel.
Matrix4 gram_matrix(const DerivativeBundle& bundle, int row, int col);

struct SymmetricEigen4 {
  std::array<double, 4> values;                ///< descending
  std::array<std::array<double, 4>, 4> vectors;  ///< vectors[k] pairs with values[k]
  int sweeps = 0;
};
/// Cyclic Jacobi eigen-decomposition of a symmetric 4x4 matrix.
SymmetricEigen4 jacobi_eigen4(const Matrix4& m, double tolerance = 1e-12, int max_sweeps = 50);

/// Sum of the four eigenvalues of each pixel's Gram matrix, i.e. its trace.
/// With want_direction the leading eigenvector's (x1, x2) projection gives the
/// direction plane; where that projection is shorter than 1e-6 the discrete
/// gradient of the magnitude is used instead.
GradientMap gram_trace_gradient(const DerivativeBundle& bundle, bool want_direction = true);

/// Feature pieces of one image at one scale pair.
struct FeatureStack {
  CchsField cchs;
  CchsScaleDerivatives dA;
  FeatureField features;
};
FeatureStack feature_stack(const ColorImage& img, const ColorVector& nu, const ScalePair& scales);

/// Derivative bundle feeding MaSED variant 1, 2 or 3.
DerivativeBundle mased_bundle(int variant, const ColorImage& img, const FeatureStack& stack);

GradientMap ched(const FeatureStack& stack);
GradientMap mched(const ColorImage& img, const FeatureStack& stack);
GradientMap mased(int variant, const ColorImage& img, const FeatureStack& stack);

/// Runs the chosen method end to end (before suppression).
GradientMap gradient_map(const ColorImage& img, const ColorVector& nu, Method method,
                         const ScalePair& scales);

/// Magnitudes at or below this are treated as zero by suppression and thresholding.
inline constexpr double kMagnitudeFloor = 1e-12;

struct NmsOptions {
  double radius = 1.5;
  /// Keep candidates at or above this percentile of the non-zero magnitudes.
  double percentile = 90.0;
  /// Explicit threshold; overrides the percentile when set.
  std::optional<double> threshold;
};

/// Value at the given percentile (nearest lower rank) of magnitudes above
/// kMagnitudeFloor; +inf when there are none.
double percentile_threshold(const Plane& magnitude, double percentile);

/// Keeps pixels that are a directional maximum at +-radius (bilinear samples),
/// strictly above at least one side, and at or above the threshold. Without a
/// usable direction the discrete magnitude gradient is used; where that also
/// vanishes the pixel must be a maximum along one of the four principal axes.
EdgeMap nms(const GradientMap& gm, const NmsOptions& options = {});

struct DetectOptions {
  Method method = Method::kChed;
  std::optional<ScalePair> scales;  ///< default_scales(method) when empty
  NmsOptions nms;
};

struct Detection {
  GradientMap gradient;
  EdgeMap edges;
  ScalePair scales;
};

Detection detect(const ColorImage& img, const ColorVector& nu, const DetectOptions& options);

}  // namespace cchs
