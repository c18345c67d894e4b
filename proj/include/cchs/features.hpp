/**
 * @file features.hpp
 * @brief The 2-band feature image g = (Sc[f nu], theta) and its derivatives.
 *
 * Four routes produce derivatives of the two bands:
 *  - spatial_derivatives: central differences of the sc / theta planes along x1, x2;
 *  - scale_derivatives_analytic: chain rule over the analytic dA/dy planes;
 *  - spatial_from_scale: x-derivatives rewritten through the generalized
 *    Cauchy-Riemann relations as scale derivatives (the B, C, D quantities);
 *  - scale_from_spatial: y-derivatives rewritten through the same relations
 *    as central differences of the A planes.
 *
 * Every route masks pixels whose amplitude M is at most
 * kMaskRelativeThreshold * max(M); the chain-rule routes additionally zero the
 * |bi| and theta derivatives where |bi| falls under the same threshold.
 */
#pragma once

#include <array>

#include "cchs/color_algebra.hpp"
#include "cchs/image.hpp"
#include "cchs/plane.hpp"
#include "cchs/scale_space.hpp"

namespace cchs {

inline constexpr double kMaskRelativeThreshold = 1e-8;

struct FeatureField {
  ColorVector nu;
  ScalePair scales;
  Plane sc;
  Plane bi_norm;
  Plane theta;
  Plane amplitude;

  /// Absolute mask threshold for this field.
  double mask_threshold() const { return kMaskRelativeThreshold * amplitude.max(); }
};

/// Derivatives of sc, |bi| and theta along two axes (x1, x2 or y1, y2).
struct BandDerivatives {
  std::array<Plane, 2> dsc;
  std::array<Plane, 2> dbi;
  std::array<Plane, 2> dtheta;
};

enum class Axis { kX1 = 0, kX2 = 1, kY1 = 2, kY2 = 3 };

/// Eight planes: derivatives of (sc, theta) along x1, x2, y1, y2 (indexed by Axis).
struct DerivativeBundle {
  std::array<Plane, 4> dsc;
  std::array<Plane, 4> dtheta;

  static DerivativeBundle combine(const BandDerivatives& spatial, const BandDerivatives& scale);
  int width() const { return dsc[0].width(); }
  int height() const { return dsc[0].height(); }
};

FeatureField feature_field(const CchsField& cchs, const ColorVector& nu);

/// Central difference along x1 (columns) or x2 (rows); one-sided on the border.
Plane central_difference(const Plane& plane, Axis axis);

BandDerivatives spatial_derivatives(const FeatureField& ff);

BandDerivatives scale_derivatives_analytic(const CchsField& cchs, const CchsScaleDerivatives& dA,
                                           const ColorVector& nu);

/// dsc/dx, d|bi|/dx, dtheta/dx built only from scale derivatives:
/// dsc = B_j, d|bi| = C_j, dtheta = D_j.
BandDerivatives spatial_from_scale(const ColorImage& img, const CchsField& cchs,
                                   const CchsScaleDerivatives& dA, const ColorVector& nu);

/// dsc/dy, d|bi|/dy, dtheta/dy built only from spatial central differences
/// of the A planes and the per-channel conjugates.
BandDerivatives scale_from_spatial(const ColorImage& img, const CchsField& cchs,
                                   const ColorVector& nu);

/// Derivative of (sc, |bi|, theta) along one direction at one pixel, given the
/// sample A and its directional derivative dA. Uses theta = atan2(|bi|, |sc|).
struct PixelDifferential {
  double dsc = 0.0;
  double dbi = 0.0;
  double dtheta = 0.0;
};
PixelDifferential pixel_differential(const CchsSample& a, const CchsSample& da,
                                     const ColorVector& nu, double mask_threshold);

}  // namespace cchs
