/**
 * @file scale_space.hpp
 * @brief Poisson / conjugate-Poisson scale space and the CCHS planes A1..A6.
 *
 * Filtering is separable and done per line in the frequency domain with the
 * exact transfer functions of the continuous kernels:
 *
 *   P_y(x)  = y / (pi (y^2 + x^2))   ->  exp(-y|w|)
 *   Q_y(x)  = x / (pi (y^2 + x^2))   ->  -i sgn(w) exp(-y|w|)
 *
 * so Q maps cos(w0 x) to exp(-y w0) sin(w0 x). The y-derivative kinds multiply
 * the transfer by -|w|. Each line is extended by half-sample symmetric
 * mirroring to twice its length before the transform and cropped afterwards.
 */
#pragma once

#include <array>
#include <complex>

#include "cchs/image.hpp"
#include "cchs/plane.hpp"

namespace cchs {

/// Poisson kernel y / (pi (y^2 + x^2)). Throws ParameterError for y <= 0.
double poisson_kernel_1d(double y, double x);
/// Conjugate Poisson kernel x / (pi (y^2 + x^2)). Throws ParameterError for y <= 0.
double conj_poisson_kernel_1d(double y, double x);

enum class FilterKind {
  kPoisson,       ///< P
  kConjugate,     ///< Q
  kPoissonDy,     ///< dP/dy
  kConjugateDy,   ///< dQ/dy
};

/// Frequency response of a 1D filter kind at scale y and angular frequency w.
std::complex<double> transfer(FilterKind kind, double y, double omega);

/// Applies kind_x1 along each row (x1) and kind_x2 along each column (x2).
Plane filter_separable(const Plane& plane, FilterKind kind_x1, FilterKind kind_x2,
                       const ScalePair& scales);

/// The six CCHS planes at one scale pair; a[0] is A1.
struct CchsField {
  ScalePair scales;
  std::array<Plane, 6> a;

  int width() const { return a[0].width(); }
  int height() const { return a[0].height(); }
  /// A1 + A2 + A3.
  Plane color_sum() const;
};

/// dA_k/dy1 and dA_k/dy2 for k = 1..6, evaluated analytically.
struct CchsScaleDerivatives {
  std::array<Plane, 6> dy1;
  std::array<Plane, 6> dy2;
};

/// Per-channel conjugate planes A4^i = f_i * K^QP, A5^i = f_i * K^PQ, A6^i = f_i * K^QQ.
/// Summing over i reproduces A4, A5, A6.
struct ChannelConjugates {
  std::array<Plane, 3> a4;
  std::array<Plane, 3> a5;
  std::array<Plane, 3> a6;
};

/// dA4^i/dy1 and dA5^i/dy2, the quantities entering the scale-substituted
/// spatial derivative of the scalar part.
struct ChannelConjugateScaleDerivatives {
  std::array<Plane, 3> da4_dy1;
  std::array<Plane, 3> da5_dy2;
};

CchsField cchs_transform(const ColorImage& img, const ScalePair& scales);
CchsScaleDerivatives cchs_scale_derivatives(const ColorImage& img, const ScalePair& scales);
ChannelConjugates channel_conjugates(const ColorImage& img, const ScalePair& scales);
ChannelConjugateScaleDerivatives channel_conjugate_scale_derivatives(const ColorImage& img,
                                                                     const ScalePair& scales);

}  // namespace cchs
