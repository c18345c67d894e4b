#include "cchs/features.hpp"

#include <cmath>

#include "cchs/error.hpp"
#include "cchs/parallel.hpp"

namespace cchs {

namespace {

CchsSample sample_at(const std::array<Plane, 6>& planes, std::size_t i) {
  CchsSample s;
  for (std::size_t k = 0; k < 6; ++k) s[k] = planes[k].values()[i];
  return s;
}

double max_amplitude(const CchsField& cchs, const ColorVector& nu) {
  double m = 0.0;
  for (std::size_t i = 0; i < cchs.a[0].size(); ++i) {
    m = std::max(m, local_amplitude(clifford_color_product(sample_at(cchs.a, i), nu)));
  }
  return m;
}

// Evaluates the chain rule at every pixel for two directions whose dA samples
// are supplied by `directional(i, axis)`.
template <typename Directional>
BandDerivatives chain_rule(const CchsField& cchs, const ColorVector& nu, Directional directional) {
  const int w = cchs.width();
  const int h = cchs.height();
  BandDerivatives out;
  for (std::size_t j = 0; j < 2; ++j) {
    out.dsc[j] = Plane(w, h);
    out.dbi[j] = Plane(w, h);
    out.dtheta[j] = Plane(w, h);
  }
  const double eps = kMaskRelativeThreshold * max_amplitude(cchs, nu);
  parallel_for(h, [&](int r) {
    for (int c = 0; c < w; ++c) {
      const auto i = static_cast<std::size_t>(r) * static_cast<std::size_t>(w) +
                     static_cast<std::size_t>(c);
      const CchsSample a = sample_at(cchs.a, i);
      for (std::size_t j = 0; j < 2; ++j) {
        const PixelDifferential d = pixel_differential(a, directional(i, j), nu, eps);
        out.dsc[j].values()[i] = d.dsc;
        out.dbi[j].values()[i] = d.dbi;
        out.dtheta[j].values()[i] = d.dtheta;
      }
    }
  });
  return out;
}

}  // namespace

DerivativeBundle DerivativeBundle::combine(const BandDerivatives& spatial,
                                           const BandDerivatives& scale) {
  return DerivativeBundle{{spatial.dsc[0], spatial.dsc[1], scale.dsc[0], scale.dsc[1]},
                          {spatial.dtheta[0], spatial.dtheta[1], scale.dtheta[0], scale.dtheta[1]}};
}

PixelDifferential pixel_differential(const CchsSample& a, const CchsSample& da,
                                     const ColorVector& nu, double mask_threshold) {
  const CliffordProduct p = clifford_color_product(a, nu);
  const double bi = p.bi_norm();
  const double m2 = p.sc * p.sc + bi * bi;
  const double m = std::sqrt(m2);
  PixelDifferential d;
  if (m <= mask_threshold) return d;
  // The product is linear in the sample, so the product of dA is the derivative of the product.
  const CliffordProduct dp = clifford_color_product(da, nu);
  d.dsc = dp.sc;
  if (bi <= mask_threshold) return d;
  double dot = 0.0;
  for (std::size_t k = 0; k < kBladeCount; ++k) dot += p.bi[k] * dp.bi[k];
  d.dbi = dot / bi;
  const double sign = p.sc > 0.0 ? 1.0 : (p.sc < 0.0 ? -1.0 : 0.0);
  d.dtheta = (d.dbi * std::abs(p.sc) - sign * d.dsc * bi) / m2;
  return d;
}

FeatureField feature_field(const CchsField& cchs, const ColorVector& nu) {
  const int w = cchs.width();
  const int h = cchs.height();
  FeatureField ff{nu, cchs.scales, Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
  for (std::size_t i = 0; i < ff.sc.size(); ++i) {
    const CliffordProduct p = clifford_color_product(sample_at(cchs.a, i), nu);
    const double bi = p.bi_norm();
    ff.sc.values()[i] = p.sc;
    ff.bi_norm.values()[i] = bi;
    ff.theta.values()[i] = phase_from_parts(p.sc, bi);
    ff.amplitude.values()[i] = std::sqrt(p.sc * p.sc + bi * bi);
  }
  return ff;
}

Plane central_difference(const Plane& plane, Axis axis) {
  const int w = plane.width();
  const int h = plane.height();
  Plane out(w, h);
  if (axis == Axis::kX1) {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        if (w == 1) continue;
        if (c == 0) {
          out(r, c) = plane(r, 1) - plane(r, 0);
        } else if (c == w - 1) {
          out(r, c) = plane(r, c) - plane(r, c - 1);
        } else {
          out(r, c) = 0.5 * (plane(r, c + 1) - plane(r, c - 1));
        }
      }
    }
  } else if (axis == Axis::kX2) {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        if (h == 1) continue;
        if (r == 0) {
          out(r, c) = plane(1, c) - plane(0, c);
        } else if (r == h - 1) {
          out(r, c) = plane(r, c) - plane(r - 1, c);
        } else {
          out(r, c) = 0.5 * (plane(r + 1, c) - plane(r - 1, c));
        }
      }
    }
  } else {
    throw ParameterError("central differences are only defined along x1 and x2");
  }
  return out;
}

BandDerivatives spatial_derivatives(const FeatureField& ff) {
  BandDerivatives out;
  const Axis axes[2] = {Axis::kX1, Axis::kX2};
  const double eps = ff.mask_threshold();
  for (std::size_t j = 0; j < 2; ++j) {
    out.dsc[j] = central_difference(ff.sc, axes[j]);
    out.dbi[j] = central_difference(ff.bi_norm, axes[j]);
    out.dtheta[j] = central_difference(ff.theta, axes[j]);
    for (std::size_t i = 0; i < ff.amplitude.size(); ++i) {
      if (ff.amplitude.values()[i] <= eps) {
        out.dsc[j].values()[i] = 0.0;
        out.dbi[j].values()[i] = 0.0;
        out.dtheta[j].values()[i] = 0.0;
      }
    }
  }
  return out;
}

BandDerivatives scale_derivatives_analytic(const CchsField& cchs, const CchsScaleDerivatives& dA,
                                           const ColorVector& nu) {
  return chain_rule(cchs, nu, [&](std::size_t i, std::size_t axis) {
    return sample_at(axis == 0 ? dA.dy1 : dA.dy2, i);
  });
}

BandDerivatives spatial_from_scale(const ColorImage& img, const CchsField& cchs,
                                   const CchsScaleDerivatives& dA, const ColorVector& nu) {
  const ChannelConjugateScaleDerivatives per_channel =
      channel_conjugate_scale_derivatives(img, cchs.scales);
  return chain_rule(cchs, nu, [&](std::size_t i, std::size_t axis) {
    auto v = [i](const Plane& p) { return p.values()[i]; };
    if (axis == 0) {
      // dA_i/dx1 = dA4^i/dy1, dA4/dx1 = -d(A1+A2+A3)/dy1, dA5/dx1 = dA6/dy1, dA6/dx1 = -dA5/dy1
      const double dsum = v(dA.dy1[0]) + v(dA.dy1[1]) + v(dA.dy1[2]);
      return CchsSample{v(per_channel.da4_dy1[0]), v(per_channel.da4_dy1[1]),
                        v(per_channel.da4_dy1[2]), -dsum, v(dA.dy1[5]), -v(dA.dy1[4])};
    }
    // dA_i/dx2 = dA5^i/dy2, dA4/dx2 = dA6/dy2, dA5/dx2 = -d(A1+A2+A3)/dy2, dA6/dx2 = -dA4/dy2
    const double dsum = v(dA.dy2[0]) + v(dA.dy2[1]) + v(dA.dy2[2]);
    return CchsSample{v(per_channel.da5_dy2[0]), v(per_channel.da5_dy2[1]),
                      v(per_channel.da5_dy2[2]), v(dA.dy2[5]), -dsum, -v(dA.dy2[3])};
  });
}

BandDerivatives scale_from_spatial(const ColorImage& img, const CchsField& cchs,
                                   const ColorVector& nu) {
  const ChannelConjugates conj = channel_conjugates(img, cchs.scales);
  const Plane sum = cchs.color_sum();
  std::array<Plane, 3> da4_dx1;
  std::array<Plane, 3> da5_dx2;
  for (std::size_t k = 0; k < 3; ++k) {
    da4_dx1[k] = central_difference(conj.a4[k], Axis::kX1);
    da5_dx2[k] = central_difference(conj.a5[k], Axis::kX2);
  }
  const Plane dsum_dx1 = central_difference(sum, Axis::kX1);
  const Plane dsum_dx2 = central_difference(sum, Axis::kX2);
  const Plane da4_dx2 = central_difference(cchs.a[3], Axis::kX2);
  const Plane da5_dx1 = central_difference(cchs.a[4], Axis::kX1);
  const Plane da6_dx1 = central_difference(cchs.a[5], Axis::kX1);
  const Plane da6_dx2 = central_difference(cchs.a[5], Axis::kX2);
  return chain_rule(cchs, nu, [&](std::size_t i, std::size_t axis) {
    auto v = [i](const Plane& p) { return p.values()[i]; };
    if (axis == 0) {
      // dA_i/dy1 = -dA4^i/dx1, dA4/dy1 = d(A1+A2+A3)/dx1, dA5/dy1 = -dA6/dx1, dA6/dy1 = dA5/dx1
      return CchsSample{-v(da4_dx1[0]), -v(da4_dx1[1]), -v(da4_dx1[2]),
                        v(dsum_dx1),    -v(da6_dx1),    v(da5_dx1)};
    }
    // dA_i/dy2 = -dA5^i/dx2, dA4/dy2 = -dA6/dx2, dA5/dy2 = d(A1+A2+A3)/dx2, dA6/dy2 = dA4/dx2
    return CchsSample{-v(da5_dx2[0]), -v(da5_dx2[1]), -v(da5_dx2[2]),
                      -v(da6_dx2),    v(dsum_dx2),    v(da4_dx2)};
  });
}

}  // namespace cchs
