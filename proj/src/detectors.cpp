#include "cchs/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cchs/error.hpp"
#include "cchs/parallel.hpp"

namespace cchs {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_half_turn(double angle) {
  double a = std::fmod(angle, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;
  return a;
}

// Direction of steepest magnitude change from central differences, NaN when flat.
double gradient_direction(const Plane& m, int r, int c) {
  const double gx = 0.5 * (m.clamped(r, c + 1) - m.clamped(r, c - 1));
  const double gy = 0.5 * (m.clamped(r + 1, c) - m.clamped(r - 1, c));
  const double norm = std::hypot(gx, gy);
  if (norm <= 1e-9 * std::abs(m(r, c)) || norm <= std::numeric_limits<double>::min()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::atan2(gy, gx);
}

bool directional_maximum(const Plane& m, int r, int c, double angle, double radius) {
  const double value = m(r, c);
  const double dc = radius * std::cos(angle);
  const double dr = radius * std::sin(angle);
  const double ahead = m.bilinear(r + dr, c + dc);
  const double behind = m.bilinear(r - dr, c - dc);
  return value >= ahead && value >= behind && value > std::min(ahead, behind);
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::kChed:
      return "ched";
    case Method::kMched:
      return "mched";
    case Method::kMased1:
      return "mased1";
    case Method::kMased2:
      return "mased2";
    case Method::kMased3:
      return "mased3";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::kChed, Method::kMched, Method::kMased1, Method::kMased2,
                   Method::kMased3}) {
    if (name == to_string(m)) return m;
  }
  throw ParameterError("unknown method '" + name + "'");
}

ScalePair default_scales(Method method) {
  return method == Method::kMched ? ScalePair(8.0, 8.0) : ScalePair(2.0, 2.0);
}

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(std::count(edges_.begin(), edges_.end(), std::uint8_t{1}));
}

Plane EdgeMap::to_plane() const {
  Plane p(width_, height_);
  for (std::size_t i = 0; i < edges_.size(); ++i) p.values()[i] = edges_[i] ? 1.0 : 0.0;
  return p;
}

EdgeMap EdgeMap::from_plane(const Plane& plane) {
  EdgeMap e(plane.width(), plane.height());
  for (std::size_t i = 0; i < plane.size(); ++i) e.edges_[i] = plane.values()[i] > 0.5 ? 1 : 0;
  return e;
}

Metric2x2 metric_2x2(const BandDerivatives& d) {
  const int w = d.dsc[0].width();
  const int h = d.dsc[0].height();
  Metric2x2 g{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (std::size_t i = 0; i < g.g11.size(); ++i) {
    const double s1 = d.dsc[0].values()[i];
    const double s2 = d.dsc[1].values()[i];
    const double t1 = d.dtheta[0].values()[i];
    const double t2 = d.dtheta[1].values()[i];
    g.g11.values()[i] = s1 * s1 + t1 * t1;
    g.g12.values()[i] = s1 * s2 + t1 * t2;
    g.g22.values()[i] = s2 * s2 + t2 * t2;
  }
  return g;
}

LambdaPlus lambda_plus(double g11, double g12, double g22) {
  const double diff = g11 - g22;
  LambdaPlus out;
  out.lambda = 0.5 * (g11 + g22 + std::sqrt(diff * diff + 4.0 * g12 * g12));
  out.angle = wrap_half_turn(0.5 * std::atan2(2.0 * g12, diff));
  return out;
}

GradientMap eigen_gradient(const Metric2x2& metric) {
  const int w = metric.g11.width();
  const int h = metric.g11.height();
  GradientMap gm{Plane(w, h), Plane(w, h)};
  for (std::size_t i = 0; i < gm.magnitude.size(); ++i) {
    const LambdaPlus lp =
        lambda_plus(metric.g11.values()[i], metric.g12.values()[i], metric.g22.values()[i]);
    gm.magnitude.values()[i] = std::max(0.0, lp.lambda);
    gm.direction->values()[i] = lp.angle;
  }
  return gm;
}

Matrix4 gram_matrix(const DerivativeBundle& bundle, int row, int col) {
  std::array<double, 4> s{};
  std::array<double, 4> t{};
  for (std::size_t k = 0; k < 4; ++k) {
    s[k] = bundle.dsc[k](row, col);
    t[k] = bundle.dtheta[k](row, col);
  }
  Matrix4 m{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m[i * 4 + j] = s[i] * s[j] + t[i] * t[j];
  }
  return m;
}

SymmetricEigen4 jacobi_eigen4(const Matrix4& m, double tolerance, int max_sweeps) {
  double a[4][4];
  double v[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  double frobenius = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      a[i][j] = m[static_cast<std::size_t>(i * 4 + j)];
      frobenius += a[i][j] * a[i][j];
    }
  }
  frobenius = std::sqrt(frobenius);
  SymmetricEigen4 out{};
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
    }
    if (std::sqrt(off) <= tolerance * frobenius || off == 0.0) break;
    out.sweeps = sweep + 1;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 4; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
  for (std::size_t k = 0; k < 4; ++k) {
    const int col = order[k];
    out.values[k] = a[col][col];
    for (std::size_t r = 0; r < 4; ++r) out.vectors[k][r] = v[r][col];
  }
  return out;
}

GradientMap gram_trace_gradient(const DerivativeBundle& bundle, bool want_direction) {
  const int w = bundle.width();
  const int h = bundle.height();
  GradientMap gm{Plane(w, h), std::nullopt};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double trace = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        const double s = bundle.dsc[k](r, c);
        const double t = bundle.dtheta[k](r, c);
        trace += s * s + t * t;
      }
      gm.magnitude(r, c) = trace;
    }
  }
  if (!want_direction) return gm;
  Plane direction(w, h);
  parallel_for(h, [&](int r) {
    for (int c = 0; c < w; ++c) {
      double angle = std::numeric_limits<double>::quiet_NaN();
      if (gm.magnitude(r, c) > kMagnitudeFloor) {
        const SymmetricEigen4 eig = jacobi_eigen4(gram_matrix(bundle, r, c));
        const double vx = eig.vectors[0][0];
        const double vy = eig.vectors[0][1];
        if (std::hypot(vx, vy) >= 1e-6) {
          angle = std::atan2(vy, vx);
        } else {
          angle = gradient_direction(gm.magnitude, r, c);
        }
      }
      direction(r, c) = angle;
    }
  });
  gm.direction = std::move(direction);
  return gm;
}

FeatureStack feature_stack(const ColorImage& img, const ColorVector& nu, const ScalePair& scales) {
  CchsField cchs = cchs_transform(img, scales);
  CchsScaleDerivatives dA = cchs_scale_derivatives(img, scales);
  FeatureField ff = feature_field(cchs, nu);
  return FeatureStack{std::move(cchs), std::move(dA), std::move(ff)};
}

DerivativeBundle mased_bundle(int variant, const ColorImage& img, const FeatureStack& stack) {
  const ColorVector& nu = stack.features.nu;
  switch (variant) {
    case 1:
      return DerivativeBundle::combine(spatial_derivatives(stack.features),
                                       scale_derivatives_analytic(stack.cchs, stack.dA, nu));
    case 2:
      return DerivativeBundle::combine(spatial_from_scale(img, stack.cchs, stack.dA, nu),
                                       scale_derivatives_analytic(stack.cchs, stack.dA, nu));
    case 3:
      return DerivativeBundle::combine(spatial_derivatives(stack.features),
                                       scale_from_spatial(img, stack.cchs, nu));
    default:
      throw ParameterError("MaSED variant must be 1, 2 or 3");
  }
}

GradientMap ched(const FeatureStack& stack) {
  return eigen_gradient(metric_2x2(spatial_derivatives(stack.features)));
}

GradientMap mched(const ColorImage& img, const FeatureStack& stack) {
  return eigen_gradient(
      metric_2x2(spatial_from_scale(img, stack.cchs, stack.dA, stack.features.nu)));
}

GradientMap mased(int variant, const ColorImage& img, const FeatureStack& stack) {
  return gram_trace_gradient(mased_bundle(variant, img, stack));
}

GradientMap gradient_map(const ColorImage& img, const ColorVector& nu, Method method,
                         const ScalePair& scales) {
  const FeatureStack stack = feature_stack(img, nu, scales);
  switch (method) {
    case Method::kChed:
      return ched(stack);
    case Method::kMched:
      return mched(img, stack);
    case Method::kMased1:
      return mased(1, img, stack);
    case Method::kMased2:
      return mased(2, img, stack);
    case Method::kMased3:
      return mased(3, img, stack);
  }
  throw ParameterError("unknown method");
}

double percentile_threshold(const Plane& magnitude, double percentile) {
  if (!(percentile >= 0.0 && percentile <= 100.0)) {
    throw ParameterError("percentile must lie in [0, 100]");
  }
  std::vector<double> candidates;
  for (double v : magnitude.values()) {
    if (v > kMagnitudeFloor) candidates.push_back(v);
  }
  if (candidates.empty()) return std::numeric_limits<double>::infinity();
  const auto rank = static_cast<std::size_t>(
      std::floor(percentile / 100.0 * static_cast<double>(candidates.size() - 1)));
  std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(rank),
                   candidates.end());
  return candidates[rank];
}

EdgeMap nms(const GradientMap& gm, const NmsOptions& options) {
  if (!(options.radius > 0.0)) throw ParameterError("suppression radius must be positive");
  const Plane& m = gm.magnitude;
  if (gm.direction && !gm.direction->same_shape(m)) {
    throw ParameterError("direction plane does not match magnitude plane");
  }
  const double threshold =
      options.threshold ? *options.threshold : percentile_threshold(m, options.percentile);
  EdgeMap edges(m.width(), m.height());
  edges.radius = options.radius;
  edges.threshold = threshold;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      const double value = m(r, c);
      if (!(value > kMagnitudeFloor) || value < threshold) continue;
      double angle = gm.direction ? (*gm.direction)(r, c)
                                  : std::numeric_limits<double>::quiet_NaN();
      if (std::isnan(angle)) angle = gradient_direction(m, r, c);
      bool keep = false;
      if (std::isnan(angle)) {
        for (int k = 0; k < 4 && !keep; ++k) {
          keep = directional_maximum(m, r, c, k * kPi / 4.0, options.radius);
        }
      } else {
        keep = directional_maximum(m, r, c, angle, options.radius);
      }
      edges.set(r, c, keep);
    }
  }
  return edges;
}

Detection detect(const ColorImage& img, const ColorVector& nu, const DetectOptions& options) {
  const ScalePair scales = options.scales.value_or(default_scales(options.method));
  GradientMap gm = gradient_map(img, nu, options.method, scales);
  EdgeMap edges = nms(gm, options.nms);
  return Detection{std::move(gm), std::move(edges), scales};
}

}  // namespace cchs
