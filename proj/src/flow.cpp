#include "cchs/flow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "cchs/error.hpp"
#include "cchs/parallel.hpp"

namespace cchs {

namespace {

std::size_t flat(const Plane& p, int r, int c) {
  return static_cast<std::size_t>(r) * static_cast<std::size_t>(p.width()) + static_cast<std::size_t>(c);
}

Plane derivative_x(const Plane& p) {
  Plane out(p.width(), p.height());
  for (int r = 0; r < p.height(); ++r) {
    for (int c = 0; c < p.width(); ++c) {
      const int lo = std::max(c - 1, 0);
      const int hi = std::min(c + 1, p.width() - 1);
      out(r, c) = hi == lo ? 0.0 : (p(r, hi) - p(r, lo)) / (hi - lo);
    }
  }
  return out;
}

Plane derivative_y(const Plane& p) {
  Plane out(p.width(), p.height());
  for (int r = 0; r < p.height(); ++r) {
    const int lo = std::max(r - 1, 0);
    const int hi = std::min(r + 1, p.height() - 1);
    for (int c = 0; c < p.width(); ++c) out(r, c) = hi == lo ? 0.0 : (p(hi, c) - p(lo, c)) / (hi - lo);
  }
  return out;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                         static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) throw IoError("truncated .flo file");
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
}

}  // namespace

FlowField::FlowField(int width, int height)
    : u(width, height), v(width, height),
      valid(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {}

bool FlowField::is_valid(int row, int col) const { return valid[flat(u, row, col)] != 0; }

void FlowField::set_valid(int row, int col, bool on) { valid[flat(u, row, col)] = on ? 1 : 0; }

std::size_t FlowField::valid_count() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

Plane pretreat(const ColorImage& frame, Method method, const ColorVector& nu, const ScalePair& scales) {
  Plane m = gradient_map(frame, nu, method, scales).magnitude;
  const double peak = m.max();
  if (!(peak > kMagnitudeFloor)) return Plane(m.width(), m.height());
  m *= 1.0 / peak;
  return m;
}

FlowField lk_flow(const Plane& p1, const Plane& p2, const LkOptions& options) {
  if (!p1.same_shape(p2)) throw ParameterError("lk_flow needs equally sized frames");
  if (options.window < 3 || options.window % 2 == 0) {
    throw ParameterError("lk_flow window must be odd and at least 3");
  }
  if (options.iterations < 1) throw ParameterError("lk_flow needs at least one iteration");
  if (!p1.all_finite() || !p2.all_finite()) throw NumericalError("lk_flow input is not finite");
  const int w = p1.width();
  const int h = p1.height();
  const int half = options.window / 2;
  const Plane ix = derivative_x(p1);
  const Plane iy = derivative_y(p1);
  FlowField flow(w, h);

  parallel_for(h, [&](int r) {
    const int r0 = std::max(r - half, 0);
    const int r1 = std::min(r + half, h - 1);
    for (int c = 0; c < w; ++c) {
      const int c0 = std::max(c - half, 0);
      const int c1 = std::min(c + half, w - 1);
      double gxx = 0.0;
      double gxy = 0.0;
      double gyy = 0.0;
      for (int rr = r0; rr <= r1; ++rr) {
        for (int cc = c0; cc <= c1; ++cc) {
          const double gx = ix(rr, cc);
          const double gy = iy(rr, cc);
          gxx += gx * gx;
          gxy += gx * gy;
          gyy += gy * gy;
        }
      }
      const double count = static_cast<double>((r1 - r0 + 1) * (c1 - c0 + 1));
      const double mxx = gxx / count;
      const double mxy = gxy / count;
      const double myy = gyy / count;
      const double mean_trace = 0.5 * (mxx + myy);
      const double spread = std::hypot(0.5 * (mxx - myy), mxy);
      if (mean_trace - spread < options.min_eigenvalue) continue;
      const double det = gxx * gyy - gxy * gxy;
      double du = 0.0;
      double dv = 0.0;
      bool ok = true;
      for (int it = 0; it < options.iterations; ++it) {
        double bx = 0.0;
        double by = 0.0;
        for (int rr = r0; rr <= r1; ++rr) {
          for (int cc = c0; cc <= c1; ++cc) {
            const double diff = p1(rr, cc) - p2.bilinear(rr + dv, cc + du);
            bx += ix(rr, cc) * diff;
            by += iy(rr, cc) * diff;
          }
        }
        const double step_u = (gyy * bx - gxy * by) / det;
        const double step_v = (gxx * by - gxy * bx) / det;
        du += step_u;
        dv += step_v;
        if (!std::isfinite(du) || !std::isfinite(dv) || std::hypot(du, dv) > half) {
          ok = false;
          break;
        }
        if (std::hypot(step_u, step_v) < options.tolerance) break;
      }
      if (!ok) continue;
      flow.u(r, c) = du;
      flow.v(r, c) = dv;
      flow.set_valid(r, c, true);
    }
  });
  return flow;
}

FlowField color_flow(const ColorImage& first, const ColorImage& second, const ColorVector& nu,
                     const ColorFlowOptions& options) {
  if (first.width() != second.width() || first.height() != second.height()) {
    throw ParameterError("color_flow needs equally sized frames");
  }
  if (!options.pretreated) return lk_flow(first.luma(), second.luma(), options.lk);
  return lk_flow(pretreat(first, options.method, nu, options.scales),
                 pretreat(second, options.method, nu, options.scales), options.lk);
}

double mean_endpoint_error(const FlowField& flow, double true_u, double true_v,
                           const std::optional<EdgeMap>& region) {
  if (region && (region->width() != flow.width() || region->height() != flow.height())) {
    throw ParameterError("endpoint error region does not match the flow size");
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < flow.height(); ++r) {
    for (int c = 0; c < flow.width(); ++c) {
      if (region && !region->at(r, c)) continue;
      const bool valid = flow.is_valid(r, c);
      const double u = valid ? flow.u(r, c) : 0.0;
      const double v = valid ? flow.v(r, c) : 0.0;
      sum += std::hypot(u - true_u, v - true_v);
      ++n;
    }
  }
  if (n == 0) throw ParameterError("endpoint error region is empty");
  return sum / static_cast<double>(n);
}

double max_flow_norm(const FlowField& flow) {
  double m = 0.0;
  for (int r = 0; r < flow.height(); ++r) {
    for (int c = 0; c < flow.width(); ++c) {
      if (flow.is_valid(r, c)) m = std::max(m, std::hypot(flow.u(r, c), flow.v(r, c)));
    }
  }
  return m;
}

ColorImage flow_to_color(const FlowField& flow, double max_norm) {
  if (max_norm <= 0.0) max_norm = max_flow_norm(flow);
  const int w = flow.width();
  const int h = flow.height();
  Plane red(w, h);
  Plane green(w, h);
  Plane blue(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!flow.is_valid(r, c)) continue;
      const double u = flow.u(r, c);
      const double v = flow.v(r, c);
      const double norm = std::hypot(u, v);
      const double s = max_norm > 0.0 ? std::min(norm / max_norm, 1.0) : 0.0;
      double hue = std::atan2(v, u) / (2.0 * std::numbers::pi);
      if (hue < 0.0) hue += 1.0;
      const double sector = hue * 6.0;
      const int k = static_cast<int>(std::floor(sector)) % 6;
      const double f = sector - std::floor(sector);
      const double p = 1.0 - s;
      const double q = 1.0 - s * f;
      const double t = 1.0 - s * (1.0 - f);
      static constexpr int kPick[6][3] = {{0, 3, 1}, {2, 0, 1}, {1, 0, 3}, {1, 2, 0}, {3, 1, 0}, {0, 1, 2}};
      const double choices[4] = {1.0, p, q, t};
      red(r, c) = choices[kPick[k][0]];
      green(r, c) = choices[kPick[k][1]];
      blue(r, c) = choices[kPick[k][2]];
    }
  }
  return ColorImage(std::move(red), std::move(green), std::move(blue), ColorSpace::kRawRgb);
}

FlowField color_to_flow(const ColorImage& img, double max_norm) {
  if (!(max_norm > 0.0)) throw ParameterError("color_to_flow needs a positive max_norm");
  FlowField flow(img.width(), img.height());
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      const double rc = img.channel(0)(r, c);
      const double gc = img.channel(1)(r, c);
      const double bc = img.channel(2)(r, c);
      const double hi = std::max({rc, gc, bc});
      const double lo = std::min({rc, gc, bc});
      if (hi < 0.5) continue;
      flow.set_valid(r, c, true);
      const double s = hi - lo;
      if (s <= 0.0) continue;
      double hue = 0.0;
      if (hi == rc) {
        hue = std::fmod((gc - bc) / s, 6.0);
      } else if (hi == gc) {
        hue = (bc - rc) / s + 2.0;
      } else {
        hue = (rc - gc) / s + 4.0;
      }
      const double angle = hue / 6.0 * 2.0 * std::numbers::pi;
      const double norm = s * max_norm;
      flow.u(r, c) = norm * std::cos(angle);
      flow.v(r, c) = norm * std::sin(angle);
    }
  }
  return flow;
}

void write_flo(const FlowField& flow, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write("PIEH", 4);
  put_u32(out, static_cast<std::uint32_t>(flow.width()));
  put_u32(out, static_cast<std::uint32_t>(flow.height()));
  for (int r = 0; r < flow.height(); ++r) {
    for (int c = 0; c < flow.width(); ++c) {
      const bool valid = flow.is_valid(r, c);
      put_u32(out, std::bit_cast<std::uint32_t>(valid ? static_cast<float>(flow.u(r, c)) : kFloInvalid));
      put_u32(out, std::bit_cast<std::uint32_t>(valid ? static_cast<float>(flow.v(r, c)) : kFloInvalid));
    }
  }
  if (!out) throw IoError("failed writing " + path);
}

FlowField read_flo(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  if (std::bit_cast<float>(get_u32(in)) != kFloMagic) throw IoError(path + " is not a .flo file");
  const auto w = static_cast<std::int32_t>(get_u32(in));
  const auto h = static_cast<std::int32_t>(get_u32(in));
  if (w <= 0 || h <= 0 || w > (1 << 16) || h > (1 << 16)) throw IoError(path + " has invalid dimensions");
  FlowField flow(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const float u = std::bit_cast<float>(get_u32(in));
      const float v = std::bit_cast<float>(get_u32(in));
      if (std::abs(u) >= kFloInvalid * 0.5F || std::abs(v) >= kFloInvalid * 0.5F) continue;
      flow.u(r, c) = u;
      flow.v(r, c) = v;
      flow.set_valid(r, c, true);
    }
  }
  return flow;
}

}  // namespace cchs
