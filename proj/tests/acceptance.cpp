// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cchs/detectors.hpp"
#include "cchs/features.hpp"
#include "cchs/flow.hpp"
#include "cchs/image_io.hpp"
#include "cchs/metrics.hpp"
#include "cchs/noise.hpp"
#include "cchs/scale_space.hpp"
#include "cchs/synth.hpp"

namespace fs = std::filesystem;
using namespace cchs;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// max |a - b| over the interior divided by max |b| over the interior.
double relative_interior_error(const Plane& a, const Plane& b, int margin) {
  double diff = 0.0;
  double ref = 0.0;
  for (int r = margin; r < a.height() - margin; ++r) {
    for (int c = margin; c < a.width() - margin; ++c) {
      diff = std::max(diff, std::abs(a(r, c) - b(r, c)));
      ref = std::max(ref, std::abs(b(r, c)));
    }
  }
  return diff / ref;
}

// max |a - b| over the interior divided by (max b - min b) over the interior.
double range_interior_error(const Plane& a, const Plane& b, int margin) {
  double diff = 0.0;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int r = margin; r < a.height() - margin; ++r) {
    for (int c = margin; c < a.width() - margin; ++c) {
      diff = std::max(diff, std::abs(a(r, c) - b(r, c)));
      lo = std::min(lo, b(r, c));
      hi = std::max(hi, b(r, c));
    }
  }
  return diff / (hi - lo);
}

// Sum of separable cosines on centered coordinates with frequencies 2 pi m / n,
// which the half-sample mirror extension reproduces exactly.
ColorImage band_limited_image(int n, double base) {
  const double c0 = (n - 1) / 2.0;
  const double w = 2.0 * kPi / n;
  struct Mode {
    int mx;
    int my;
    std::array<double, 3> amp;
  };
  const std::array<Mode, 4> modes{{{1, 1, {0.20, 0.05, 0.10}},
                                   {2, 1, {0.05, 0.15, 0.04}},
                                   {1, 3, {0.08, 0.06, 0.12}},
                                   {3, 2, {0.03, 0.07, 0.05}}}};
  std::array<Plane, 3> ch{Plane(n, n, base), Plane(n, n, base), Plane(n, n, base)};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (const Mode& m : modes) {
        const double v = std::cos(w * m.mx * (c - c0)) * std::cos(w * m.my * (r - c0));
        for (int i = 0; i < 3; ++i) ch[static_cast<std::size_t>(i)](r, c) += m.amp[static_cast<std::size_t>(i)] * v;
      }
    }
  }
  return ColorImage(ch[0], ch[1], ch[2], ColorSpace::kRawRgb);
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ColorImage img = band_limited_image(128, 0.5);
  const ScalePair s(2.0, 2.0);
  const CchsField a = cchs_transform(img, s);
  const CchsScaleDerivatives d = cchs_scale_derivatives(img, s);
  const Plane sum = a.color_sum();
  const Plane sum_dy1 = d.dy1[0] + d.dy1[1] + d.dy1[2];
  const Plane sum_dy2 = d.dy2[0] + d.dy2[1] + d.dy2[2];
  auto dx1 = [](const Plane& p) { return central_difference(p, Axis::kX1); };
  auto dx2 = [](const Plane& p) { return central_difference(p, Axis::kX2); };
  const std::array<std::pair<Plane, Plane>, 8> relations{{
      {dx1(sum), d.dy1[3]},
      {dx2(sum), d.dy2[4]},
      {dx1(a.a[3]), sum_dy1 * -1.0},
      {dx2(a.a[3]), d.dy2[5]},
      {dx1(a.a[4]), d.dy1[5]},
      {dx2(a.a[4]), sum_dy2 * -1.0},
      {dx1(a.a[5]), d.dy1[4] * -1.0},
      {dx2(a.a[5]), d.dy2[3] * -1.0},
  }};
  double worst = 0.0;
  for (const auto& [spatial, scale] : relations) worst = std::max(worst, range_interior_error(spatial, scale, 4));
  const double elapsed = seconds_since(t0);
  return {worst < 1e-2 && elapsed < 5.0,
          fmt("8 relations, worst residual/range %.3g (< 1e-2), %.2f s (< 5 s)", worst, elapsed)};
}

// Hilbert transform of a periodic sequence by a direct DFT.
std::vector<double> naive_hilbert(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (int j = 0; j < n; ++j) s += f[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * kPi * k * j / n);
    const int freq = k <= n / 2 ? k : k - n;
    const double sign = (freq > 0) - (freq < 0);
    spectrum[static_cast<std::size_t>(k)] = (k == n / 2) ? 0.0 : s * std::complex<double>(0.0, -sign);
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::complex<double> s = 0.0;
    for (int k = 0; k < n; ++k) s += spectrum[static_cast<std::size_t>(k)] * std::polar(1.0, 2.0 * kPi * k * j / n);
    out[static_cast<std::size_t>(j)] = s.real() / n;
  }
  return out;
}

Outcome criterion2() {
  // P / Q on cos(w0 x).
  const int n = 128;
  const double c0 = (n - 1) / 2.0;
  const double w0 = 2.0 * kPi * 4 / n;
  const double y = 2.0;
  Plane wave(n, 16);
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < n; ++c) wave(r, c) = std::cos(w0 * (c - c0));
  }
  const Plane p = filter_separable(wave, FilterKind::kPoisson, FilterKind::kPoisson, ScalePair(y, y));
  const Plane q = filter_separable(wave, FilterKind::kConjugate, FilterKind::kPoisson, ScalePair(y, y));
  double cos_err = 0.0;
  for (int r = 2; r < 14; ++r) {
    for (int c = 4; c < n - 4; ++c) {
      const double damp = std::exp(-y * w0);
      cos_err = std::max(cos_err, std::abs(p(r, c) - damp * std::cos(w0 * (c - c0))));
      cos_err = std::max(cos_err, std::abs(q(r, c) - damp * std::sin(w0 * (c - c0))));
    }
  }

  // Semigroup on a random image: P_a P_b = P_(a+b) and P_a then Q_b = Q_(a+b).
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Plane noise(96, 80);
  for (double& v : noise.values()) v = uni(rng);
  const ScalePair s1(1.0, 1.5);
  const ScalePair s2(2.0, 0.5);
  const ScalePair s12(3.0, 2.0);
  const Plane pp = filter_separable(filter_separable(noise, FilterKind::kPoisson, FilterKind::kPoisson, s1),
                                    FilterKind::kPoisson, FilterKind::kPoisson, s2);
  const Plane pp_ref = filter_separable(noise, FilterKind::kPoisson, FilterKind::kPoisson, s12);
  const Plane pq = filter_separable(filter_separable(noise, FilterKind::kPoisson, FilterKind::kPoisson, s1),
                                    FilterKind::kConjugate, FilterKind::kConjugate, s2);
  const Plane pq_ref = filter_separable(noise, FilterKind::kConjugate, FilterKind::kConjugate, s12);
  double semigroup_err = 0.0;
  for (std::size_t i = 0; i < pp.size(); ++i) {
    semigroup_err = std::max(semigroup_err, std::abs(pp.values()[i] - pp_ref.values()[i]));
    semigroup_err = std::max(semigroup_err, std::abs(pq.values()[i] - pq_ref.values()[i]));
  }

  // Hilbert limit at y = 0.05 against a direct DFT.
  const int wide = 1024;
  const double cw = (wide - 1) / 2.0;
  std::vector<double> line(static_cast<std::size_t>(wide));
  Plane row(wide, 8);
  for (int c = 0; c < wide; ++c) {
    const double x = c - cw;
    line[static_cast<std::size_t>(c)] = std::cos(2.0 * kPi * x / wide) + 0.5 * std::cos(4.0 * kPi * x / wide);
    for (int r = 0; r < 8; ++r) row(r, c) = line[static_cast<std::size_t>(c)];
  }
  const std::vector<double> hilbert = naive_hilbert(line);
  const Plane qh = filter_separable(row, FilterKind::kConjugate, FilterKind::kPoisson, ScalePair(0.05, 0.05));
  double hdiff = 0.0;
  double href = 0.0;
  for (int c = 8; c < wide - 8; ++c) {
    hdiff = std::max(hdiff, std::abs(qh(4, c) - hilbert[static_cast<std::size_t>(c)]));
    href = std::max(href, std::abs(hilbert[static_cast<std::size_t>(c)]));
  }
  const double hilbert_err = hdiff / href;
  const bool pass = cos_err < 1e-4 && semigroup_err < 1e-5 && hilbert_err < 1e-3;
  return {pass, fmt("cos/sin err %.2g (< 1e-4), semigroup err %.2g (< 1e-5), Hilbert rel err %.2g (< 1e-3)",
                    cos_err, semigroup_err, hilbert_err)};
}

Outcome criterion3() {
  const ColorImage img = band_limited_image(128, 0.5);
  const ColorVector nu(0.9, 0.4, 0.2);
  const ScalePair s(8.0, 8.0);
  const FeatureStack stack = feature_stack(img, nu, s);
  const BandDerivatives b = spatial_from_scale(img, stack.cchs, stack.dA, nu);
  const double b1 = relative_interior_error(b.dsc[0], central_difference(stack.features.sc, Axis::kX1), 4);
  const double b2 = relative_interior_error(b.dsc[1], central_difference(stack.features.sc, Axis::kX2), 4);

  const BandDerivatives analytic = scale_derivatives_analytic(stack.cchs, stack.dA, nu);
  const double h = 1e-3;
  auto theta_at = [&](double y1, double y2) {
    return feature_field(cchs_transform(img, ScalePair(y1, y2)), nu).theta;
  };
  const Plane fd1 = (theta_at(8.0 + h, 8.0) - theta_at(8.0 - h, 8.0)) * (1.0 / (2.0 * h));
  const Plane fd2 = (theta_at(8.0, 8.0 + h) - theta_at(8.0, 8.0 - h)) * (1.0 / (2.0 * h));
  const double t1 = relative_interior_error(analytic.dtheta[0], fd1, 4);
  const double t2 = relative_interior_error(analytic.dtheta[1], fd2, 4);
  const double b_worst = std::max(b1, b2);
  const double t_worst = std::max(t1, t2);
  return {b_worst < 2e-2 && t_worst < 1e-3,
          fmt("B1/B2 vs central differences %.3g (< 2e-2), dtheta/dy vs scale differences %.3g (< 1e-3)",
              b_worst, t_worst)};
}

// Larger root of the characteristic polynomial, written independently of lambda_plus.
double characteristic_root(double g11, double g12, double g22) {
  const double half_trace = 0.5 * (g11 + g22);
  const double det = g11 * g22 - g12 * g12;
  return half_trace + std::sqrt(half_trace * half_trace - det);
}

Outcome criterion4() {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int side = 100;
  DerivativeBundle bundle;
  for (int k = 0; k < 4; ++k) {
    bundle.dsc[static_cast<std::size_t>(k)] = Plane(side, side);
    bundle.dtheta[static_cast<std::size_t>(k)] = Plane(side, side);
    for (double& v : bundle.dsc[static_cast<std::size_t>(k)].values()) v = gauss(rng);
    for (double& v : bundle.dtheta[static_cast<std::size_t>(k)].values()) v = gauss(rng);
  }
  double trace_err = 0.0;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const Matrix4 g = gram_matrix(bundle, r, c);
      const SymmetricEigen4 e = jacobi_eigen4(g);
      const double w = e.values[0] + e.values[1] + e.values[2] + e.values[3];
      const double trace = g[0] + g[5] + g[10] + g[15];
      trace_err = std::max(trace_err, std::abs(w - trace) / std::abs(trace));
    }
  }

  const ColorImage img = band_limited_image(64, 0.5);
  const ColorVector nu(1.0, 0.3, 0.2);
  const FeatureStack stack = feature_stack(img, nu, ScalePair(2.0, 2.0));
  const DerivativeBundle i1 = mased_bundle(1, img, stack);
  double rank_ratio = 0.0;
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      const SymmetricEigen4 e = jacobi_eigen4(gram_matrix(i1, r, c));
      if (e.values[0] <= 0.0) continue;
      rank_ratio = std::max(rank_ratio, std::max(std::abs(e.values[2]), std::abs(e.values[3])) / e.values[0]);
    }
  }

  const bool diag_ok = lambda_plus(4.0, 0.0, 1.0).lambda == characteristic_root(4.0, 0.0, 1.0) &&
                       lambda_plus(4.0, 0.0, 1.0).lambda == 4.0;
  const bool ones_ok = lambda_plus(1.0, 1.0, 1.0).lambda == characteristic_root(1.0, 1.0, 1.0) &&
                       lambda_plus(1.0, 1.0, 1.0).lambda == 2.0;
  const bool pass = trace_err < 1e-9 && rank_ratio < 1e-10 && diag_ok && ones_ok;
  return {pass, fmt("trace vs eigen sum %.2g (< 1e-9), I1 lambda3,4/lambda1 %.2g (< 1e-10), closed forms ",
                    trace_err, rank_ratio) +
                    (diag_ok && ones_ok ? "exact" : "MISMATCH")};
}

constexpr std::array<Method, 5> kMethods{Method::kChed, Method::kMched, Method::kMased1, Method::kMased2,
                                         Method::kMased3};

Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::array<double, 3> red{0.8, 0.1, 0.1};
  const std::array<double, 3> blue{0.1, 0.2, 0.8};
  const ColorVector nu(1.0, 0.0, 0.0);
  double worst_fraction = 1.0;
  std::string worst_name = "none";
  for (int swap = 0; swap < 2; ++swap) {
    const StepEdgeFixture fx = swap ? step_edge(64, 64, blue, red, 32.0) : step_edge(64, 64, red, blue, 32.0);
    int truth_col = -1;
    for (int c = 0; c < 64; ++c) {
      if (fx.truth.at(0, c)) truth_col = c;
    }
    for (Method m : kMethods) {
      DetectOptions o;
      o.method = m;
      const Detection d = detect(fx.image, nu, o);
      int good = 0;
      for (int r = 0; r < 64; ++r) {
        int best = -1;
        double best_value = -1.0;
        for (int c = 0; c < 64; ++c) {
          if (d.edges.at(r, c) && d.gradient.magnitude(r, c) > best_value) {
            best_value = d.gradient.magnitude(r, c);
            best = c;
          }
        }
        if (best >= 0 && std::abs(best - truth_col) <= 1) ++good;
      }
      const double fraction = good / 64.0;
      if (fraction < worst_fraction) {
        worst_fraction = fraction;
        worst_name = to_string(m);
      }
    }
  }
  std::size_t constant_edges = 0;
  const ColorImage flat = ColorImage::filled(64, 64, {0.3, 0.6, 0.2}, ColorSpace::kRawRgb);
  for (Method m : kMethods) {
    DetectOptions o;
    o.method = m;
    constant_edges += detect(flat, nu, o).edges.count();
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst_fraction >= 0.99 && constant_edges == 0 && elapsed < 10.0;
  return {pass, fmt("worst row fraction within 1 px %.3f (>= 0.99), constant-image edges %g, %.2f s (< 10 s)",
                    worst_fraction, static_cast<double>(constant_edges), elapsed) +
                    " [worst: " + worst_name + "]"};
}

double mean_along(const Plane& m, const EdgeMap& truth) {
  double sum = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (truth.at(r, c)) {
        sum += m(r, c);
        ++n;
      }
    }
  }
  return sum / static_cast<double>(n);
}

Outcome criterion6() {
  const RectanglesFixture fx = rectangles();
  const ColorImage lab = to_lab(fx.image);
  const ColorVector nu = color_to_nu({1.0, 0.0, 0.0}, ColorSpace::kLab);
  const GradientMap g = gradient_map(lab, nu, Method::kChed, default_scales(Method::kChed));
  const double red = mean_along(g.magnitude, fx.truth_for("red"));
  const double blue = mean_along(g.magnitude, fx.truth_for("blue"));
  const double factor = red / blue;
  // Golden value of this build; the tolerance absorbs FFT rounding differences.
  constexpr double kGoldenFactor = 2.3401895351945465;
  const bool pinned = std::abs(factor - kGoldenFactor) <= 1e-9 * kGoldenFactor;
  return {factor >= 2.0 && pinned,
          fmt("red/blue boundary magnitude factor %.10f (>= 2; golden 2.3401895352, pinned to 1e-9 rel)", factor)};
}

Outcome criterion7() {
  const RectanglesFixture fx = rectangles();
  const ColorVector nu = color_to_nu({1.0, 0.0, 0.0}, ColorSpace::kLab);
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ColorImage noisy = to_lab(corrupt(fx.image, {NoiseKind::kGaussian, 0.01, seed}));
    DetectOptions coarse;
    coarse.scales = ScalePair(2.0, 2.0);
    DetectOptions fine;
    fine.scales = ScalePair(0.5, 0.5);
    const double f_coarse = pratt_f(detect(noisy, nu, coarse).edges, fx.truth_for("red"));
    const double f_fine = pratt_f(detect(noisy, nu, fine).edges, fx.truth_for("red"));
    pass = pass && f_coarse > f_fine;
    detail += (seed == 1 ? "F(2,2) > F(0.5,0.5) per seed: " : ", ") + fmt("%.3f>%.3f", f_coarse, f_fine);
  }
  return {pass, detail};
}

Outcome criterion8() {
  const RectanglesFixture fx = rectangles();
  const Plane x = fx.image.luma();
  const double s = ssim(x, x);
  const double f = fsim(x, x);
  const EdgeMap& t = fx.truth_for("red");
  const double p_self = pratt_f(t, t);
  const double cap = psnr(x, x);
  EdgeMap line(64, 64);
  EdgeMap shifted(64, 64);
  for (int r = 0; r < 64; ++r) {
    line.set(r, 20, true);
    shifted.set(r, 21, true);
  }
  const double p_shift = pratt_f(shifted, line);
  const bool pass = s == 1.0 && f == 1.0 && p_self == 1.0 && cap == kDecibelCap && p_shift == 0.9;
  return {pass, fmt("ssim(x,x)=%.17g fsim(x,x)=%.17g pratt(t,t)=%.17g", s, f, p_self) +
                    fmt(", psnr(x,x)=%g dB, pratt(1-px shift)=%.17g", cap, p_shift)};
}

EdgeMap boundary_band(const SquarePairFixture& fx, double band) {
  EdgeMap region(fx.first.width(), fx.first.height());
  const double x1 = fx.x0 + fx.side;
  const double y1 = fx.y0 + fx.side;
  for (int r = 0; r < region.height(); ++r) {
    for (int c = 0; c < region.width(); ++c) {
      const double x = c + 0.5;
      const double y = r + 0.5;
      const double ox = std::max({fx.x0 - x, x - x1, 0.0});
      const double oy = std::max({fx.y0 - y, y - y1, 0.0});
      const bool inside = ox == 0.0 && oy == 0.0;
      const double dist = inside ? std::min({x - fx.x0, x1 - x, y - fx.y0, y1 - y}) : std::hypot(ox, oy);
      if (dist <= band) region.set(r, c, true);
    }
  }
  return region;
}

Outcome criterion9() {
  const SquarePairFixture fx = translated_square_pair(2.0, 0.0);
  const EdgeMap region = boundary_band(fx, 4.0);
  const ColorVector nu(kSquareColor[0], kSquareColor[1], kSquareColor[2]);
  bool pass = true;
  std::string detail = "EPE pretreated/raw per seed:";
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ColorImage a = corrupt(fx.first, {NoiseKind::kGaussian, 0.01, 2 * seed});
    const ColorImage b = corrupt(fx.second, {NoiseKind::kGaussian, 0.01, 2 * seed + 1});
    ColorFlowOptions options;
    const double pre = mean_endpoint_error(color_flow(a, b, nu, options), 2.0, 0.0, region);
    options.pretreated = false;
    const double raw = mean_endpoint_error(color_flow(a, b, nu, options), 2.0, 0.0, region);
    pass = pass && pre < 0.5 && pre < raw;
    detail += fmt(" %.3f/%.3f", pre, raw);
  }
  return {pass, detail + " (pretreated < 0.5 and < raw)"};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run_cli(const fs::path& dir, int threads, const std::string& args, const std::string& stdout_name) {
  const std::string cmd = "cd '" + dir.string() + "' && CCHS_THREADS=" + std::to_string(threads) + " '" +
                          CCHS_CLI_PATH + "' " + args + " > " + stdout_name + " 2> /dev/null";
  return std::system(cmd.c_str());
}

Outcome criterion10() {
  const std::vector<std::string> commands{
      "synth rectangles rect",
      "synth step step --edge 31.4",
      "synth squares sq --dx 2 --dy 1",
      "noise rect.png noisy_gauss.png --noise gaussian --noise-param 0.01 --seed 11",
      "noise rect.png noisy_speckle.png --noise speckle --noise-param 0.02 --seed 12",
      "noise rect.png noisy_sp.png --noise salt_pepper --noise-param 0.05 --seed 13",
      "noise rect.png noisy_poisson.ppm --noise poisson --seed 14",
      "detect noisy_gauss.png det/ched --method ched",
      "detect noisy_gauss.png det/mched --method mched",
      "detect noisy_gauss.png det/mased1 --method mased1 --color 0,0,255",
      "detect noisy_gauss.png det/mased2 --method mased2 --colorspace raw-rgb",
      "detect noisy_gauss.png det/mased3 --method mased3 --threshold-percentile 80",
      "evaluate det/ched_edges.png rect_truth_red.png --report eval/ched.json",
      "flow sq_1.png sq_2.png -o flow/sq --color 230,191,26 --colorspace raw-rgb",
  };
  const fs::path root = fs::path(CCHS_TEST_TMP) / "determinism";
  std::error_code ec;
  fs::remove_all(root, ec);
  const std::array<fs::path, 2> dirs{root / "run1", root / "run2"};
  const std::array<int, 2> threads{1, 3};
  for (std::size_t k = 0; k < 2; ++k) {
    fs::create_directories(dirs[k]);
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (run_cli(dirs[k], threads[k], commands[i], "stdout_" + std::to_string(i) + ".json") != 0) {
        return {false, "command failed: " + commands[i]};
      }
    }
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dirs[0])) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), dirs[0]);
    const fs::path other = dirs[1] / rel;
    if (!fs::exists(other) || read_file(entry.path()) != read_file(other)) {
      return {false, "differs: " + rel.string()};
    }
    ++compared;
  }
  std::size_t second = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dirs[1])) second += entry.is_regular_file() ? 1 : 0;
  const bool pass = compared == second && compared > commands.size();
  return {pass, fmt("%g commands, %g files byte-identical across two runs (1 and 3 worker threads)",
                    static_cast<double>(commands.size()), static_cast<double>(compared))};
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, std::function<Outcome()>>, 10> criteria{{
      {"Cauchy-Riemann relations", criterion1},
      {"transfer functions", criterion2},
      {"scale-rewritten derivatives", criterion3},
      {"linear-algebra identities", criterion4},
      {"step-edge localization", criterion5},
      {"color selectivity", criterion6},
      {"noise robustness across scales", criterion7},
      {"metric self-consistency", criterion8},
      {"pretreated optical flow", criterion9},
      {"CLI determinism", criterion10},
  }};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %zu: %s - %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
