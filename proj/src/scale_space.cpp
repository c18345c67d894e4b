#include "cchs/scale_space.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "cchs/error.hpp"
#include "cchs/parallel.hpp"

namespace cchs {

namespace {

void require_positive_scale(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw ParameterError("scale must be positive");
}

// One r2c/c2r plan pair per extended line length. FFTW planning is not
// thread-safe, execution with the new-array interface is.
struct LinePlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

const LinePlans& plans_for(int length) {
  static std::mutex mutex;
  static std::map<int, LinePlans> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(length);
  if (it != cache.end()) return it->second;
  std::vector<double> real(static_cast<std::size_t>(length));
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(length / 2 + 1));
  auto* spec = reinterpret_cast<fftw_complex*>(spectrum.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  LinePlans plans;
  plans.forward = fftw_plan_dft_r2c_1d(length, real.data(), spec, flags);
  plans.backward = fftw_plan_dft_c2r_1d(length, spec, real.data(), flags);
  if (plans.forward == nullptr || plans.backward == nullptr) {
    throw NumericalError("FFTW planning failed");
  }
  return cache.emplace(length, plans).first->second;
}

// Filters lines of length n: extend by mirroring to 2n, multiply the spectrum
// by the precomputed response, crop back.
class LineFilter {
 public:
  LineFilter(int n, FilterKind kind, double y) : n_(n), plans_(plans_for(2 * n)) {
    const int length = 2 * n;
    response_.resize(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
      const double omega = 2.0 * std::numbers::pi * k / length;
      std::complex<double> h = transfer(kind, y, omega);
      // The Nyquist bin of a real signal has no odd part.
      if (k == n) h = {h.real(), 0.0};
      response_[static_cast<std::size_t>(k)] = h / static_cast<double>(length);
    }
  }

  void apply(std::span<double> line) const {
    const int length = 2 * n_;
    std::vector<double> buffer(static_cast<std::size_t>(length));
    std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(n_ + 1));
    for (int i = 0; i < n_; ++i) {
      buffer[static_cast<std::size_t>(i)] = line[static_cast<std::size_t>(i)];
      buffer[static_cast<std::size_t>(length - 1 - i)] = line[static_cast<std::size_t>(i)];
    }
    auto* spec = reinterpret_cast<fftw_complex*>(spectrum.data());
    fftw_execute_dft_r2c(plans_.forward, buffer.data(), spec);
    for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= response_[k];
    fftw_execute_dft_c2r(plans_.backward, spec, buffer.data());
    for (int i = 0; i < n_; ++i) line[static_cast<std::size_t>(i)] = buffer[static_cast<std::size_t>(i)];
  }

 private:
  int n_;
  const LinePlans& plans_;
  std::vector<std::complex<double>> response_;
};

void filter_rows(Plane& plane, FilterKind kind, double y) {
  const LineFilter filter(plane.width(), kind, y);
  parallel_for(plane.height(), [&](int r) { filter.apply(plane.row(r)); });
}

void filter_columns(Plane& plane, FilterKind kind, double y) {
  const LineFilter filter(plane.height(), kind, y);
  const int h = plane.height();
  parallel_for(plane.width(), [&](int c) {
    std::vector<double> column(static_cast<std::size_t>(h));
    for (int r = 0; r < h; ++r) column[static_cast<std::size_t>(r)] = plane(r, c);
    filter.apply(column);
    for (int r = 0; r < h; ++r) plane(r, c) = column[static_cast<std::size_t>(r)];
  });
}

}  // namespace

double poisson_kernel_1d(double y, double x) {
  require_positive_scale(y);
  return y / (std::numbers::pi * (y * y + x * x));
}

double conj_poisson_kernel_1d(double y, double x) {
  require_positive_scale(y);
  return x / (std::numbers::pi * (y * y + x * x));
}

std::complex<double> transfer(FilterKind kind, double y, double omega) {
  const double magnitude = std::abs(omega);
  const double decay = std::exp(-y * magnitude);
  const double sign = omega > 0.0 ? 1.0 : (omega < 0.0 ? -1.0 : 0.0);
  const std::complex<double> conjugate{0.0, -sign * decay};
  switch (kind) {
    case FilterKind::kPoisson:
      return decay;
    case FilterKind::kConjugate:
      return conjugate;
    case FilterKind::kPoissonDy:
      return -magnitude * decay;
    case FilterKind::kConjugateDy:
      return -magnitude * conjugate;
  }
  return 0.0;
}

Plane filter_separable(const Plane& plane, FilterKind kind_x1, FilterKind kind_x2,
                       const ScalePair& scales) {
  if (plane.empty()) throw ParameterError("cannot filter an empty plane");
  Plane out = plane;
  filter_rows(out, kind_x1, scales.y1());
  filter_columns(out, kind_x2, scales.y2());
  return out;
}

Plane CchsField::color_sum() const { return a[0] + a[1] + a[2]; }

CchsField cchs_transform(const ColorImage& img, const ScalePair& scales) {
  using enum FilterKind;
  const Plane sum = img.channel_sum();
  return CchsField{scales,
                   {filter_separable(img.channel(0), kPoisson, kPoisson, scales),
                    filter_separable(img.channel(1), kPoisson, kPoisson, scales),
                    filter_separable(img.channel(2), kPoisson, kPoisson, scales),
                    filter_separable(sum, kConjugate, kPoisson, scales),
                    filter_separable(sum, kPoisson, kConjugate, scales),
                    filter_separable(sum, kConjugate, kConjugate, scales)}};
}

CchsScaleDerivatives cchs_scale_derivatives(const ColorImage& img, const ScalePair& scales) {
  using enum FilterKind;
  const Plane sum = img.channel_sum();
  CchsScaleDerivatives d;
  for (int i = 0; i < 3; ++i) {
    d.dy1[static_cast<std::size_t>(i)] = filter_separable(img.channel(i), kPoissonDy, kPoisson, scales);
    d.dy2[static_cast<std::size_t>(i)] = filter_separable(img.channel(i), kPoisson, kPoissonDy, scales);
  }
  d.dy1[3] = filter_separable(sum, kConjugateDy, kPoisson, scales);
  d.dy1[4] = filter_separable(sum, kPoissonDy, kConjugate, scales);
  d.dy1[5] = filter_separable(sum, kConjugateDy, kConjugate, scales);
  d.dy2[3] = filter_separable(sum, kConjugate, kPoissonDy, scales);
  d.dy2[4] = filter_separable(sum, kPoisson, kConjugateDy, scales);
  d.dy2[5] = filter_separable(sum, kConjugate, kConjugateDy, scales);
  return d;
}

ChannelConjugates channel_conjugates(const ColorImage& img, const ScalePair& scales) {
  using enum FilterKind;
  ChannelConjugates c;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    c.a4[k] = filter_separable(img.channel(i), kConjugate, kPoisson, scales);
    c.a5[k] = filter_separable(img.channel(i), kPoisson, kConjugate, scales);
    c.a6[k] = filter_separable(img.channel(i), kConjugate, kConjugate, scales);
  }
  return c;
}

ChannelConjugateScaleDerivatives channel_conjugate_scale_derivatives(const ColorImage& img,
                                                                     const ScalePair& scales) {
  using enum FilterKind;
  ChannelConjugateScaleDerivatives d;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    d.da4_dy1[k] = filter_separable(img.channel(i), kConjugateDy, kPoisson, scales);
    d.da5_dy2[k] = filter_separable(img.channel(i), kPoisson, kConjugateDy, scales);
  }
  return d;
}

}  // namespace cchs
