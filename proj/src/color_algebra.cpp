#include "cchs/color_algebra.hpp"

#include <cmath>

#include "cchs/error.hpp"

namespace cchs {

ColorVector::ColorVector(double a, double b, double c) : a_(a), b_(b), c_(c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw ParameterError("color vector components must be finite");
  }
  if (a == 0.0 && b == 0.0 && c == 0.0) {
    throw ParameterError("color vector must not be zero");
  }
}

double CliffordProduct::bi_norm_squared() const {
  double s = 0.0;
  for (double v : bi) s += v * v;
  return s;
}

double CliffordProduct::bi_norm() const { return std::sqrt(bi_norm_squared()); }

CliffordProduct clifford_color_product(const CchsSample& s, const ColorVector& nu) {
  const double a = nu.a();
  const double b = nu.b();
  const double c = nu.c();
  CliffordProduct p;
  p.sc = a * s[0] + b * s[1] + c * s[2];
  p.bi = {a * s[1] - b * s[0], a * s[2] - c * s[0], b * s[2] - c * s[1],
          a * s[3],            a * s[4],            a * s[5],
          b * s[3],            b * s[4],            b * s[5],
          c * s[3],            c * s[4],            c * s[5]};
  return p;
}

double local_amplitude(const CliffordProduct& p) {
  return std::sqrt(p.sc * p.sc + p.bi_norm_squared());
}

double phase_from_parts(double sc, double bi_norm) {
  // atan2 on non-negative arguments already yields pi/2 for sc == 0 and 0 for 0/0.
  return std::atan2(std::abs(bi_norm), std::abs(sc));
}

double local_phase(const CliffordProduct& p) { return phase_from_parts(p.sc, p.bi_norm()); }

}  // namespace cchs
