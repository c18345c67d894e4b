/**
 * @file color_algebra.hpp
 * @brief Fixed-size Clifford values for one pixel of a color Clifford Hardy signal.
 *
 * A color is the vector nu = a e1 + b e2 + c e3. A signal sample carries six
 * coefficients A1..A6 on e1..e6. Their product with nu splits into a scalar
 * part and a 12-component bivector part; only those two parts are modelled.
 */
#pragma once

#include <array>
#include <cstddef>

namespace cchs {

/// Color weights (a, b, c) on e1, e2, e3. Construction rejects non-finite or all-zero input.
class ColorVector {
 public:
  ColorVector(double a, double b, double c);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double norm_squared() const { return a_ * a_ + b_ * b_ + c_ * c_; }
  ColorVector scaled(double lambda) const { return {a_ * lambda, b_ * lambda, c_ * lambda}; }

 private:
  double a_;
  double b_;
  double c_;
};

/// Coefficients A1..A6 of one signal sample (index 0 holds A1).
using CchsSample = std::array<double, 6>;

/// Bivector blade order of CliffordProduct::bi.
enum class Blade : std::size_t {
  e1e2 = 0,
  e1e3,
  e2e3,
  e4e1,
  e5e1,
  e6e1,
  e4e2,
  e5e2,
  e6e2,
  e4e3,
  e5e3,
  e6e3,
};

inline constexpr std::size_t kBladeCount = 12;

/// Scalar and bivector parts of the product of a sample with a color.
///
/// bi is stored in the Blade order:
/// (aA2-bA1, aA3-cA1, bA3-cA2, aA4, aA5, aA6, bA4, bA5, bA6, cA4, cA5, cA6).
struct CliffordProduct {
  double sc = 0.0;
  std::array<double, kBladeCount> bi{};

  double bi_norm_squared() const;
  double bi_norm() const;
};

CliffordProduct clifford_color_product(const CchsSample& s, const ColorVector& nu);

/// M = sqrt(sc^2 + |bi|^2).
double local_amplitude(const CliffordProduct& p);

/// theta = arctan(|bi| / |sc|) in [0, pi/2]; pi/2 when only the bivector is
/// present and 0 when both parts vanish.
double local_phase(const CliffordProduct& p);

/// Same convention as local_phase, from the two norms directly.
double phase_from_parts(double sc, double bi_norm);

}  // namespace cchs
