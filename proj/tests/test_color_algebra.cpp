#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cchs/color_algebra.hpp"
#include "cchs/error.hpp"

using namespace cchs;

namespace {

// Squares of the twelve bivector terms accumulated in reverse blade order.
double reverse_bi_norm_squared(const CchsSample& s, const ColorVector& nu) {
  const double a = nu.a();
  const double b = nu.b();
  const double c = nu.c();
  double sum = 0.0;
  for (int k = 5; k >= 3; --k) sum += (c * s[k]) * (c * s[k]);
  for (int k = 5; k >= 3; --k) sum += (b * s[k]) * (b * s[k]);
  for (int k = 5; k >= 3; --k) sum += (a * s[k]) * (a * s[k]);
  sum += (b * s[2] - c * s[1]) * (b * s[2] - c * s[1]);
  sum += (a * s[2] - c * s[0]) * (a * s[2] - c * s[0]);
  sum += (a * s[1] - b * s[0]) * (a * s[1] - b * s[0]);
  return sum;
}

CchsSample random_sample(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CchsSample s{};
  for (double& v : s) v = g(rng);
  return s;
}

}  // namespace

TEST_CASE("color vectors reject degenerate input") {
  CHECK_THROWS_AS(ColorVector(0.0, 0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(ColorVector(NAN, 1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(ColorVector(1.0, INFINITY, 0.0), ParameterError);
  const ColorVector nu(1.0, 2.0, 2.0);
  CHECK(nu.norm_squared() == 9.0);
  CHECK(nu.scaled(2.0).c() == 4.0);
}

TEST_CASE("pure e1 color picks out A1 and the rest of the sample") {
  const CchsSample s{0.3, -1.2, 0.7, 2.0, -0.5, 1.1};
  const CliffordProduct p = clifford_color_product(s, ColorVector(1.0, 0.0, 0.0));
  CHECK(p.sc == 0.3);
  const double expect = 1.2 * 1.2 + 0.7 * 0.7 + 2.0 * 2.0 + 0.5 * 0.5 + 1.1 * 1.1;
  CHECK(p.bi_norm_squared() == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("zero sample gives a zero product") {
  const CliffordProduct p = clifford_color_product(CchsSample{}, ColorVector(0.2, 0.5, 0.9));
  CHECK(p.sc == 0.0);
  for (double v : p.bi) CHECK(v == 0.0);
  CHECK(local_amplitude(p) == 0.0);
  CHECK(local_phase(p) == 0.0);
}

TEST_CASE("hand-expanded product for nu = (1, 2, 3)") {
  const CliffordProduct p = clifford_color_product(CchsSample{1, 1, 1, 0, 0, 0}, ColorVector(1, 2, 3));
  CHECK(p.sc == 6.0);
  // Signs follow (aA2 - bA1, aA3 - cA1, bA3 - cA2); magnitudes are (1, 2, 1).
  const std::array<double, 12> expect{-1, -2, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(p.bi == expect);
  CHECK(std::abs(p.bi[0]) == 1.0);
  CHECK(std::abs(p.bi[1]) == 2.0);
  CHECK(std::abs(p.bi[2]) == 1.0);
  CHECK(p.bi_norm() == doctest::Approx(std::sqrt(6.0)));
  CHECK(local_phase(p) == doctest::Approx(std::atan(std::sqrt(6.0) / 6.0)));
}

TEST_CASE("bivector blade layout") {
  const CchsSample s{1, 2, 3, 4, 5, 6};
  const ColorVector nu(7, 11, 13);
  const CliffordProduct p = clifford_color_product(s, nu);
  CHECK(p.bi[static_cast<std::size_t>(Blade::e1e2)] == 7 * 2 - 11 * 1);
  CHECK(p.bi[static_cast<std::size_t>(Blade::e1e3)] == 7 * 3 - 13 * 1);
  CHECK(p.bi[static_cast<std::size_t>(Blade::e2e3)] == 11 * 3 - 13 * 2);
  CHECK(p.bi[static_cast<std::size_t>(Blade::e4e1)] == 7 * 4);
  CHECK(p.bi[static_cast<std::size_t>(Blade::e6e2)] == 11 * 6);
  CHECK(p.bi[static_cast<std::size_t>(Blade::e5e3)] == 13 * 5);
  CHECK(p.sc == 7 * 1 + 11 * 2 + 13 * 3);
}

TEST_CASE("amplitude and phase conventions") {
  CliffordProduct p;
  p.sc = 3.0;
  p.bi[0] = 4.0;
  CHECK(local_amplitude(p) == 5.0);
  CHECK(phase_from_parts(1.0, 0.0) == 0.0);
  CHECK(phase_from_parts(1.0, 1.0) == doctest::Approx(std::numbers::pi / 4));
  CHECK(phase_from_parts(0.0, 1.0) == doctest::Approx(std::numbers::pi / 2));
  CHECK(phase_from_parts(0.0, 0.0) == 0.0);
  CHECK(phase_from_parts(-1.0, 1.0) == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("random samples: norms match an independent accumulation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const CchsSample s = random_sample(rng);
    double a = u(rng);
    if (a == 0.0) a = 0.5;
    const ColorVector nu(a, u(rng), u(rng));
    const CliffordProduct p = clifford_color_product(s, nu);
    const double bi2 = reverse_bi_norm_squared(s, nu);
    CHECK(p.bi_norm_squared() == doctest::Approx(bi2).epsilon(1e-12));
    const double m = std::sqrt(p.sc * p.sc + bi2);
    CHECK(local_amplitude(p) == doctest::Approx(m).epsilon(1e-12));
  }
}

TEST_CASE("positive scaling of nu scales sc, bi and M and keeps theta") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const CchsSample s = random_sample(rng);
    const ColorVector nu(0.4, -0.3, 0.8);
    const double lambda = 0.25 + 0.05 * i;
    const CliffordProduct p = clifford_color_product(s, nu);
    const CliffordProduct q = clifford_color_product(s, nu.scaled(lambda));
    CHECK(q.sc == doctest::Approx(lambda * p.sc).epsilon(1e-12));
    for (std::size_t k = 0; k < kBladeCount; ++k) CHECK(q.bi[k] == doctest::Approx(lambda * p.bi[k]).epsilon(1e-12));
    CHECK(local_amplitude(q) == doctest::Approx(lambda * local_amplitude(p)).epsilon(1e-12));
    CHECK(local_phase(q) == doctest::Approx(local_phase(p)).epsilon(1e-12));
  }
}

TEST_CASE("theta is nondecreasing in |bi| for fixed positive sc") {
  double previous = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double theta = phase_from_parts(0.7, i * 0.01);
    CHECK(theta >= previous);
    CHECK(theta >= 0.0);
    CHECK(theta <= std::numbers::pi / 2);
    previous = theta;
  }
}
