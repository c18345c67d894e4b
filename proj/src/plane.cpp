#include "cchs/plane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cchs/error.hpp"

namespace cchs {

Plane::Plane(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw ParameterError("plane dimensions must be non-negative");
  }
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

double Plane::clamped(int row, int col) const {
  row = std::clamp(row, 0, height_ - 1);
  col = std::clamp(col, 0, width_ - 1);
  return (*this)(row, col);
}

double Plane::bilinear(double row, double col) const {
  row = std::clamp(row, 0.0, static_cast<double>(height_ - 1));
  col = std::clamp(col, 0.0, static_cast<double>(width_ - 1));
  const int r0 = static_cast<int>(std::floor(row));
  const int c0 = static_cast<int>(std::floor(col));
  const int r1 = std::min(r0 + 1, height_ - 1);
  const int c1 = std::min(c0 + 1, width_ - 1);
  const double fr = row - r0;
  const double fc = col - c0;
  const double top = (*this)(r0, c0) * (1.0 - fc) + (*this)(r0, c1) * fc;
  const double bottom = (*this)(r1, c0) * (1.0 - fc) + (*this)(r1, c1) * fc;
  return top * (1.0 - fr) + bottom * fr;
}

double Plane::min() const {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

double Plane::max() const {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

double Plane::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Plane::mean() const {
  if (data_.empty()) return 0.0;
  double s = 0.0;
  for (double v : data_) s += v;
  return s / static_cast<double>(data_.size());
}

bool Plane::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Plane& Plane::operator+=(const Plane& other) {
  if (!same_shape(other)) throw ParameterError("plane shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Plane& Plane::operator-=(const Plane& other) {
  if (!same_shape(other)) throw ParameterError("plane shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Plane& Plane::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Plane operator+(Plane a, const Plane& b) { return a += b; }
Plane operator-(Plane a, const Plane& b) { return a -= b; }
Plane operator*(Plane a, double s) { return a *= s; }

ScalePair::ScalePair(double y1, double y2) : y1_(y1), y2_(y2) {
  if (!(y1 > 0.0) || !(y2 > 0.0) || !std::isfinite(y1) || !std::isfinite(y2)) {
    throw ParameterError("scales must be positive and finite, got (" + std::to_string(y1) +
                         ", " + std::to_string(y2) + ")");
  }
}

}  // namespace cchs
