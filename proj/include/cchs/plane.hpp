#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cchs {

/// Dense row-major raster of doubles. Column index is x1, row index is x2.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int row, int col) { return data_[index(row, col)]; }
  double operator()(int row, int col) const { return data_[index(row, col)]; }

  /// Sample with coordinates clamped to the raster (replicate border).
  double clamped(int row, int col) const;
  /// Bilinear sample at fractional (row, col), replicate border.
  double bilinear(double row, double col) const;

  std::span<double> row(int r) {
    return {data_.data() + index(r, 0), static_cast<std::size_t>(width_)};
  }
  std::span<const double> row(int r) const {
    return {data_.data() + index(r, 0), static_cast<std::size_t>(width_)};
  }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_shape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  double min() const;
  double max() const;
  double max_abs() const;
  double mean() const;
  bool all_finite() const;

  Plane& operator+=(const Plane& other);
  Plane& operator-=(const Plane& other);
  Plane& operator*=(double s);

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

Plane operator+(Plane a, const Plane& b);
Plane operator-(Plane a, const Plane& b);
Plane operator*(Plane a, double s);

/// A pair of positive Poisson scales (y1 along columns, y2 along rows), in pixels.
class ScalePair {
 public:
  ScalePair(double y1, double y2);
  double y1() const { return y1_; }
  double y2() const { return y2_; }

 private:
  double y1_;
  double y2_;
};

}  // namespace cchs
