/**
 * @file flow.hpp
 * @brief Single-level Lucas-Kanade optical flow on grayscale planes, with an
 * optional color-selective edge pretreatment of the frames.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cchs/color_algebra.hpp"
#include "cchs/detectors.hpp"
#include "cchs/image.hpp"
#include "cchs/plane.hpp"

namespace cchs {

/// Per-pixel displacement (u along x1, v along x2) in pixels per frame.
struct FlowField {
  FlowField(int width, int height);

  int width() const { return u.width(); }
  int height() const { return u.height(); }
  bool is_valid(int row, int col) const;
  void set_valid(int row, int col, bool on);
  std::size_t valid_count() const;

  Plane u;
  Plane v;
  std::vector<std::uint8_t> valid;
};

inline constexpr int kDefaultFlowWindow = 15;
inline constexpr double kMinEigenvalue = 1e-6;

struct LkOptions {
  int window = kDefaultFlowWindow;  ///< odd, >= 3
  int iterations = 10;
  double tolerance = 1e-3;          ///< stop when the update is shorter than this
  double min_eigenvalue = kMinEigenvalue;
};

/// Detector magnitude before suppression, divided by its maximum. A frame with
/// no response gives a zero plane.
Plane pretreat(const ColorImage& frame, Method method, const ColorVector& nu,
               const ScalePair& scales);

/// Iterative LK: p2(x + d) ~ p1(x) solved per pixel over a square window of
/// the window-averaged structure tensor of p1. Pixels whose tensor has a
/// smaller eigenvalue below the gate, or whose estimate leaves the half
/// window, are invalid.
FlowField lk_flow(const Plane& p1, const Plane& p2, const LkOptions& options = {});

/// Poisson scale of the pretreatment detector along both axes.
inline constexpr double kFlowPretreatScale = 6.0;

struct ColorFlowOptions {
  bool pretreated = true;
  Method method = Method::kChed;
  ScalePair scales{kFlowPretreatScale, kFlowPretreatScale};
  LkOptions lk;
};

/// Flow between two color frames; without pretreatment LK runs on Rec.601 luma
/// of the frames as given.
FlowField color_flow(const ColorImage& first, const ColorImage& second, const ColorVector& nu,
                     const ColorFlowOptions& options = {});

/// Mean endpoint error against a constant true flow over the pixels set in
/// `region` (all pixels when empty). Invalid pixels count as zero flow.
double mean_endpoint_error(const FlowField& flow, double true_u, double true_v,
                           const std::optional<EdgeMap>& region = std::nullopt);

/// Largest |(u, v)| over valid pixels.
double max_flow_norm(const FlowField& flow);

/// HSV wheel: hue = atan2(v, u), saturation = |f| / max_norm, value 1. Zero
/// flow is white, invalid pixels black. max_norm <= 0 uses max_flow_norm.
ColorImage flow_to_color(const FlowField& flow, double max_norm = 0.0);

/// Inverse of flow_to_color for a known max_norm; black pixels become invalid.
FlowField color_to_flow(const ColorImage& img, double max_norm);

inline constexpr float kFloMagic = 202021.25F;
inline constexpr float kFloInvalid = 1e9F;

/// Middlebury .flo: "PIEH", int32 width, int32 height, little-endian float32
/// interleaved (u, v). Invalid pixels are written as kFloInvalid.
void write_flo(const FlowField& flow, const std::string& path);
FlowField read_flo(const std::string& path);

}  // namespace cchs
