#pragma once

#include "cchs/detectors.hpp"
#include "cchs/plane.hpp"

namespace cchs {

/// 10 log10(1 / MSE) for planes in [0, 1]; kDecibelCap (99 dB) at zero MSE.
double psnr(const Plane& a, const Plane& b);

/// Mean SSIM over the valid region of an 11x11 Gaussian window (sigma 1.5),
/// K1 = 0.01, K2 = 0.03, dynamic range 1. Planes need both sides >= 11.
double ssim(const Plane& a, const Plane& b);

/// Feature similarity (phase congruency plus gradient magnitude similarity)
/// of two grayscale planes in [0, 1]. Returns 1 when neither plane has any
/// phase congruency.
double fsim(const Plane& a, const Plane& b);

/// Phase congruency map (log-Gabor, 4 scales x 4 orientations) used by fsim.
/// Input is expected on a 0..255 scale.
Plane phase_congruency(const Plane& image);

/// Squared Euclidean distance from every pixel to the nearest edge pixel;
/// +inf everywhere when the map is empty.
Plane squared_distance_transform(const EdgeMap& edges);

/// Classic scaling constant of the figure of merit.
inline constexpr double kPrattAlpha = 1.0 / 9.0;

/// Figure of merit (1 / max(N_detected, N_truth)) sum_detected 1 / (1 + alpha d^2)
/// with d the distance to the nearest truth pixel. Not symmetric in its
/// arguments. Two empty maps score 1; exactly one empty map scores 0.
double pratt_f(const EdgeMap& detected, const EdgeMap& truth, double alpha = kPrattAlpha);

}  // namespace cchs
