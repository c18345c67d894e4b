#pragma once

#include <array>
#include <filesystem>

#include "cchs/color_algebra.hpp"
#include "cchs/image.hpp"
#include "cchs/plane.hpp"

namespace cchs {

/// Loads a PNG (8/16-bit; gray, RGB, palette, with or without alpha) or a
/// binary PPM (P6) as raw RGB normalized to [0, 1]. Throws IoError on
/// unreadable or malformed files and ParameterError for images under 8x8.
ColorImage load_image(const std::filesystem::path& path);

/// Loads any supported raster as one plane in [0, 1] (Rec.601 luma for color input).
Plane load_plane(const std::filesystem::path& path);

/// Writes channels clamped to [0, 1]. Format follows the extension (.png or .ppm).
void save_image(const ColorImage& img, const std::filesystem::path& path, int bit_depth = 16);

/// Writes a single plane clamped to [0, 1] as a grayscale PNG (8 or 16 bit).
void save_plane_png(const Plane& plane, const std::filesystem::path& path, int bit_depth = 16);

/// sRGB in [0, 1] to CIE L*a*b* (D65). L in [0, 100].
std::array<double, 3> srgb_to_lab(const std::array<double, 3>& rgb);

/// L/100, (a+110)/220, (b+110)/220.
std::array<double, 3> normalize_lab(const std::array<double, 3>& lab);

/// Converts a raw-RGB image to normalized Lab. Lab input is returned unchanged.
ColorImage to_lab(const ColorImage& img);

/// Converts an image to the requested working space.
ColorImage to_color_space(const ColorImage& img, ColorSpace space);

/// The color vector of an sRGB color in [0, 1] in the given working space.
ColorVector color_to_nu(const std::array<double, 3>& rgb, ColorSpace space);

}  // namespace cchs
