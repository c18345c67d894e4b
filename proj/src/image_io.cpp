#include "cchs/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cctype>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "cchs/error.hpp"

namespace cchs {

namespace {

struct Raster {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 or 3
  std::vector<double> samples;  // interleaved, normalized
};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  return f;
}

void png_error_handler(png_structp png, png_const_charp message) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text != nullptr) *text = message;
  png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

Raster read_png(std::FILE* file, const std::string& name) {
  std::string error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, png_error_handler,
                                           png_warning_handler);
  if (png == nullptr) throw IoError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  Raster raster;
  std::vector<png_byte> bytes;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("malformed PNG '" + name + "': " + error);
  }
  png_init_io(png, file);
  png_read_info(png, info);
  png_set_expand(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  const int depth = png_get_bit_depth(png, info);
  const int channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  bytes.resize(stride * static_cast<std::size_t>(height));
  rows.resize(static_cast<std::size_t>(height));
  for (int r = 0; r < height; ++r) rows[static_cast<std::size_t>(r)] = bytes.data() + stride * static_cast<std::size_t>(r);
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  raster.width = width;
  raster.height = height;
  raster.channels = 3;
  raster.samples.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  const double scale = depth == 16 ? 65535.0 : 255.0;
  for (int r = 0; r < height; ++r) {
    const png_byte* row = rows[static_cast<std::size_t>(r)];
    for (int c = 0; c < width; ++c) {
      for (int k = 0; k < 3; ++k) {
        const std::size_t src = static_cast<std::size_t>(c * channels + k);
        const double value = depth == 16 ? static_cast<double>((row[2 * src] << 8) | row[2 * src + 1])
                                         : static_cast<double>(row[src]);
        raster.samples[(static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                        static_cast<std::size_t>(c)) * 3 + static_cast<std::size_t>(k)] = value / scale;
      }
    }
  }
  return raster;
}

void write_png(const std::filesystem::path& path, int width, int height, int channels,
               int bit_depth, const std::vector<double>& samples) {
  if (bit_depth != 8 && bit_depth != 16) throw ParameterError("bit depth must be 8 or 16");
  FilePtr file = open_file(path, "wb");
  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_error_handler,
                                            png_warning_handler);
  if (png == nullptr) throw IoError("libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  const std::size_t bytes_per_sample = bit_depth == 16 ? 2 : 1;
  const std::size_t stride = static_cast<std::size_t>(width) * static_cast<std::size_t>(channels) * bytes_per_sample;
  std::vector<png_byte> bytes(stride * static_cast<std::size_t>(height));
  const double scale = bit_depth == 16 ? 65535.0 : 255.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto q = static_cast<unsigned>(std::lround(std::clamp(samples[i], 0.0, 1.0) * scale));
    if (bit_depth == 16) {
      bytes[2 * i] = static_cast<png_byte>(q >> 8);
      bytes[2 * i + 1] = static_cast<png_byte>(q & 0xFF);
    } else {
      bytes[i] = static_cast<png_byte>(q);
    }
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int r = 0; r < height; ++r) rows[static_cast<std::size_t>(r)] = bytes.data() + stride * static_cast<std::size_t>(r);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("failed to write PNG '" + path.string() + "': " + error);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// Reads the next whitespace-separated header token, skipping '#' comments.
std::string ppm_token(std::istream& in) {
  std::string token;
  while (in) {
    const int ch = in.get();
    if (ch == EOF) break;
    if (ch == '#') {
      std::string discard;
      std::getline(in, discard);
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

Raster read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  if (ppm_token(in) != "P6") throw IoError("not a binary PPM: '" + path.string() + "'");
  Raster raster;
  int maxval = 0;
  try {
    raster.width = std::stoi(ppm_token(in));
    raster.height = std::stoi(ppm_token(in));
    maxval = std::stoi(ppm_token(in));
  } catch (const std::exception&) {
    throw IoError("malformed PPM header in '" + path.string() + "'");
  }
  if (raster.width <= 0 || raster.height <= 0 || maxval <= 0 || maxval > 65535) {
    throw IoError("malformed PPM header in '" + path.string() + "'");
  }
  raster.channels = 3;
  const std::size_t count = static_cast<std::size_t>(raster.width) * static_cast<std::size_t>(raster.height) * 3;
  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> bytes(count * bytes_per_sample);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw IoError("truncated PPM data in '" + path.string() + "'");
  }
  raster.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = bytes_per_sample == 2 ? static_cast<double>((bytes[2 * i] << 8) | bytes[2 * i + 1])
                                           : static_cast<double>(bytes[i]);
    raster.samples[i] = v / maxval;
  }
  return raster;
}

void write_ppm(const std::filesystem::path& path, const ColorImage& img, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw ParameterError("bit depth must be 8 or 16");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const int maxval = bit_depth == 16 ? 65535 : 255;
  out << "P6\n" << img.width() << ' ' << img.height() << '\n' << maxval << '\n';
  std::vector<unsigned char> bytes;
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      for (int k = 0; k < 3; ++k) {
        const auto q = static_cast<unsigned>(std::lround(std::clamp(img.channel(k)(r, c), 0.0, 1.0) * maxval));
        if (bit_depth == 16) bytes.push_back(static_cast<unsigned char>(q >> 8));
        bytes.push_back(static_cast<unsigned char>(q & 0xFF));
      }
    }
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed to write '" + path.string() + "'");
}

Raster read_raster(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  unsigned char magic[8] = {};
  const std::size_t got = std::fread(magic, 1, sizeof magic, file.get());
  if (got == sizeof magic && png_sig_cmp(magic, 0, sizeof magic) == 0) {
    std::rewind(file.get());
    return read_png(file.get(), path.string());
  }
  if (got >= 2 && magic[0] == 'P' && magic[1] == '6') {
    file.reset();
    return read_ppm(path);
  }
  throw IoError("unrecognized image format: '" + path.string() + "'");
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return ext;
}

double srgb_to_linear(double v) {
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

ColorImage load_image(const std::filesystem::path& path) {
  const Raster raster = read_raster(path);
  Plane ch[3] = {Plane(raster.width, raster.height), Plane(raster.width, raster.height),
                 Plane(raster.width, raster.height)};
  for (std::size_t i = 0; i < ch[0].size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) ch[k].values()[i] = raster.samples[i * 3 + k];
  }
  return ColorImage(std::move(ch[0]), std::move(ch[1]), std::move(ch[2]), ColorSpace::kRawRgb);
}

Plane load_plane(const std::filesystem::path& path) {
  const Raster raster = read_raster(path);
  Plane out(raster.width, raster.height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double r = raster.samples[i * 3];
    const double g = raster.samples[i * 3 + 1];
    const double b = raster.samples[i * 3 + 2];
    // Gray input expands to equal channels and must come back unchanged.
    out.values()[i] = (r == g && g == b) ? r : 0.299 * r + 0.587 * g + 0.114 * b;
  }
  return out;
}

void save_image(const ColorImage& img, const std::filesystem::path& path, int bit_depth) {
  const std::string ext = lower_extension(path);
  if (ext == ".ppm") {
    write_ppm(path, img, bit_depth);
    return;
  }
  if (ext != ".png") throw ParameterError("unsupported output extension '" + ext + "'");
  std::vector<double> samples(static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height()) * 3);
  for (std::size_t i = 0; i < samples.size() / 3; ++i) {
    for (int k = 0; k < 3; ++k) samples[i * 3 + static_cast<std::size_t>(k)] = img.channel(k).values()[i];
  }
  write_png(path, img.width(), img.height(), 3, bit_depth, samples);
}

void save_plane_png(const Plane& plane, const std::filesystem::path& path, int bit_depth) {
  std::vector<double> samples(plane.values().begin(), plane.values().end());
  write_png(path, plane.width(), plane.height(), 1, bit_depth, samples);
}

std::array<double, 3> srgb_to_lab(const std::array<double, 3>& rgb) {
  const double r = srgb_to_linear(rgb[0]);
  const double g = srgb_to_linear(rgb[1]);
  const double b = srgb_to_linear(rgb[2]);
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  constexpr double xn = 0.95047;
  constexpr double yn = 1.0;
  constexpr double zn = 1.08883;
  const double fx = lab_f(x / xn);
  const double fy = lab_f(y / yn);
  const double fz = lab_f(z / zn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<double, 3> normalize_lab(const std::array<double, 3>& lab) {
  return {lab[0] / 100.0, (lab[1] + 110.0) / 220.0, (lab[2] + 110.0) / 220.0};
}

ColorImage to_lab(const ColorImage& img) {
  if (img.space() == ColorSpace::kLab) return img;
  const int w = img.width();
  const int h = img.height();
  Plane l(w, h);
  Plane a(w, h);
  Plane b(w, h);
  for (std::size_t i = 0; i < l.size(); ++i) {
    const auto lab = normalize_lab(srgb_to_lab({img.channel(0).values()[i], img.channel(1).values()[i],
                                                img.channel(2).values()[i]}));
    l.values()[i] = lab[0];
    a.values()[i] = lab[1];
    b.values()[i] = lab[2];
  }
  return ColorImage(std::move(l), std::move(a), std::move(b), ColorSpace::kLab);
}

ColorImage to_color_space(const ColorImage& img, ColorSpace space) {
  if (img.space() == space) return img;
  if (space == ColorSpace::kLab) return to_lab(img);
  throw ParameterError("conversion from Lab back to RGB is not supported");
}

ColorVector color_to_nu(const std::array<double, 3>& rgb, ColorSpace space) {
  for (double v : rgb) {
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("color components must lie in [0, 1]");
  }
  if (space == ColorSpace::kRawRgb) return ColorVector(rgb[0], rgb[1], rgb[2]);
  const auto lab = normalize_lab(srgb_to_lab(rgb));
  return ColorVector(lab[0], lab[1], lab[2]);
}

}  // namespace cchs
