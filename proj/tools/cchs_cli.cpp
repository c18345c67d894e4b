// Command-line front end: detect, noise, evaluate, flow, synth.
//
// stdout carries exactly one JSON report per run; diagnostics go to stderr.
// Exit codes: 0 success, 2 parameter error, 3 I/O error, 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cchs/detectors.hpp"
#include "cchs/error.hpp"
#include "cchs/flow.hpp"
#include "cchs/image_io.hpp"
#include "cchs/metrics.hpp"
#include "cchs/noise.hpp"
#include "cchs/parallel.hpp"
#include "cchs/synth.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "cchs.report/1";

enum ExitCode { kOk = 0, kParameter = 2, kIo = 3, kNumerical = 4 };

std::array<double, 3> parse_color(const std::string& text) {
  std::array<double, 3> rgb{};
  std::stringstream in(text);
  std::string part;
  int i = 0;
  while (std::getline(in, part, ',')) {
    if (i >= 3) throw cchs::ParameterError("--color takes exactly three components");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw cchs::ParameterError("--color component '" + part + "' is not a number");
    }
    if (used != part.size() || !(v >= 0.0 && v <= 255.0)) {
      throw cchs::ParameterError("--color components must be numbers in [0, 255]");
    }
    rgb[static_cast<std::size_t>(i++)] = v / 255.0;
  }
  if (i != 3) throw cchs::ParameterError("--color takes exactly three components");
  return rgb;
}

cchs::ColorSpace parse_space(const std::string& name) {
  if (name == "lab") return cchs::ColorSpace::kLab;
  if (name == "raw-rgb") return cchs::ColorSpace::kRawRgb;
  throw cchs::ParameterError("unknown color space '" + name + "'");
}

Json color_json(const std::array<double, 3>& rgb) {
  return Json::array({std::lround(rgb[0] * 255.0), std::lround(rgb[1] * 255.0), std::lround(rgb[2] * 255.0)});
}

Json report(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

void write_json(const Json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw cchs::IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw cchs::IoError("failed to write '" + path.string() + "'");
}

fs::path with_suffix(const std::string& prefix, const std::string& suffix) {
  return fs::path(prefix + suffix);
}

void ensure_parent(const fs::path& path) {
  const fs::path parent = path.parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) throw cchs::IoError("cannot create directory '" + parent.string() + "'");
  }
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
  std::string input;
  std::string output;
  std::string method = "ched";
  std::string color = "255,0,0";
  std::optional<double> y1;
  std::optional<double> y2;
  double nms_radius = 1.5;
  double percentile = 90.0;
  std::optional<double> threshold;
  std::string colorspace = "lab";
};

Json run_detect(const DetectArgs& a) {
  const cchs::Method method = cchs::parse_method(a.method);
  const cchs::ColorSpace space = parse_space(a.colorspace);
  const auto rgb = parse_color(a.color);
  const cchs::ScalePair defaults = cchs::default_scales(method);
  const cchs::ScalePair scales(a.y1.value_or(defaults.y1()), a.y2.value_or(defaults.y2()));

  const cchs::ColorImage image = cchs::to_color_space(cchs::load_image(a.input), space);
  const cchs::ColorVector nu = cchs::color_to_nu(rgb, space);
  cchs::DetectOptions options;
  options.method = method;
  options.scales = scales;
  options.nms.radius = a.nms_radius;
  options.nms.percentile = a.percentile;
  options.nms.threshold = a.threshold;
  const cchs::Detection d = cchs::detect(image, nu, options);
  if (!d.gradient.magnitude.all_finite()) throw cchs::NumericalError("gradient magnitude is not finite");

  const double peak = d.gradient.magnitude.max();
  cchs::Plane normalized = d.gradient.magnitude;
  if (peak > 0.0) normalized *= 1.0 / peak;
  const fs::path gradient_path = with_suffix(a.output, "_gradient.png");
  const fs::path edges_path = with_suffix(a.output, "_edges.png");
  const fs::path sidecar_path = with_suffix(a.output, ".json");
  ensure_parent(gradient_path);
  cchs::save_plane_png(normalized, gradient_path, 16);
  cchs::save_plane_png(d.edges.to_plane(), edges_path, 8);

  Json j = report("detect");
  j["parameters"] = {
      {"input", a.input},
      {"method", cchs::to_string(method)},
      {"color", color_json(rgb)},
      {"colorspace", cchs::to_string(space)},
      {"y1", scales.y1()},
      {"y2", scales.y2()},
      {"nms_radius", a.nms_radius},
      {"threshold_percentile", a.percentile},
      {"threshold", a.threshold ? Json(*a.threshold) : Json(nullptr)},
  };
  j["outputs"] = {{"gradient", gradient_path.string()}, {"edges", edges_path.string()}};
  j["results"] = {
      {"width", image.width()},
      {"height", image.height()},
      {"magnitude_max", peak},
      {"threshold", d.edges.threshold},
      {"edge_pixels", d.edges.count()},
  };
  j["outputs"]["sidecar"] = sidecar_path.string();
  write_json(j, sidecar_path);
  return j;
}

// ---------------------------------------------------------------- noise

struct NoiseArgs {
  std::string input;
  std::string output;
  std::string kind = "gaussian";
  double parameter = 0.01;
  std::uint64_t seed = 0;
};

Json run_noise(const NoiseArgs& a) {
  const cchs::NoiseSpec spec{cchs::parse_noise_kind(a.kind), a.parameter, a.seed};
  const cchs::ColorImage clean = cchs::load_image(a.input);
  const cchs::ColorImage noisy = cchs::corrupt(clean, spec);
  const fs::path out(a.output);
  ensure_parent(out);
  cchs::save_image(noisy, out, 16);
  const fs::path sidecar = fs::path(a.output + ".json");
  Json j = report("noise");
  j["parameters"] = {
      {"input", a.input},
      {"noise", cchs::to_string(spec.kind)},
      {"noise_param", spec.parameter},
      {"seed", spec.seed},
  };
  j["outputs"] = {{"image", out.string()}, {"sidecar", sidecar.string()}};
  j["results"] = {{"snr_db", cchs::snr(clean, noisy)}};
  write_json(j, sidecar);
  return j;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string detected;
  std::string reference;
  std::string reference_kind = "ground-truth";
  std::optional<std::string> report_path;
  std::optional<std::string> csv_path;
  // Metadata columns of the metric table; the CLI records them, it does not derive them.
  std::string image;
  std::string method;
  std::string noise;
  std::optional<double> param;
  std::optional<std::uint64_t> seed;
  std::optional<double> snr_db;
  std::optional<std::string> clean_image;
  std::optional<std::string> noisy_image;
};

constexpr std::array<const char*, 10> kCsvColumns{"image", "method", "noise", "param", "seed",
                                                  "psnr", "ssim", "fsim", "f", "snr"};

std::string csv_field(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  if (v.is_number_float()) {
    std::ostringstream out;
    out << std::setprecision(17) << v.get<double>();
    return out.str();
  }
  return v.dump();
}

// Appends one row, writing the header first when the file is new or empty.
void append_csv(const Json& row, const fs::path& path) {
  std::error_code ec;
  const bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw cchs::IoError("cannot open '" + path.string() + "' for writing");
  std::string line;
  if (fresh) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) line += (i ? "," : "") + std::string(kCsvColumns[i]);
    out << line << '\n';
  }
  line.clear();
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) line += (i ? "," : "") + csv_field(row[kCsvColumns[i]]);
  out << line << '\n';
  if (!out) throw cchs::IoError("failed to write '" + path.string() + "'");
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json run_evaluate(const EvaluateArgs& a) {
  if (a.reference_kind != "ground-truth" && a.reference_kind != "clean-detection") {
    throw cchs::ParameterError("--reference-kind must be ground-truth or clean-detection");
  }
  const cchs::Plane detected = cchs::load_plane(a.detected);
  const cchs::Plane reference = cchs::load_plane(a.reference);
  if (!detected.same_shape(reference)) throw cchs::ParameterError("detected and reference differ in size");
  const cchs::EdgeMap detected_edges = cchs::EdgeMap::from_plane(detected);
  const cchs::EdgeMap reference_edges = cchs::EdgeMap::from_plane(reference);

  Json j = report("evaluate");
  j["parameters"] = {
      {"detected", a.detected},
      {"reference", a.reference},
      {"reference_kind", a.reference_kind},
      {"pratt_alpha", cchs::kPrattAlpha},
  };
  Json results = {
      {"psnr_db", cchs::psnr(detected, reference)},
      {"fsim", cchs::fsim(detected, reference)},
      {"pratt_f", cchs::pratt_f(detected_edges, reference_edges)},
      {"detected_edge_pixels", detected_edges.count()},
      {"reference_edge_pixels", reference_edges.count()},
  };
  if (detected.width() >= 11 && detected.height() >= 11) {
    results["ssim"] = cchs::ssim(detected, reference);
  } else {
    results["ssim"] = nullptr;
  }
  j["results"] = results;

  if (a.clean_image.has_value() != a.noisy_image.has_value()) {
    throw cchs::ParameterError("--clean-image and --noisy-image go together");
  }
  if (a.clean_image && a.snr_db) throw cchs::ParameterError("give --snr or the image pair, not both");
  std::optional<double> snr_db = a.snr_db;
  if (a.clean_image) {
    const cchs::ColorImage clean = cchs::load_image(*a.clean_image);
    const cchs::ColorImage noisy = cchs::load_image(*a.noisy_image);
    if (clean.width() != noisy.width() || clean.height() != noisy.height()) {
      throw cchs::ParameterError("clean and noisy images differ in size");
    }
    snr_db = cchs::snr(clean, noisy);
  }
  const auto text = [](const std::string& v) { return v.empty() ? Json(nullptr) : Json(v); };
  j["row"] = {
      {"image", text(a.image)},
      {"method", text(a.method)},
      {"noise", text(a.noise)},
      {"param", optional_json(a.param)},
      {"seed", optional_json(a.seed)},
      {"psnr", results["psnr_db"]},
      {"ssim", results["ssim"]},
      {"fsim", results["fsim"]},
      {"f", results["pratt_f"]},
      {"snr", optional_json(snr_db)},
  };

  Json outputs = Json::object();
  if (a.report_path) {
    ensure_parent(*a.report_path);
    outputs["report"] = *a.report_path;
  }
  if (a.csv_path) {
    ensure_parent(*a.csv_path);
    append_csv(j["row"], *a.csv_path);
    outputs["csv"] = *a.csv_path;
  }
  if (!outputs.empty()) j["outputs"] = outputs;
  if (a.report_path) write_json(j, *a.report_path);
  return j;
}

// ---------------------------------------------------------------- flow

struct FlowArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string method = "ched";
  std::string color = "255,0,0";
  double y1 = cchs::kFlowPretreatScale;
  double y2 = cchs::kFlowPretreatScale;
  int window = cchs::kDefaultFlowWindow;
  bool raw = false;
  std::string colorspace = "lab";
};

std::vector<fs::path> frame_list(const std::vector<std::string>& inputs) {
  std::vector<fs::path> frames;
  if (inputs.size() == 1 && fs::is_directory(inputs.front())) {
    for (const auto& entry : fs::directory_iterator(inputs.front())) {
      if (!entry.is_regular_file()) continue;
      std::string ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
      if (ext == ".png" || ext == ".ppm") frames.push_back(entry.path());
    }
    std::sort(frames.begin(), frames.end());
  } else {
    frames.assign(inputs.begin(), inputs.end());
  }
  if (frames.size() < 2) throw cchs::ParameterError("flow needs at least two frames");
  return frames;
}

Json run_flow(const FlowArgs& a) {
  const cchs::Method method = cchs::parse_method(a.method);
  const cchs::ColorSpace space = parse_space(a.colorspace);
  const auto rgb = parse_color(a.color);
  const std::vector<fs::path> frames = frame_list(a.inputs);
  cchs::ColorFlowOptions options;
  options.pretreated = !a.raw;
  options.method = method;
  options.scales = cchs::ScalePair(a.y1, a.y2);
  options.lk.window = a.window;
  const cchs::ColorVector nu = cchs::color_to_nu(rgb, space);

  Json pairs = Json::array();
  cchs::ColorImage previous = cchs::to_color_space(cchs::load_image(frames[0]), space);
  for (std::size_t i = 1; i < frames.size(); ++i) {
    cchs::ColorImage current = cchs::to_color_space(cchs::load_image(frames[i]), space);
    const cchs::FlowField flow = cchs::color_flow(previous, current, nu, options);
    std::string stem = a.output;
    if (frames.size() > 2) {
      std::ostringstream index;
      index << '_' << std::setw(4) << std::setfill('0') << (i - 1);
      stem += index.str();
    }
    const fs::path flo = fs::path(stem + ".flo");
    const fs::path wheel = fs::path(stem + "_color.png");
    ensure_parent(flo);
    cchs::write_flo(flow, flo.string());
    const double max_norm = cchs::max_flow_norm(flow);
    cchs::save_image(cchs::flow_to_color(flow, max_norm), wheel, 8);
    double sum_u = 0.0;
    double sum_v = 0.0;
    const std::size_t valid = flow.valid_count();
    for (int r = 0; r < flow.height(); ++r) {
      for (int c = 0; c < flow.width(); ++c) {
        if (!flow.is_valid(r, c)) continue;
        sum_u += flow.u(r, c);
        sum_v += flow.v(r, c);
      }
    }
    pairs.push_back({
        {"first", frames[i - 1].string()},
        {"second", frames[i].string()},
        {"flo", flo.string()},
        {"color", wheel.string()},
        {"valid_pixels", valid},
        {"mean_u", valid ? sum_u / static_cast<double>(valid) : 0.0},
        {"mean_v", valid ? sum_v / static_cast<double>(valid) : 0.0},
        {"max_norm", max_norm},
    });
    previous = std::move(current);
  }
  const fs::path sidecar = fs::path(a.output + ".json");
  Json j = report("flow");
  Json inputs = Json::array();
  for (const auto& f : frames) inputs.push_back(f.string());
  j["parameters"] = {
      {"inputs", inputs},
      {"pretreated", !a.raw},
      {"method", cchs::to_string(method)},
      {"color", color_json(rgb)},
      {"colorspace", cchs::to_string(space)},
      {"y1", a.y1},
      {"y2", a.y2},
      {"window", a.window},
  };
  j["outputs"] = {{"sidecar", sidecar.string()}};
  j["results"] = {{"pairs", pairs}};
  write_json(j, sidecar);
  return j;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string kind = "rectangles";
  std::string output;
  int width = 0;
  int height = 0;
  double edge = 0.0;
  std::string left = "204,26,26";
  std::string right = "26,51,204";
  double dx = 2.0;
  double dy = 0.0;
  int size = 96;
};

Json run_synth(const SynthArgs& a) {
  Json j = report("synth");
  Json outputs;
  const fs::path image_path = fs::path(a.output + ".png");
  ensure_parent(image_path);
  Json parameters = {{"kind", a.kind}};
  if (a.kind == "rectangles") {
    const int w = a.width > 0 ? a.width : 320;
    const int h = a.height > 0 ? a.height : 240;
    const cchs::RectanglesFixture fx = cchs::rectangles(w, h);
    cchs::save_image(fx.image, image_path, 8);
    outputs["image"] = image_path.string();
    Json shapes = Json::array();
    for (std::size_t i = 0; i < fx.shapes.size(); ++i) {
      const auto& s = fx.shapes[i];
      const fs::path truth = fs::path(a.output + "_truth_" + s.name + ".png");
      cchs::save_plane_png(fx.truth[i].to_plane(), truth, 8);
      shapes.push_back({{"name", s.name},
                        {"color", color_json(s.color)},
                        {"x0", s.x0},
                        {"y0", s.y0},
                        {"width", s.width},
                        {"height", s.height},
                        {"curvature", s.curvature},
                        {"truth", truth.string()},
                        {"truth_pixels", fx.truth[i].count()},
                        {"perimeter", s.perimeter()}});
    }
    parameters["width"] = w;
    parameters["height"] = h;
    j["results"] = {{"shapes", shapes}};
  } else if (a.kind == "step") {
    const int w = a.width > 0 ? a.width : 64;
    const int h = a.height > 0 ? a.height : 64;
    const double edge = a.edge > 0.0 ? a.edge : w / 2.0;
    const auto left = parse_color(a.left);
    const auto right = parse_color(a.right);
    const cchs::StepEdgeFixture fx = cchs::step_edge(w, h, left, right, edge);
    cchs::save_image(fx.image, image_path, 16);
    const fs::path truth = fs::path(a.output + "_truth.png");
    cchs::save_plane_png(fx.truth.to_plane(), truth, 8);
    outputs["image"] = image_path.string();
    outputs["truth"] = truth.string();
    parameters["width"] = w;
    parameters["height"] = h;
    parameters["edge"] = edge;
    parameters["left"] = color_json(left);
    parameters["right"] = color_json(right);
  } else if (a.kind == "squares") {
    const cchs::SquarePairFixture fx = cchs::translated_square_pair(a.dx, a.dy, a.size);
    const fs::path first = fs::path(a.output + "_1.png");
    const fs::path second = fs::path(a.output + "_2.png");
    cchs::save_image(fx.first, first, 16);
    cchs::save_image(fx.second, second, 16);
    outputs["first"] = first.string();
    outputs["second"] = second.string();
    parameters["dx"] = a.dx;
    parameters["dy"] = a.dy;
    parameters["size"] = a.size;
    j["results"] = {{"x0", fx.x0}, {"y0", fx.y0}, {"side", fx.side}, {"color", color_json(cchs::kSquareColor)}};
  } else {
    throw cchs::ParameterError("unknown fixture '" + a.kind + "'");
  }
  j["parameters"] = parameters;
  j["outputs"] = outputs;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Color Clifford Hardy signal edge detection, noise, evaluation and flow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cchs 1.0.0");

  DetectArgs detect_args;
  auto* detect = app.add_subcommand("detect", "Color-selective edge detection");
  detect->add_option("input", detect_args.input, "Input image (PNG or PPM)")->required();
  detect->add_option("output", detect_args.output, "Output prefix")->required();
  detect->add_option("--method", detect_args.method, "ched | mched | mased1 | mased2 | mased3")
      ->capture_default_str();
  detect->add_option("--color", detect_args.color, "Selected color R,G,B in 0..255")->capture_default_str();
  detect->add_option("--y1", detect_args.y1, "Poisson scale along x1 (method default when omitted)");
  detect->add_option("--y2", detect_args.y2, "Poisson scale along x2 (method default when omitted)");
  detect->add_option("--nms-radius", detect_args.nms_radius, "Suppression radius")->capture_default_str();
  detect->add_option("--threshold-percentile", detect_args.percentile, "Binarization percentile")
      ->capture_default_str();
  detect->add_option("--threshold", detect_args.threshold, "Explicit magnitude threshold");
  detect->add_option("--colorspace", detect_args.colorspace, "lab | raw-rgb")->capture_default_str();

  NoiseArgs noise_args;
  auto* noise = app.add_subcommand("noise", "Add seeded noise to an image");
  noise->add_option("input", noise_args.input, "Input image")->required();
  noise->add_option("output", noise_args.output, "Output image (.png or .ppm)")->required();
  noise->add_option("--noise", noise_args.kind, "gaussian | speckle | salt_pepper | poisson")
      ->capture_default_str();
  noise->add_option("--noise-param", noise_args.parameter, "Variance or density")->capture_default_str();
  noise->add_option("--seed", noise_args.seed, "Random seed")->capture_default_str();

  EvaluateArgs evaluate_args;
  auto* evaluate = app.add_subcommand("evaluate", "Compare an edge map with a reference");
  evaluate->add_option("detected", evaluate_args.detected, "Detected edge map")->required();
  evaluate->add_option("reference", evaluate_args.reference, "Reference edge map")->required();
  evaluate->add_option("--reference-kind", evaluate_args.reference_kind, "ground-truth | clean-detection")
      ->capture_default_str();
  evaluate->add_option("--report", evaluate_args.report_path, "Also write the report to this file");
  evaluate->add_option("--csv", evaluate_args.csv_path, "Append the metric row to this CSV file");
  evaluate->add_option("--image", evaluate_args.image, "Row metadata: source image name");
  evaluate->add_option("--method", evaluate_args.method, "Row metadata: detector");
  evaluate->add_option("--noise", evaluate_args.noise, "Row metadata: noise kind");
  evaluate->add_option("--param", evaluate_args.param, "Row metadata: noise parameter");
  evaluate->add_option("--seed", evaluate_args.seed, "Row metadata: noise seed");
  evaluate->add_option("--snr", evaluate_args.snr_db, "Row metadata: SNR in dB");
  evaluate->add_option("--clean-image", evaluate_args.clean_image, "Clean image, to compute the SNR");
  evaluate->add_option("--noisy-image", evaluate_args.noisy_image, "Noisy image, to compute the SNR");

  FlowArgs flow_args;
  auto* flow = app.add_subcommand("flow", "Lucas-Kanade flow with edge pretreatment");
  flow->add_option("inputs", flow_args.inputs, "Two frames, or one directory of frames")->required();
  flow->add_option("--output,-o", flow_args.output, "Output prefix")->required();
  flow->add_option("--method", flow_args.method, "Pretreatment detector")->capture_default_str();
  flow->add_option("--color", flow_args.color, "Selected color R,G,B in 0..255")->capture_default_str();
  flow->add_option("--y1", flow_args.y1, "Pretreatment scale along x1")->capture_default_str();
  flow->add_option("--y2", flow_args.y2, "Pretreatment scale along x2")->capture_default_str();
  flow->add_option("--window", flow_args.window, "LK window (odd)")->capture_default_str();
  flow->add_flag("--raw", flow_args.raw, "Run LK on frame luma without pretreatment");
  flow->add_option("--colorspace", flow_args.colorspace, "lab | raw-rgb")->capture_default_str();

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Write a synthetic fixture");
  synth->add_option("kind", synth_args.kind, "rectangles | step | squares")->required();
  synth->add_option("output", synth_args.output, "Output prefix")->required();
  synth->add_option("--width", synth_args.width, "Image width");
  synth->add_option("--height", synth_args.height, "Image height");
  synth->add_option("--edge", synth_args.edge, "Step position in pixels (step)");
  synth->add_option("--left", synth_args.left, "Left color R,G,B (step)")->capture_default_str();
  synth->add_option("--right", synth_args.right, "Right color R,G,B (step)")->capture_default_str();
  synth->add_option("--dx", synth_args.dx, "Horizontal shift (squares)")->capture_default_str();
  synth->add_option("--dy", synth_args.dy, "Vertical shift (squares)")->capture_default_str();
  synth->add_option("--size", synth_args.size, "Frame size (squares)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParameter;
  }

  try {
    Json j;
    if (*detect) j = run_detect(detect_args);
    if (*noise) j = run_noise(noise_args);
    if (*evaluate) j = run_evaluate(evaluate_args);
    if (*flow) j = run_flow(flow_args);
    if (*synth) j = run_synth(synth_args);
    std::cout << j.dump(2) << '\n';
    return kOk;
  } catch (const cchs::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParameter;
  } catch (const cchs::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const cchs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
