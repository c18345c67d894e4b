// Python bindings. Images are float64 arrays of shape (H, W, 3), planes are
// (H, W), edge maps are bool (H, W). Colors are sRGB triples in [0, 1].

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "cchs/color_algebra.hpp"
#include "cchs/detectors.hpp"
#include "cchs/error.hpp"
#include "cchs/flow.hpp"
#include "cchs/image_io.hpp"
#include "cchs/metrics.hpp"
#include "cchs/noise.hpp"
#include "cchs/scale_space.hpp"
#include "cchs/synth.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;

cchs::ColorSpace parse_space(const std::string& name) {
  if (name == "lab") return cchs::ColorSpace::kLab;
  if (name == "raw-rgb") return cchs::ColorSpace::kRawRgb;
  throw cchs::ParameterError("unknown color space '" + name + "'");
}

cchs::Plane to_plane(const Array& a) {
  if (a.ndim() != 2) throw cchs::ParameterError("expected a 2-D array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  cchs::Plane p(w, h);
  const double* src = a.data();
  std::copy(src, src + p.size(), p.values().begin());
  return p;
}

Array from_plane(const cchs::Plane& p) {
  Array out({p.height(), p.width()});
  std::copy(p.values().begin(), p.values().end(), out.mutable_data());
  return out;
}

cchs::ColorImage to_image(const Array& a, cchs::ColorSpace space = cchs::ColorSpace::kRawRgb) {
  if (a.ndim() != 3 || a.shape(2) != 3) throw cchs::ParameterError("expected an (H, W, 3) array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  std::array<cchs::Plane, 3> ch{cchs::Plane(w, h), cchs::Plane(w, h), cchs::Plane(w, h)};
  const auto v = a.unchecked<3>();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < 3; ++k) ch[static_cast<std::size_t>(k)](r, c) = v(r, c, k);
    }
  }
  return cchs::ColorImage(std::move(ch[0]), std::move(ch[1]), std::move(ch[2]), space);
}

Array from_image(const cchs::ColorImage& img) {
  Array out({img.height(), img.width(), 3});
  auto v = out.mutable_unchecked<3>();
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      for (int k = 0; k < 3; ++k) v(r, c, k) = img.channel(k)(r, c);
    }
  }
  return out;
}

cchs::EdgeMap to_edges(const BoolArray& a) {
  if (a.ndim() != 2) throw cchs::ParameterError("expected a 2-D boolean array");
  cchs::EdgeMap e(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  const auto v = a.unchecked<2>();
  for (int r = 0; r < e.height(); ++r) {
    for (int c = 0; c < e.width(); ++c) e.set(r, c, v(r, c));
  }
  return e;
}

BoolArray from_edges(const cchs::EdgeMap& e) {
  BoolArray out({e.height(), e.width()});
  auto v = out.mutable_unchecked<2>();
  for (int r = 0; r < e.height(); ++r) {
    for (int c = 0; c < e.width(); ++c) v(r, c) = e.at(r, c);
  }
  return out;
}

cchs::ScalePair scales_for(cchs::Method m, std::optional<double> y1, std::optional<double> y2) {
  const cchs::ScalePair d = cchs::default_scales(m);
  return {y1.value_or(d.y1()), y2.value_or(d.y2())};
}

py::tuple flow_tuple(const cchs::FlowField& f) {
  BoolArray valid({f.height(), f.width()});
  std::copy(f.valid.begin(), f.valid.end(), valid.mutable_data());
  return py::make_tuple(from_plane(f.u), from_plane(f.v), valid);
}

}  // namespace

PYBIND11_MODULE(_cchs, m) {
  m.doc() = "Color-selective edge detection with the color Clifford Hardy signal";

  py::register_exception<cchs::ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<cchs::IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<cchs::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.attr("METHODS") = py::make_tuple("ched", "mched", "mased1", "mased2", "mased3");
  m.attr("FLOW_PRETREAT_SCALE") = cchs::kFlowPretreatScale;

  m.def("cchs_transform", [](const Array& image, double y1, double y2) {
        const cchs::CchsField f = cchs::cchs_transform(to_image(image), cchs::ScalePair(y1, y2));
        Array out({6, f.height(), f.width()});
        double* dst = out.mutable_data();
        for (const cchs::Plane& p : f.a) dst = std::copy(p.values().begin(), p.values().end(), dst);
        return out;
      },
      py::arg("image"), py::arg("y1") = 2.0, py::arg("y2") = 2.0,
      "The six signal planes A1..A6 as a (6, H, W) array.");

  m.def("clifford_product", [](const std::array<double, 6>& sample, const std::array<double, 3>& nu) {
        const cchs::CliffordProduct p = cchs::clifford_color_product(sample, cchs::ColorVector(nu[0], nu[1], nu[2]));
        return py::make_tuple(p.sc, p.bi);
      },
      py::arg("sample"), py::arg("nu"), "Scalar part and 12 bivector coefficients of sample * nu.");

  m.def("gradient", [](const Array& image, const std::array<double, 3>& color, const std::string& method,
                       std::optional<double> y1, std::optional<double> y2, const std::string& colorspace) {
        const cchs::Method mt = cchs::parse_method(method);
        const cchs::ColorSpace space = parse_space(colorspace);
        const cchs::ColorImage img = cchs::to_color_space(to_image(image), space);
        const cchs::GradientMap g =
            cchs::gradient_map(img, cchs::color_to_nu(color, space), mt, scales_for(mt, y1, y2));
        py::object direction = py::none();
        if (g.direction) direction = from_plane(*g.direction);
        return py::make_tuple(from_plane(g.magnitude), direction);
      },
      py::arg("image"), py::arg("color"), py::arg("method") = "ched", py::arg("y1") = py::none(),
      py::arg("y2") = py::none(), py::arg("colorspace") = "lab",
      "Gradient magnitude and direction (or None) before suppression.");

  m.def("detect", [](const Array& image, const std::array<double, 3>& color, const std::string& method,
                     std::optional<double> y1, std::optional<double> y2, double nms_radius, double percentile,
                     std::optional<double> threshold, const std::string& colorspace) {
        const cchs::Method mt = cchs::parse_method(method);
        const cchs::ColorSpace space = parse_space(colorspace);
        const cchs::ColorImage img = cchs::to_color_space(to_image(image), space);
        cchs::DetectOptions opt;
        opt.method = mt;
        opt.scales = scales_for(mt, y1, y2);
        opt.nms.radius = nms_radius;
        opt.nms.percentile = percentile;
        opt.nms.threshold = threshold;
        const cchs::Detection d = cchs::detect(img, cchs::color_to_nu(color, space), opt);
        py::dict out;
        out["magnitude"] = from_plane(d.gradient.magnitude);
        out["edges"] = from_edges(d.edges);
        out["threshold"] = d.edges.threshold;
        out["scales"] = py::make_tuple(d.scales.y1(), d.scales.y2());
        return out;
      },
      py::arg("image"), py::arg("color"), py::arg("method") = "ched", py::arg("y1") = py::none(),
      py::arg("y2") = py::none(), py::arg("nms_radius") = 1.5, py::arg("percentile") = 90.0,
      py::arg("threshold") = py::none(), py::arg("colorspace") = "lab",
      "Edge detection for the selected color; returns magnitude, edges, threshold and scales.");

  m.def("nms", [](const Array& magnitude, double radius, double percentile, std::optional<double> threshold) {
        cchs::NmsOptions opt;
        opt.radius = radius;
        opt.percentile = percentile;
        opt.threshold = threshold;
        return from_edges(cchs::nms(cchs::GradientMap{to_plane(magnitude), std::nullopt}, opt));
      },
      py::arg("magnitude"), py::arg("radius") = 1.5, py::arg("percentile") = 90.0,
      py::arg("threshold") = py::none());

  m.def("srgb_to_lab", &cchs::srgb_to_lab, py::arg("rgb"));
  m.def("to_lab", [](const Array& image) { return from_image(cchs::to_lab(to_image(image))); },
        py::arg("image"), "sRGB image to normalized Lab in [0, 1].");
  m.def("load_image", [](const std::string& path) { return from_image(cchs::load_image(path)); },
        py::arg("path"));
  m.def("save_image", [](const Array& image, const std::string& path, int bit_depth) {
        cchs::save_image(to_image(image), path, bit_depth);
      },
      py::arg("image"), py::arg("path"), py::arg("bit_depth") = 16);

  m.def("corrupt", [](const Array& image, const std::string& kind, double parameter, std::uint64_t seed) {
        return from_image(cchs::corrupt(to_image(image), {cchs::parse_noise_kind(kind), parameter, seed}));
      },
      py::arg("image"), py::arg("kind"), py::arg("parameter") = 0.0, py::arg("seed") = 0);
  m.def("snr", [](const Array& clean, const Array& noisy) { return cchs::snr(to_image(clean), to_image(noisy)); },
        py::arg("clean"), py::arg("noisy"));

  m.def("psnr", [](const Array& a, const Array& b) { return cchs::psnr(to_plane(a), to_plane(b)); });
  m.def("ssim", [](const Array& a, const Array& b) { return cchs::ssim(to_plane(a), to_plane(b)); });
  m.def("fsim", [](const Array& a, const Array& b) { return cchs::fsim(to_plane(a), to_plane(b)); });
  m.def("pratt_f", [](const BoolArray& detected, const BoolArray& truth, double alpha) {
        return cchs::pratt_f(to_edges(detected), to_edges(truth), alpha);
      },
      py::arg("detected"), py::arg("truth"), py::arg("alpha") = cchs::kPrattAlpha);

  m.def("lk_flow", [](const Array& p1, const Array& p2, int window, int iterations, double tolerance) {
        cchs::LkOptions opt;
        opt.window = window;
        opt.iterations = iterations;
        opt.tolerance = tolerance;
        return flow_tuple(cchs::lk_flow(to_plane(p1), to_plane(p2), opt));
      },
      py::arg("p1"), py::arg("p2"), py::arg("window") = cchs::kDefaultFlowWindow, py::arg("iterations") = 10,
      py::arg("tolerance") = 1e-3, "Returns (u, v, valid).");

  m.def("color_flow", [](const Array& first, const Array& second, const std::array<double, 3>& color,
                         bool pretreated, const std::string& method, double y1, double y2, int window,
                         const std::string& colorspace) {
        const cchs::ColorSpace space = parse_space(colorspace);
        cchs::ColorFlowOptions opt;
        opt.pretreated = pretreated;
        opt.method = cchs::parse_method(method);
        opt.scales = cchs::ScalePair(y1, y2);
        opt.lk.window = window;
        return flow_tuple(cchs::color_flow(cchs::to_color_space(to_image(first), space),
                                           cchs::to_color_space(to_image(second), space),
                                           cchs::color_to_nu(color, space), opt));
      },
      py::arg("first"), py::arg("second"), py::arg("color"), py::arg("pretreated") = true,
      py::arg("method") = "ched", py::arg("y1") = cchs::kFlowPretreatScale,
      py::arg("y2") = cchs::kFlowPretreatScale, py::arg("window") = cchs::kDefaultFlowWindow,
      py::arg("colorspace") = "raw-rgb", "Returns (u, v, valid).");

  m.def("rectangles", [](int width, int height) {
        const cchs::RectanglesFixture fx = cchs::rectangles(width, height);
        py::dict truth;
        for (std::size_t i = 0; i < fx.shapes.size(); ++i) truth[py::str(fx.shapes[i].name)] = from_edges(fx.truth[i]);
        return py::make_tuple(from_image(fx.image), truth);
      },
      py::arg("width") = 320, py::arg("height") = 240, "Returns (image, {name: truth}).");
  m.def("step_edge", [](int width, int height, const std::array<double, 3>& left,
                        const std::array<double, 3>& right, double edge) {
        const cchs::StepEdgeFixture fx = cchs::step_edge(width, height, left, right, edge);
        return py::make_tuple(from_image(fx.image), from_edges(fx.truth));
      },
      py::arg("width"), py::arg("height"), py::arg("left"), py::arg("right"), py::arg("edge"));
  m.def("translated_square_pair", [](double dx, double dy, int size) {
        const cchs::SquarePairFixture fx = cchs::translated_square_pair(dx, dy, size);
        return py::make_tuple(from_image(fx.first), from_image(fx.second));
      },
      py::arg("dx"), py::arg("dy"), py::arg("size") = 96);
  m.attr("SQUARE_COLOR") = cchs::kSquareColor;
}
