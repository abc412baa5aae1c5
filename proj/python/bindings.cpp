#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "beadpath/analysis.hpp"
#include "beadpath/backpressure.hpp"
#include "beadpath/io.hpp"
#include "beadpath/pipeline.hpp"

namespace py = pybind11;
using namespace beadpath;

namespace {

using RingMm = std::vector<std::pair<double, double>>;

// Rings in mm: outer boundaries counter-clockwise, holes clockwise.
PolygonSet outline_from_rings(const std::vector<RingMm>& rings) {
  PolygonSet s;
  for (const auto& r : rings) s.rings.push_back(make_ring_mm(r));
  validate(s);
  return s;
}

std::vector<RingMm> rings_to_mm(const PolygonSet& s) {
  std::vector<RingMm> out;
  for (const auto& r : s.rings) {
    RingMm ring;
    for (const auto& p : r) ring.push_back({coord_to_mm(double(p.x)), coord_to_mm(double(p.y))});
    out.push_back(ring);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_beadpath, m) {
  m.doc() = "Adaptive bead width toolpaths";

  py::register_exception<InvalidPolygon>(m, "InvalidPolygon", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<WidthUnreachable>(m, "WidthUnreachable", PyExc_ValueError);

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init<>())
      .def_readwrite("name", &SchemeConfig::name)
      .def_readwrite("w_star", &SchemeConfig::w_star)
      .def_readwrite("n", &SchemeConfig::n)
      .def_readwrite("c", &SchemeConfig::c)
      .def_readwrite("shell", &SchemeConfig::shell)
      .def_readwrite("widening", &SchemeConfig::widening)
      .def_readwrite("w_min", &SchemeConfig::w_min)
      .def_readwrite("r_min", &SchemeConfig::r_min);

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("scheme", &PipelineConfig::scheme)
      .def_readwrite("alpha_max_deg", &PipelineConfig::alpha_max_deg)
      .def_readwrite("d_discretization", &PipelineConfig::d_discretization)
      .def_readwrite("d_max_unmarked", &PipelineConfig::d_max_unmarked)
      .def_readwrite("d_max_transition", &PipelineConfig::d_max_transition)
      .def_readwrite("t_beading", &PipelineConfig::t_beading)
      .def_readwrite("retreat_ratio", &PipelineConfig::retreat_ratio);

  py::class_<ExtrusionSite>(m, "ExtrusionSite")
      .def(py::init<>())
      .def_property(
          "x", [](const ExtrusionSite& s) { return coord_to_mm(double(s.pos.x)); },
          [](ExtrusionSite& s, double v) { s.pos.x = mm_to_coord(v); })
      .def_property(
          "y", [](const ExtrusionSite& s) { return coord_to_mm(double(s.pos.y)); },
          [](ExtrusionSite& s, double v) { s.pos.y = mm_to_coord(v); })
      .def_readwrite("w", &ExtrusionSite::w)
      .def_readwrite("index", &ExtrusionSite::index)
      .def_readwrite("center", &ExtrusionSite::center)
      .def("__repr__", [](const ExtrusionSite& s) {
        return "ExtrusionSite(" + std::to_string(coord_to_mm(double(s.pos.x))) + ", " +
               std::to_string(coord_to_mm(double(s.pos.y))) + ", w=" + std::to_string(s.w) + ")";
      });

  py::class_<ExtrusionLine>(m, "ExtrusionLine")
      .def(py::init<>())
      .def_readwrite("sites", &ExtrusionLine::sites)
      .def_readwrite("closed", &ExtrusionLine::closed)
      .def_readwrite("index", &ExtrusionLine::index)
      .def_readwrite("dot", &ExtrusionLine::dot)
      .def_readwrite("dot_width", &ExtrusionLine::dot_width)
      .def("length", &ExtrusionLine::length);

  py::class_<AccuracyReport>(m, "AccuracyReport")
      .def_readonly("overfill_area", &AccuracyReport::overfill_area)
      .def_readonly("underfill_area", &AccuracyReport::underfill_area)
      .def_readonly("covered_area", &AccuracyReport::covered_area)
      .def_readonly("outline_area", &AccuracyReport::outline_area)
      .def_readonly("overfill_percent", &AccuracyReport::overfill_percent)
      .def_readonly("underfill_percent", &AccuracyReport::underfill_percent)
      .def_property_readonly("overfill", [](const AccuracyReport& a) { return rings_to_mm(a.overfill); })
      .def_property_readonly("underfill", [](const AccuracyReport& a) { return rings_to_mm(a.underfill); });

  py::class_<ToolpathStatistics>(m, "ToolpathStatistics")
      .def_readonly("width_mean", &ToolpathStatistics::width_mean)
      .def_readonly("width_sigma", &ToolpathStatistics::width_sigma)
      .def_readonly("width_histogram", &ToolpathStatistics::width_histogram)
      .def_readonly("angle_histogram", &ToolpathStatistics::angle_histogram)
      .def_readonly("corners", &ToolpathStatistics::corners)
      .def_readonly("open_paths", &ToolpathStatistics::open_paths)
      .def_readonly("closed_paths", &ToolpathStatistics::closed_paths)
      .def_readonly("total_length", &ToolpathStatistics::total_length);

  py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
      .def_readonly("overfill_area", &MonteCarloEstimate::overfill_area)
      .def_readonly("underfill_area", &MonteCarloEstimate::underfill_area)
      .def_readonly("covered_area", &MonteCarloEstimate::covered_area);

  py::class_<FlowModel>(m, "FlowModel")
      .def(py::init<>())
      .def_readwrite("v0", &FlowModel::v0)
      .def_readwrite("w0", &FlowModel::w0)
      .def_readwrite("h", &FlowModel::h)
      .def_readwrite("k", &FlowModel::k)
      .def_readwrite("flow_factor", &FlowModel::flow_factor)
      .def_readwrite("clamp_min_flow", &FlowModel::clamp_min_flow);

  py::class_<GcodeOptions>(m, "GcodeOptions")
      .def(py::init<>())
      .def_readwrite("model", &GcodeOptions::model)
      .def_readwrite("filament_diameter", &GcodeOptions::filament_diameter)
      .def_readwrite("max_piece", &GcodeOptions::max_piece)
      .def_readwrite("travel_speed", &GcodeOptions::travel_speed)
      .def_readwrite("start_x", &GcodeOptions::start_x)
      .def_readwrite("start_y", &GcodeOptions::start_y);

  m.def(
      "generate",
      [](const std::vector<RingMm>& rings, const PipelineConfig& cfg) {
        PolygonSet outline = outline_from_rings(rings);
        py::gil_scoped_release release;
        return generate_toolpaths(outline, cfg);
      },
      py::arg("rings"), py::arg("config") = PipelineConfig{}, "Toolpaths for an outline given as rings in mm.");

  m.def(
      "analyze",
      [](const std::vector<ExtrusionLine>& lines, const std::vector<RingMm>& rings) {
        return compute_accuracy(lines, outline_from_rings(rings));
      },
      py::arg("lines"), py::arg("rings"));

  m.def("statistics", &compute_statistics, py::arg("lines"));

  m.def(
      "monte_carlo",
      [](const std::vector<ExtrusionLine>& lines, const std::vector<RingMm>& rings, int samples, std::uint64_t seed) {
        return monte_carlo_accuracy(lines, outline_from_rings(rings), samples, seed);
      },
      py::arg("lines"), py::arg("rings"), py::arg("samples") = 100000, py::arg("seed") = 1);

  m.def(
      "speed_for_width", [](const FlowModel& model, double w) { return speed_for_width(model, w).speed; },
      py::arg("model"), py::arg("w"), "Movement speed in mm/s for a bead width in mm.");

  m.def(
      "gcode",
      [](const std::vector<ExtrusionLine>& lines, const GcodeOptions& opt) {
        return emit_gcode(order_greedy(lines, opt.start_x, opt.start_y), opt);
      },
      py::arg("lines"), py::arg("options") = GcodeOptions{});

  m.def(
      "render_svg",
      [](const std::vector<ExtrusionLine>& lines, const std::vector<RingMm>& rings, double w_star, bool overlay) {
        PolygonSet outline;
        if (!rings.empty()) outline = outline_from_rings(rings);
        SvgOptions opt;
        opt.w_star = w_star;
        AccuracyReport acc;
        if (overlay) {
          if (outline.empty()) throw std::invalid_argument("overlay needs an outline");
          acc = compute_accuracy(lines, outline);
          opt.overlay = &acc;
        }
        return render_svg(lines, outline, opt);
      },
      py::arg("lines"), py::arg("rings") = std::vector<RingMm>{}, py::arg("w_star") = 0.4,
      py::arg("overlay") = false);

  m.def(
      "report_json",
      [](const std::vector<ExtrusionLine>& lines, const std::vector<RingMm>& rings) {
        return report_to_json(compute_accuracy(lines, outline_from_rings(rings)), compute_statistics(lines));
      },
      py::arg("lines"), py::arg("rings"), "Accuracy report and statistics as JSON text.");

  m.def(
      "parse_layer",
      [](const std::string& text) {
        LayerFile layer = parse_layer(text);
        PipelineConfig cfg;
        apply_layer_config(layer, cfg);
        return py::make_tuple(rings_to_mm(layer.outline), cfg);
      },
      py::arg("text"), "Rings in mm and the pipeline config of a layer file.");

  m.def("toolpaths_to_json", &toolpaths_to_json, py::arg("lines"));
  m.def("parse_toolpaths", &parse_toolpaths, py::arg("text"));
}
