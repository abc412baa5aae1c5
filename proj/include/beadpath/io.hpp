#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beadpath/analysis.hpp"
#include "beadpath/backpressure.hpp"
#include "beadpath/extraction.hpp"
#include "beadpath/geometry.hpp"
#include "beadpath/pipeline.hpp"

namespace beadpath {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LayerFile {
  PolygonSet outline;
  // Raw "config" object of the file, applied by apply_layer_config.
  std::string config_json;
};

LayerFile parse_layer(const std::string& text);
LayerFile read_layer(const std::string& path);
std::string layer_to_json(const PolygonSet& outline);
// Overrides fields of cfg present in the layer's config object.
void apply_layer_config(const LayerFile& layer, PipelineConfig& cfg);

std::string toolpaths_to_json(const std::vector<ExtrusionLine>& lines);
std::vector<ExtrusionLine> parse_toolpaths(const std::string& text);
std::vector<ExtrusionLine> read_toolpaths(const std::string& path);

struct SvgOptions {
  double w_star = 0.4;
  const AccuracyReport* overlay = nullptr;
};
std::string render_svg(const std::vector<ExtrusionLine>& lines, const PolygonSet& outline, const SvgOptions& opt);

std::string report_to_json(const AccuracyReport& acc, const ToolpathStatistics& stats);

struct GcodeOptions {
  FlowModel model;
  double filament_diameter = 1.75;  // mm
  double max_piece = 0.2;           // mm
  double travel_speed = 150.0;      // mm/s
  double start_x = 0, start_y = 0;  // mm
};

// Greedy nearest-endpoint order from the start point. Closed paths are
// rotated to start at their nearest vertex, open paths may be reversed.
std::vector<ExtrusionLine> order_greedy(const std::vector<ExtrusionLine>& lines, double start_x, double start_y);
std::string emit_gcode(const std::vector<ExtrusionLine>& lines, const GcodeOptions& opt);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace beadpath
