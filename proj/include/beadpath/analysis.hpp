#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "beadpath/extraction.hpp"
#include "beadpath/geometry.hpp"

namespace beadpath {

constexpr int kCapSegments = 16;

// Shapes covered by each extrusion segment of a line: the width-interpolated
// quad plus a semicircle behind its start, minus the same semicircle at its
// end (the next segment covers that). The last segment of an open line keeps
// its end and gets a forward semicircle instead.
std::vector<PolygonSet> segment_shapes(const ExtrusionLine& line);
PolygonSet bead_shape(const ExtrusionLine& line);

struct AccuracyReport {
  PolygonSet overfill;
  PolygonSet underfill;
  PolygonSet triple;  // covered three or more times
  double overfill_area = 0;  // mm^2, triple cover counted twice
  double underfill_area = 0;
  double covered_area = 0;  // union of beads inside the outline
  double outline_area = 0;
  double overfill_percent = 0;
  double underfill_percent = 0;
};

AccuracyReport compute_accuracy(const std::vector<ExtrusionLine>& lines, const PolygonSet& outline,
                                double close_radius_mm = 0.005);

struct ToolpathStatistics {
  double width_mean = 0;   // mm, weighted by length
  double width_sigma = 0;  // mm
  std::map<int, double> width_histogram;  // 0.01 mm bin -> length mm
  std::vector<int> angle_histogram = std::vector<int>(181, 0);  // 1 degree bins of interior angle
  int corners = 0;
  int open_paths = 0;
  int closed_paths = 0;
  double total_length = 0;  // mm
};

ToolpathStatistics compute_statistics(const std::vector<ExtrusionLine>& lines);

// Sampling estimate of the same areas, using exact segment geometry instead
// of the polygon engine.
struct MonteCarloEstimate {
  double overfill_area = 0;
  double underfill_area = 0;
  double covered_area = 0;
};

MonteCarloEstimate monte_carlo_accuracy(const std::vector<ExtrusionLine>& lines, const PolygonSet& outline,
                                        int samples, std::uint64_t seed);

}  // namespace beadpath
