#pragma once

#include <stdexcept>

namespace beadpath {

struct WidthUnreachable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear back-pressure model: f(w) = f0 - k (w / w0 - 1), v(w) = f(w) / (h w).
struct FlowModel {
  double v0 = 30.0;          // mm/s at the reference width
  double w0 = 0.4;           // mm
  double h = 0.1;            // layer height, mm
  double k = 1.1;            // mm^3/s
  double flow_factor = 0.9;  // scales extruded volume
  bool clamp_min_flow = false;  // clamp f to 5% of f0 instead of failing

  double f0() const { return v0 * w0 * h; }
};

struct FlowPoint {
  double speed = 0;  // mm/s
  double flow = 0;   // mm^3/s
};

// Throws WidthUnreachable when f(w) <= 0 and clamping is off, and
// std::invalid_argument for w <= 0.
FlowPoint speed_for_width(const FlowModel& model, double w);

// Extruded volume per mm of path at width w.
double volume_per_length(const FlowModel& model, double w);

}  // namespace beadpath
