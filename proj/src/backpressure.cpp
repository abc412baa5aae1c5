#include "beadpath/backpressure.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace beadpath {

FlowPoint speed_for_width(const FlowModel& model, double w) {
  if (!(w > 0)) throw std::invalid_argument("width must be positive");
  double f = model.f0() - model.k * (w / model.w0 - 1.0);
  if (f <= 0) {
    if (!model.clamp_min_flow) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "width %.4f mm needs non-positive flow %.4f mm^3/s", w, f);
      throw WidthUnreachable(buf);
    }
  }
  if (model.clamp_min_flow) f = std::max(f, 0.05 * model.f0());
  return {f / (model.h * w), f};
}

double volume_per_length(const FlowModel& model, double w) { return w * model.h * model.flow_factor; }

}  // namespace beadpath
