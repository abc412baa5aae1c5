#pragma once

#include <vector>

#include "beadpath/beading.hpp"
#include "beadpath/extraction.hpp"
#include "beadpath/skeleton.hpp"
#include "beadpath/transitions.hpp"

namespace beadpath {

struct PipelineConfig {
  SchemeConfig scheme;
  double alpha_max_deg = 135.0;
  double d_discretization = 0.2;      // mm
  double d_max_unmarked = -1;         // mm, <0 means w*
  double d_max_transition = 1.0;      // mm
  double t_beading = -1;              // mm, <0 means w*
  double retreat_ratio = -1;          // <0 means the scheme's default
};

struct PipelineResult {
  SkeletalTrapezoidation st;
  std::vector<Beading> beadings;
  std::vector<TransitionRamp> ramps;
  std::vector<ExtrusionLine> toolpaths;
};

PipelineResult run_pipeline(const PolygonSet& outline, const PipelineConfig& cfg);
PipelineResult run_pipeline(const PolygonSet& outline, const PipelineConfig& cfg, const SchemePtr& scheme);

std::vector<ExtrusionLine> generate_toolpaths(const PolygonSet& outline, const PipelineConfig& cfg);

}  // namespace beadpath
