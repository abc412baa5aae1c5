#include "beadpath/pipeline.hpp"

#include "beadpath/centering.hpp"
#include "beadpath/propagation.hpp"

namespace beadpath {

PipelineResult run_pipeline(const PolygonSet& outline, const PipelineConfig& cfg) {
  return run_pipeline(outline, cfg, make_scheme(cfg.scheme));
}

PipelineResult run_pipeline(const PolygonSet& outline, const PipelineConfig& cfg, const SchemePtr& scheme) {
  PipelineResult res;
  if (outline.empty()) return res;
  const double w = scheme->w_star();
  StOptions opt;
  opt.w_star = w;
  opt.d_discretization = cfg.d_discretization;
  opt.alpha_max_deg = cfg.alpha_max_deg;
  res.st = build_st(outline, opt);
  SkeletalTrapezoidation& st = res.st;

  insert_meta_ribs(st, *scheme);
  apply_centering(st, scheme->centering(), cfg.alpha_max_deg, cfg.d_max_unmarked < 0 ? w : cfg.d_max_unmarked);
  quantize_marked(st, *scheme);
  auto anchors = filter_anchors(st, *scheme, cfg.d_max_transition);
  res.ramps = apply_transitions(st, *scheme, anchors);
  res.beadings = propagate_beadings(st, *scheme, cfg.t_beading < 0 ? w : cfg.t_beading);

  EdgeSites sites = generate_sites(st, res.beadings);
  std::vector<ExtrusionLine> lines = chain_segments(st, assign_domains(st), sites);
  std::vector<ExtrusionLine> dots = collect_dots(st, res.beadings, lines);
  retreat_intersections(lines, cfg.retreat_ratio < 0 ? scheme->retreat_ratio() : cfg.retreat_ratio);
  lines.insert(lines.end(), dots.begin(), dots.end());
  res.toolpaths = stitch_and_finalize(std::move(lines));
  return res;
}

std::vector<ExtrusionLine> generate_toolpaths(const PolygonSet& outline, const PipelineConfig& cfg) {
  return run_pipeline(outline, cfg).toolpaths;
}

}  // namespace beadpath
