#pragma once

#include <vector>

#include "beadpath/beading.hpp"
#include "beadpath/skeleton.hpp"

namespace beadpath {

struct ExtrusionSite {
  Point pos;
  double w = 0;  // mm
  int index = 0;
  int node = -1;  // ST node when the site sits on one
  bool center = false;
};

struct ExtrusionLine {
  std::vector<ExtrusionSite> sites;
  bool closed = false;  // closed lines repeat their first site at the end
  int index = 0;
  bool dot = false;
  double dot_width = 0;  // volume preserving width for dots, mm

  double length() const;  // mm
};

// Length of the segment a dot is expanded to, mm.
constexpr double kDotLength = 0.01;

// Sites on every upward, non-central half-edge, ordered by increasing R.
using EdgeSites = std::vector<std::vector<ExtrusionSite>>;
EdgeSites generate_sites(const SkeletalTrapezoidation& st, const std::vector<Beading>& beadings);

// Connects equal-index sites across each trapezoid and chains the segments
// along the domains. Odd ridge segments become separate two-site lines.
std::vector<ExtrusionLine> chain_segments(const SkeletalTrapezoidation& st, const std::vector<Domain>& domains,
                                          const EdgeSites& sites);

// Lone odd-center sites that no segment uses.
std::vector<ExtrusionLine> collect_dots(const SkeletalTrapezoidation& st, const std::vector<Beading>& beadings,
                                        const std::vector<ExtrusionLine>& lines);

// Shortens an open line by `distance` mm from its front or back. Returns
// false when nothing remains.
bool retreat_line(ExtrusionLine& line, bool at_front, double distance);

// Joins lines at points where exactly two open ends meet. Then, at points where
// three or more ends meet, the first two are kept for joining and the others
// retreat by w * ratio.
void retreat_intersections(std::vector<ExtrusionLine>& lines, double ratio);

// Joins coincident open ends, closes lines whose ends meet and reverses
// lines to follow the outline orientation.
std::vector<ExtrusionLine> stitch_and_finalize(std::vector<ExtrusionLine> lines);

ExtrusionLine make_dot(const Point& p, double w, int index);

}  // namespace beadpath
