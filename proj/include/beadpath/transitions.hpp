#pragma once

#include <vector>

#include "beadpath/beading.hpp"
#include "beadpath/skeleton.hpp"

namespace beadpath {

// Point on a central half-edge where the bead count steps from n to n+1.
// The count increases in the direction of `edge`.
struct TransitionAnchor {
  int edge = -1;
  double t = 0;  // parameter along edge from its origin
  int n = 0;
};

struct TransitionRamp {
  int n = 0;
  TransitionAnchor anchor;
  std::vector<int> lower_ends;  // nodes with b_hat = n
  std::vector<int> upper_ends;  // nodes with b_hat = n + 1
  std::vector<std::pair<int, double>> inner;  // intermediate nodes and their b_hat
};

// b_bar = q(2R) on every central node.
void quantize_marked(SkeletalTrapezoidation& st, const BeadingScheme& scheme);

std::vector<TransitionAnchor> find_transition_anchors(const SkeletalTrapezoidation& st,
                                                      const BeadingScheme& scheme);

// Removes opposite-direction anchor pairs of equal n closer than
// d_max_transition along the central graph, flattening b_bar in between.
// Returns the anchors that remain.
std::vector<TransitionAnchor> filter_anchors(SkeletalTrapezoidation& st, const BeadingScheme& scheme,
                                             double d_max_transition);

// Installs ramps for the anchors, inserting nodes and ribs at ramp ends, and
// sets b_hat on all central nodes. Anchors whose ramp runs off the end of the
// central region are dropped and the region above them keeps the lower count.
std::vector<TransitionRamp> apply_transitions(SkeletalTrapezoidation& st, const BeadingScheme& scheme,
                                              std::vector<TransitionAnchor> anchors);

}  // namespace beadpath
