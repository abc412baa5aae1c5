#pragma once

#include <vector>

#include "beadpath/beading.hpp"
#include "beadpath/skeleton.hpp"

namespace beadpath {

// Inserts nodes (with ribs) where skeletal edges cross one of the radii (mm).
void insert_radius_nodes(SkeletalTrapezoidation& st, const std::vector<double>& radii);
void insert_meta_ribs(SkeletalTrapezoidation& st, const BeadingScheme& scheme);

// Beading of a central node from its smoothed bead count.
Beading central_beading(const BeadingScheme& scheme, double b_hat, double R);

// One beading per node: central nodes from b_hat, then broadcast upward and
// downward along unmarked edges, resolving conflicts over t_beading (mm).
std::vector<Beading> propagate_beadings(const SkeletalTrapezoidation& st, const BeadingScheme& scheme,
                                        double t_beading);

}  // namespace beadpath
