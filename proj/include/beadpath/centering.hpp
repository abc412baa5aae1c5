#pragma once

#include "beadpath/beading.hpp"
#include "beadpath/skeleton.hpp"

namespace beadpath {

// Marks skeletal edges whose ridge slope |dR|/|dv| is below cos(a_max/2)
// (bisector angle above a_max) and all local maxima of R. a_max >= 180
// disables the slope test.
void mark_central(SkeletalTrapezoidation& st, double alpha_max_deg);

// Marks unmarked upward paths that connect two marked nodes within
// d_max_unmarked. Never removes marks.
void filter_marking(SkeletalTrapezoidation& st, double d_max_unmarked);

// Marks every skeletal edge except those touching the outline.
void mark_all_but_outline(SkeletalTrapezoidation& st);

void clear_marking(SkeletalTrapezoidation& st);

// Applies the scheme's centering policy.
void apply_centering(SkeletalTrapezoidation& st, CenteringPolicy policy, double alpha_max_deg,
                     double d_max_unmarked);

}  // namespace beadpath
