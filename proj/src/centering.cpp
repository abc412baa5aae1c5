#include "beadpath/centering.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace beadpath {

namespace {

void mark_edge(SkeletalTrapezoidation& st, int e) {
  StEdge& ed = st.edges[e];
  ed.central = true;
  if (ed.twin >= 0) st.edges[ed.twin].central = true;
  st.nodes[ed.from].central = true;
  st.nodes[ed.to].central = true;
}

}  // namespace

void clear_marking(SkeletalTrapezoidation& st) {
  for (auto& n : st.nodes) n.central = false;
  for (auto& e : st.edges) e.central = false;
}

void mark_central(SkeletalTrapezoidation& st, double alpha_max_deg) {
  if (alpha_max_deg < 180.0) {
    const double limit = std::cos(alpha_max_deg * std::numbers::pi / 360.0);
    for (std::size_t e = 0; e < st.edges.size(); ++e) {
      if (!st.is_skeletal(int(e))) continue;
      const StEdge& ed = st.edges[e];
      if (ed.twin >= 0 && ed.twin < int(e)) continue;
      double len = st.length(int(e));
      if (len <= 0) continue;
      double ratio = std::abs(st.nodes[ed.to].R - st.nodes[ed.from].R) / len;
      if (ratio < limit) mark_edge(st, int(e));
    }
  }
  for (std::size_t v = 0; v < st.nodes.size(); ++v) {
    const double R = st.nodes[v].R;
    if (R <= 0) continue;
    bool any = false;
    bool peak = true;
    for (int e : st.out_edges[v]) {
      if (!st.is_skeletal(e)) continue;
      any = true;
      if (st.nodes[st.edges[e].to].R > R) {
        peak = false;
        break;
      }
    }
    if (any && peak) st.nodes[v].central = true;
  }
}

void filter_marking(SkeletalTrapezoidation& st, double d_max_unmarked) {
  std::vector<int> to_mark;
  std::vector<int> path;
  std::vector<char> on_path(st.nodes.size(), 0);

  // Depth-first walk along non-decreasing R over unmarked skeletal edges.
  auto walk = [&](auto&& self, int v, double traveled) -> void {
    for (int e : st.out_edges[v]) {
      const StEdge& ed = st.edges[e];
      if (!st.is_skeletal(e) || ed.central) continue;
      if (st.nodes[ed.to].R < st.nodes[v].R) continue;
      if (on_path[ed.to]) continue;
      double len = traveled + st.length(e);
      if (len >= d_max_unmarked) continue;
      path.push_back(e);
      if (st.nodes[ed.to].central) {
        to_mark.insert(to_mark.end(), path.begin(), path.end());
      } else {
        on_path[ed.to] = 1;
        self(self, ed.to, len);
        on_path[ed.to] = 0;
      }
      path.pop_back();
    }
  };

  for (std::size_t v = 0; v < st.nodes.size(); ++v) {
    if (!st.nodes[v].central) continue;
    on_path[v] = 1;
    walk(walk, int(v), 0.0);
    on_path[v] = 0;
  }
  for (int e : to_mark) mark_edge(st, e);
}

void mark_all_but_outline(SkeletalTrapezoidation& st) {
  for (std::size_t e = 0; e < st.edges.size(); ++e) {
    if (!st.is_skeletal(int(e))) continue;
    const StEdge& ed = st.edges[e];
    if (st.nodes[ed.from].R <= 0 || st.nodes[ed.to].R <= 0) continue;
    mark_edge(st, int(e));
  }
}

void apply_centering(SkeletalTrapezoidation& st, CenteringPolicy policy, double alpha_max_deg,
                     double d_max_unmarked) {
  clear_marking(st);
  switch (policy) {
    case CenteringPolicy::Disabled:
      return;
    case CenteringPolicy::AllButOutline:
      mark_all_but_outline(st);
      return;
    case CenteringPolicy::Normal:
      mark_central(st, alpha_max_deg);
      filter_marking(st, d_max_unmarked);
      return;
  }
}

}  // namespace beadpath
