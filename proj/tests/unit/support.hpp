#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "beadpath/geometry.hpp"
#include "beadpath/pipeline.hpp"
#include "beadpath/skeleton.hpp"

namespace test {

using namespace beadpath;

// Triangle with its tip at the origin opening towards +x.
inline PolygonSet wedge(double opening_deg, double length) {
  double h = length * std::tan(opening_deg * M_PI / 360.0);
  PolygonSet s;
  s.rings.push_back(make_ring_mm({{0, 0}, {length, -h}, {length, h}}));
  return s;
}

inline PolygonSet regular_polygon(double cx, double cy, double radius, int n, double phase = 0) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    double a = phase + 2 * M_PI * i / n;
    pts.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a)});
  }
  PolygonSet s;
  s.rings.push_back(make_ring_mm(pts));
  return s;
}

inline PolygonSet with_hole(PolygonSet outer, const PolygonSet& hole) {
  Ring r = hole.rings[0];
  std::reverse(r.begin(), r.end());
  outer.rings.push_back(r);
  return outer;
}

// Star-shaped random polygon: sorted angles, random radii.
inline PolygonSet random_star(std::mt19937_64& rng, int n, double r_min, double r_max) {
  std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(r_min, r_max);
  std::vector<double> a(n);
  for (auto& x : a) x = ang(rng);
  std::sort(a.begin(), a.end());
  std::vector<std::pair<double, double>> pts;
  for (double t : a) {
    double r = rad(rng);
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  PolygonSet s;
  s.rings.push_back(make_ring_mm(pts));
  return normalize(s);
}

// Straight chain of skeletal edges along x. xs in mm, Rs in mm. Both
// half-edges of every link are added and twinned.
inline SkeletalTrapezoidation chain_graph(const std::vector<double>& xs, const std::vector<double>& Rs,
                                          double w_star = 0.4) {
  SkeletalTrapezoidation st;
  st.w_star = w_star;
  for (std::size_t i = 0; i < xs.size(); ++i) st.add_node(point_mm(xs[i], 0), Rs[i]);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    int a = st.add_edge(int(i), int(i + 1), EdgeKind::LineLine, -1);
    int b = st.add_edge(int(i + 1), int(i), EdgeKind::LineLine, -1);
    st.edges[a].twin = b;
    st.edges[b].twin = a;
  }
  for (auto& n : st.nodes) n.b_tilde = 2 * n.R / w_star;
  return st;
}

inline void mark_link(SkeletalTrapezoidation& st, int i) {
  for (auto& e : st.edges) {
    if ((e.from == i && e.to == i + 1) || (e.from == i + 1 && e.to == i)) e.central = true;
  }
  st.nodes[i].central = st.nodes[i + 1].central = true;
}

inline void mark_all_links(SkeletalTrapezoidation& st) {
  for (std::size_t i = 0; i + 1 < st.nodes.size(); ++i) mark_link(st, int(i));
}

inline double width_min(const std::vector<ExtrusionLine>& lines) {
  double m = 1e9;
  for (auto& l : lines)
    for (auto& s : l.sites) m = std::min(m, s.w);
  return m;
}

inline double width_max(const std::vector<ExtrusionLine>& lines) {
  double m = 0;
  for (auto& l : lines)
    for (auto& s : l.sites) m = std::max(m, s.w);
  return m;
}

inline PipelineConfig config(const char* scheme, double w_star = 0.4) {
  PipelineConfig cfg;
  cfg.scheme.name = scheme;
  cfg.scheme.w_star = w_star;
  return cfg;
}

}  // namespace test
