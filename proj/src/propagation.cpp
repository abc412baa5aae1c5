#include "beadpath/propagation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

namespace beadpath {

void insert_radius_nodes(SkeletalTrapezoidation& st, const std::vector<double>& radii) {
  if (radii.empty()) return;
  const std::size_t count = st.edges.size();
  std::map<int, std::vector<double>> cuts;
  for (std::size_t i = 0; i < count; ++i) {
    const int e = int(i);
    if (!st.is_skeletal(e)) continue;
    const StEdge& ed = st.edges[e];
    if (ed.twin >= 0 && ed.twin < e) continue;
    const double r0 = st.nodes[ed.from].R;
    const double r1 = st.nodes[ed.to].R;
    if (r0 == r1) continue;
    for (double rho : radii) {
      if (rho <= std::min(r0, r1) || rho >= std::max(r0, r1)) continue;
      cuts[e].push_back((rho - r0) / (r1 - r0));
    }
  }
  for (auto& [e, ts] : cuts) {
    std::sort(ts.begin(), ts.end(), std::greater<>());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    const double r0 = st.nodes[st.edges[e].from].R;
    const double r1 = st.nodes[st.edges[e].to].R;
    Vec2 p0 = st.pos(st.edges[e].from);
    Vec2 p1 = st.pos(st.edges[e].to);
    for (double t : ts) st.split_edge(e, lerp(p0, p1, t), r0 + (r1 - r0) * t);
  }
}

void insert_meta_ribs(SkeletalTrapezoidation& st, const BeadingScheme& scheme) {
  insert_radius_nodes(st, scheme.rib_radii());
}

Beading central_beading(const BeadingScheme& scheme, double b_hat, double R) {
  const double lo = std::floor(b_hat + 1e-9);
  const double f = b_hat - lo;
  const int n = std::max(0, int(lo));
  if (f < 1e-9) return scheme.B(n, R);
  return interpolate_beadings(scheme.B(n, R), scheme.B(n + 1, R), f);
}

std::vector<Beading> propagate_beadings(const SkeletalTrapezoidation& st, const BeadingScheme& scheme,
                                        double t_beading) {
  const std::size_t nn = st.nodes.size();
  std::vector<Beading> out(nn);
  std::vector<char> has(nn, 0);
  std::vector<char> upward_only(nn, 0);
  std::vector<double> dist_to_bottom(nn, 0);
  std::vector<int> top_of(nn, -1);
  std::vector<double> dist_from_top(nn, 0);

  for (std::size_t v = 0; v < nn; ++v) {
    const StNode& node = st.nodes[v];
    if (!node.central) continue;
    double bh = node.b_hat >= 0 ? node.b_hat : node.b_bar >= 0 ? node.b_bar : scheme.q(2 * node.R);
    out[v] = central_beading(scheme, bh, node.R);
    has[v] = 1;
    top_of[v] = int(v);
  }

  std::vector<int> up_edges;
  for (std::size_t i = 0; i < st.edges.size(); ++i) {
    const int e = int(i);
    if (!st.is_skeletal(e) || st.edges[e].central || !st.is_upward(e)) continue;
    up_edges.push_back(e);
  }

  std::vector<int> order = up_edges;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return st.nodes[st.edges[a].from].R < st.nodes[st.edges[b].from].R;
  });
  for (int e : order) {
    const int a = st.edges[e].from;
    const int b = st.edges[e].to;
    if (!has[a] || has[b]) continue;
    out[b] = out[a];
    has[b] = 1;
    upward_only[b] = 1;
    dist_to_bottom[b] = dist_to_bottom[a] + st.length(e);
  }

  order = up_edges;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return st.nodes[st.edges[a].to].R > st.nodes[st.edges[b].to].R;
  });
  for (int e : order) {
    const int a = st.edges[e].from;
    const int b = st.edges[e].to;
    if (top_of[b] < 0 || top_of[a] >= 0 || st.nodes[a].central) continue;
    const int top = top_of[b];
    const double dtop = dist_from_top[b] + st.length(e);
    top_of[a] = top;
    dist_from_top[a] = dtop;
    if (!has[a]) {
      out[a] = out[top];
      has[a] = 1;
    } else if (upward_only[a]) {
      const double span = std::min(dist_to_bottom[a] + dtop, t_beading);
      const double ratio = span > 0 ? dist_to_bottom[a] / span : 1.0;
      out[a] = ratio >= 1 ? out[top] : blend_beadings(out[top], out[a], ratio);
    }
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < st.edges.size(); ++i) {
      const StEdge& ed = st.edges[i];
      if (!st.is_skeletal(int(i)) || st.nodes[ed.from].R != st.nodes[ed.to].R) continue;
      if (has[ed.from] && !has[ed.to]) {
        out[ed.to] = out[ed.from];
        has[ed.to] = 1;
        changed = true;
      }
    }
  }

  for (std::size_t v = 0; v < nn; ++v) {
    if (!has[v]) out[v] = scheme.beading_for(st.nodes[v].R);
  }
  return out;
}

}  // namespace beadpath
