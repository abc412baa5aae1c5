#include "beadpath/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace beadpath {

namespace {

constexpr double kMinRampUm = 1.0;

bool central_skeletal(const SkeletalTrapezoidation& st, int e) {
  return st.is_skeletal(e) && st.edges[e].central && st.edges[e].twin >= 0;
}

}  // namespace

void quantize_marked(SkeletalTrapezoidation& st, const BeadingScheme& scheme) {
  for (auto& n : st.nodes) {
    n.b_bar = n.central ? scheme.q(2 * n.R) : -1;
    n.b_hat = -1;
  }
}

std::vector<TransitionAnchor> find_transition_anchors(const SkeletalTrapezoidation& st,
                                                      const BeadingScheme& scheme) {
  std::vector<TransitionAnchor> out;
  for (std::size_t i = 0; i < st.edges.size(); ++i) {
    const int e = int(i);
    if (!central_skeletal(st, e)) continue;
    const StEdge& ed = st.edges[e];
    const StNode& a = st.nodes[ed.from];
    const StNode& b = st.nodes[ed.to];
    if (a.R > b.R || (a.R == b.R && ed.twin < e)) continue;
    if (a.b_bar < 0 || b.b_bar < 0 || a.b_bar == b.b_bar) continue;
    const bool up = b.b_bar > a.b_bar;
    const int lo = std::min(a.b_bar, b.b_bar);
    const int hi = std::max(a.b_bar, b.b_bar);
    for (int n = lo; n < hi; ++n) {
      double s = 0.5;
      if (b.R > a.R) s = std::clamp((scheme.q_inverse(n) - 2 * a.R) / (2 * b.R - 2 * a.R), 0.0, 1.0);
      TransitionAnchor an;
      an.n = n;
      an.edge = up ? e : ed.twin;
      an.t = up ? s : 1.0 - s;
      out.push_back(an);
    }
  }
  return out;
}

std::vector<TransitionAnchor> filter_anchors(SkeletalTrapezoidation& st, const BeadingScheme& scheme,
                                             double d_max_transition) {
  for (int round = 0; round < 100; ++round) {
    std::vector<TransitionAnchor> anchors = find_transition_anchors(st, scheme);
    std::unordered_map<int, std::vector<int>> on_edge;
    for (std::size_t i = 0; i < anchors.size(); ++i) on_edge[anchors[i].edge].push_back(int(i));
    std::vector<int> order(anchors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return anchors[x].n > anchors[y].n; });

    auto valid = [&](const TransitionAnchor& a) {
      const StEdge& ed = st.edges[a.edge];
      return st.nodes[ed.from].b_bar <= a.n && st.nodes[ed.to].b_bar >= a.n + 1;
    };

    bool changed = false;
    std::vector<int> path;
    std::vector<char> seen(st.nodes.size(), 0);
    std::vector<int> touched;
    for (int ai : order) {
      const TransitionAnchor& A = anchors[ai];
      if (!valid(A)) continue;
      const double len_a = st.length(A.edge);

      // side 0 looks across a bump above the anchor, side 1 across a dip below it
      for (int side = 0; side < 2; ++side) {
        const bool bump = side == 0;
        const int start = bump ? st.edges[A.edge].to : st.edges[A.edge].from;
        const int banned = bump ? st.edges[A.edge].twin : A.edge;
        const double d0 = bump ? (1 - A.t) * len_a : A.t * len_a;
        bool found = false;
        path.clear();
        for (int v : touched) seen[v] = 0;
        touched.clear();
        auto dfs = [&](auto&& self, int v, double d, int arrived) -> void {
          if (found) return;
          if (bump ? st.nodes[v].b_bar <= A.n : st.nodes[v].b_bar > A.n) return;
          seen[v] = 1;
          touched.push_back(v);
          path.push_back(v);
          for (int f : st.out_edges[v]) {
            if (found) break;
            if (!central_skeletal(st, f) || f == banned || f == arrived) continue;
            const int g = bump ? st.edges[f].twin : f;
            auto it = on_edge.find(g);
            if (it != on_edge.end()) {
              for (int bi : it->second) {
                const TransitionAnchor& B = anchors[bi];
                if (B.n != A.n || !valid(B)) continue;
                double db = d + (bump ? (1 - B.t) : B.t) * st.length(f);
                if (db < d_max_transition) {
                  found = true;
                  break;
                }
              }
            }
            if (found) break;
            const int w = st.edges[f].to;
            double dw = d + st.length(f);
            if (seen[w] || dw >= d_max_transition) continue;
            self(self, w, dw, st.edges[f].twin);
          }
          if (!found) path.pop_back();
        };
        if (d0 < d_max_transition) dfs(dfs, start, d0, banned);
        if (found) {
          for (int v : path) st.nodes[v].b_bar = bump ? A.n : A.n + 1;
          changed = true;
          break;
        }
      }
    }
    if (!changed) return anchors;
  }
  return find_transition_anchors(st, scheme);
}

namespace {

struct RampEnd {
  int edge;  // half-edge walked along
  double t;  // parameter on that half-edge
  bool upper;
  int ramp;
};

enum class RampFit { Ok, DeadEndUp, DeadEndDown };

// Collects the ramp ends and the nodes inside the ramp of anchor A, walking
// all central branches away from it.
RampFit plan_ramp(const SkeletalTrapezoidation& st, const BeadingScheme& scheme, const TransitionAnchor& A,
                  int ramp_id, std::vector<RampEnd>& my_ends, std::vector<std::pair<int, double>>& my_nodes,
                  double& down_budget, double& total) {
  const double t = scheme.transition_length(A.n) * kUmPerMm;
  const double t0 = scheme.transition_anchor_pos(A.n) * kUmPerMm;
  const double up_budget = std::max(t - t0, kMinRampUm);
  down_budget = std::max(t0, kMinRampUm);
  total = up_budget + down_budget;
  const double len_a = st.length(A.edge) * kUmPerMm;

  // Walks the central graph away from the anchor; returns false at a dead end.
  auto walk = [&](auto&& self, int v, double d, int arrived, double budget, bool upper, int depth) -> bool {
    if (depth > 10000) return false;
    my_nodes.emplace_back(v, upper ? d : -d);
    bool any = false;
    for (int f : st.out_edges[v]) {
      if (!central_skeletal(st, f) || f == arrived) continue;
      any = true;
      const double len = st.length(f) * kUmPerMm;
      if (d + len >= budget) {
        my_ends.push_back({f, len > 0 ? (budget - d) / len : 0.0, upper, ramp_id});
      } else if (!self(self, st.edges[f].to, d + len, st.edges[f].twin, budget, upper, depth + 1)) {
        return false;
      }
    }
    return any;
  };
  const int e = A.edge;
  const int et = st.edges[e].twin;
  const double up_rest = (1 - A.t) * len_a;
  const double down_rest = A.t * len_a;
  if (up_budget <= up_rest) {
    my_ends.push_back({e, A.t + up_budget / len_a, true, ramp_id});
  } else if (!walk(walk, st.edges[e].to, up_rest, et, up_budget, true, 0)) {
    return RampFit::DeadEndUp;
  }
  if (down_budget <= down_rest) {
    my_ends.push_back({et, (1 - A.t) + down_budget / len_a, false, ramp_id});
  } else if (!walk(walk, st.edges[e].from, down_rest, e, down_budget, false, 0)) {
    return RampFit::DeadEndDown;
  }
  return RampFit::Ok;
}

// A transition that cannot fit above its anchor is dropped: the central
// region above keeps count n.
void dissolve_up(SkeletalTrapezoidation& st, const TransitionAnchor& A) {
  std::vector<int> stack{st.edges[A.edge].to};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (st.nodes[v].b_bar <= A.n) continue;
    st.nodes[v].b_bar = A.n;
    for (int f : st.out_edges[v]) {
      if (central_skeletal(st, f)) stack.push_back(st.edges[f].to);
    }
  }
}

}  // namespace

std::vector<TransitionRamp> apply_transitions(SkeletalTrapezoidation& st, const BeadingScheme& scheme,
                                              std::vector<TransitionAnchor> anchors) {
  for (int round = 0; round < 100; ++round) {
    bool dissolved = false;
    std::vector<RampEnd> scratch_ends;
    std::vector<std::pair<int, double>> scratch_nodes;
    double db, tot;
    for (const TransitionAnchor& A : anchors) {
      const StEdge& ed = st.edges[A.edge];
      if (st.nodes[ed.from].b_bar > A.n || st.nodes[ed.to].b_bar <= A.n) continue;
      scratch_ends.clear();
      scratch_nodes.clear();
      if (plan_ramp(st, scheme, A, 0, scratch_ends, scratch_nodes, db, tot) == RampFit::DeadEndUp) {
        dissolve_up(st, A);
        dissolved = true;
      }
    }
    if (!dissolved) break;
    anchors = find_transition_anchors(st, scheme);
  }

  struct Assignment {
    double b_hat;
    double dist;
  };
  std::vector<TransitionRamp> ramps;
  std::vector<RampEnd> ends;
  std::map<int, Assignment> assigned;

  for (const TransitionAnchor& A : anchors) {
    std::vector<RampEnd> my_ends;
    std::vector<std::pair<int, double>> my_nodes;  // node, signed distance from anchor
    double down_budget = 0, total = 0;
    if (plan_ramp(st, scheme, A, int(ramps.size()), my_ends, my_nodes, down_budget, total) != RampFit::Ok) continue;

    TransitionRamp ramp;
    ramp.n = A.n;
    ramp.anchor = A;
    for (auto [v, sd] : my_nodes) {
      double bh = A.n + (down_budget + sd) / total;
      auto it = assigned.find(v);
      if (it == assigned.end() || std::abs(sd) < it->second.dist) assigned[v] = {bh, std::abs(sd)};
      ramp.inner.emplace_back(v, bh);
    }
    ends.insert(ends.end(), my_ends.begin(), my_ends.end());
    ramps.push_back(std::move(ramp));
  }

  for (auto& n : st.nodes) {
    if (n.central) n.b_hat = n.b_bar;
  }
  for (auto [v, a] : assigned) st.nodes[v].b_hat = a.b_hat;

  // Split edges at ramp ends, grouped per undirected edge in descending t.
  struct Split {
    double t;
    bool upper;
    int ramp;
  };
  std::map<int, std::vector<Split>> by_edge;
  for (const RampEnd& ep : ends) {
    int e = ep.edge;
    double t = std::clamp(ep.t, 0.0, 1.0);
    const int tw = st.edges[e].twin;
    if (tw >= 0 && tw < e) {
      e = tw;
      t = 1 - t;
    }
    by_edge[e].push_back({t, ep.upper, ep.ramp});
  }
  for (auto& [e, splits] : by_edge) {
    std::sort(splits.begin(), splits.end(), [](const Split& a, const Split& b) { return a.t > b.t; });
    double span = 1.0;
    for (const Split& s : splits) {
      const int n = ramps[s.ramp].n;
      int v = -1;
      if (s.t <= 0) v = st.edges[e].from;
      else if (s.t >= span) v = st.edges[e].to;
      else {
        v = st.split_edge_at(e, s.t / span);
        span = s.t;
      }
      StNode& node = st.nodes[v];
      node.central = true;
      node.b_bar = s.upper ? n + 1 : n;
      node.b_hat = s.upper ? n + 1 : n;
      (s.upper ? ramps[s.ramp].upper_ends : ramps[s.ramp].lower_ends).push_back(v);
    }
  }
  return ramps;
}

}  // namespace beadpath
