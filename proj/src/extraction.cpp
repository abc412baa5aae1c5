#include "beadpath/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <map>
#include <numbers>

namespace beadpath {

double ExtrusionLine::length() const {
  double s = 0;
  for (std::size_t i = 1; i < sites.size(); ++i) s += dist(sites[i - 1].pos, sites[i].pos);
  return coord_to_mm(s);
}

ExtrusionLine make_dot(const Point& p, double w, int index) {
  ExtrusionLine line;
  line.index = index;
  line.dot = true;
  line.dot_width = std::numbers::pi * w * w / (4 * kDotLength);
  const Coord half = mm_to_coord(kDotLength / 2);
  ExtrusionSite a{{p.x - half, p.y}, w, index, -1, true};
  ExtrusionSite b{{p.x + half, p.y}, w, index, -1, true};
  line.sites = {a, b};
  return line;
}

EdgeSites generate_sites(const SkeletalTrapezoidation& st, const std::vector<Beading>& beadings) {
  EdgeSites out(st.edges.size());
  for (std::size_t i = 0; i < st.edges.size(); ++i) {
    const int e = int(i);
    const StEdge& ed = st.edges[e];
    if (ed.central || !st.is_upward(e)) continue;
    const double r0 = st.nodes[ed.from].R;
    const double r1 = st.nodes[ed.to].R;
    const Beading& b = beadings[ed.to];
    const Vec2 v0 = st.pos(ed.from);
    const Vec2 v1 = st.pos(ed.to);
    for (std::size_t k = 0; k < b.locations.size(); ++k) {
      const double l = b.locations[k];
      if (!(l > r0) || l > r1 + 1e-9) continue;
      if (!(b.widths[k] > 1e-6)) continue;
      ExtrusionSite s;
      const bool at_top = std::abs(r1 - l) < 1e-9;
      s.pos = at_top ? st.nodes[ed.to].pos : round_point(v1 + (v0 - v1) * ((r1 - l) / (r1 - r0)));
      s.w = b.widths[k];
      s.index = int(k);
      s.node = at_top ? ed.to : -1;
      s.center = b.has_center() && k + 1 == b.locations.size();
      out[e].push_back(s);
    }
  }
  return out;
}

namespace {

bool tie_break(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

std::vector<ExtrusionLine> chain_segments(const SkeletalTrapezoidation& st, const std::vector<Domain>& domains,
                                          const EdgeSites& sites) {
  struct Segment {
    ExtrusionSite a, b;
    int index;
    int domain;
  };
  std::vector<Segment> segs;
  std::vector<ExtrusionLine> ridges;
  std::vector<const ExtrusionSite*> asc, desc;

  for (std::size_t d = 0; d < domains.size(); ++d) {
    for (int first : domains[d].faces) {
      std::vector<ExtrusionSite> up, down;
      for (int e = first; e >= 0; e = st.edges[e].next) {
        const StEdge& ed = st.edges[e];
        if (ed.central) continue;
        if (!sites[e].empty()) {
          up.insert(up.end(), sites[e].begin(), sites[e].end());
        } else if (ed.twin >= 0 && !sites[ed.twin].empty()) {
          const auto& tw = sites[ed.twin];
          down.insert(down.end(), tw.rbegin(), tw.rend());
        }
      }
      // Keep, per index, the occurrence closest to the top of the face.
      std::size_t nidx = 0;
      for (const auto& s : up) nidx = std::max(nidx, std::size_t(s.index + 1));
      for (const auto& s : down) nidx = std::max(nidx, std::size_t(s.index + 1));
      asc.assign(nidx, nullptr);
      desc.assign(nidx, nullptr);
      for (const auto& s : up) asc[s.index] = &s;
      for (auto it = down.rbegin(); it != down.rend(); ++it) desc[it->index] = &*it;

      for (std::size_t i = 0; i < nidx; ++i) {
        if (!asc[i] || !desc[i]) continue;
        const ExtrusionSite& a = *asc[i];
        const ExtrusionSite& b = *desc[i];
        if (a.pos == b.pos) continue;
        if (a.center && b.center && a.node >= 0 && b.node >= 0 && a.node != b.node) {
          if (tie_break(a.pos, b.pos)) {
            ExtrusionLine r;
            r.index = int(i);
            r.sites = {a, b};
            ridges.push_back(std::move(r));
          }
          continue;
        }
        segs.push_back({a, b, int(i), int(d)});
      }
    }
  }

  // Points where more than two segment ends meet start new polylines.
  std::map<Point, int> degree;
  for (const auto& g : segs) ++degree[g.a.pos], ++degree[g.b.pos];
  for (const auto& r : ridges) ++degree[r.sites.front().pos], ++degree[r.sites.back().pos];

  std::vector<ExtrusionLine> lines;
  std::vector<int> current;  // per index: open line id or -1
  int domain = -1;
  for (const auto& g : segs) {
    if (g.domain != domain) {
      current.assign(current.size(), -1);
      domain = g.domain;
    }
    if (current.size() <= std::size_t(g.index)) current.resize(g.index + 1, -1);
    int& cur = current[g.index];
    if (cur >= 0 && lines[cur].sites.back().pos == g.a.pos && degree[g.a.pos] <= 2) {
      lines[cur].sites.push_back(g.b);
    } else {
      ExtrusionLine l;
      l.index = g.index;
      l.sites = {g.a, g.b};
      lines.push_back(std::move(l));
      cur = int(lines.size() - 1);
    }
  }
  lines.insert(lines.end(), std::make_move_iterator(ridges.begin()), std::make_move_iterator(ridges.end()));
  return lines;
}

std::vector<ExtrusionLine> collect_dots(const SkeletalTrapezoidation& st, const std::vector<Beading>& beadings,
                                        const std::vector<ExtrusionLine>& lines) {
  std::vector<char> used(st.nodes.size(), 0);
  for (const auto& l : lines) {
    for (const auto& s : l.sites) {
      if (s.node >= 0) used[s.node] = 1;
    }
  }
  std::vector<ExtrusionLine> dots;
  for (std::size_t v = 0; v < st.nodes.size(); ++v) {
    const Beading& b = beadings[v];
    if (used[v] || !st.nodes[v].central || !b.has_center()) continue;
    if (!(b.widths.back() > 1e-6) || b.r <= 0) continue;
    if (std::abs(b.r - st.nodes[v].R) > 1e-9) continue;
    // Only nodes that actually received a center site from one of their ribs.
    bool sited = false;
    for (int e : st.out_edges[v]) {
      if (st.is_rib(e)) {
        sited = true;
        break;
      }
    }
    if (!sited) continue;
    dots.push_back(make_dot(st.nodes[v].pos, b.widths.back(), int(b.widths.size() - 1)));
  }
  return dots;
}

bool retreat_line(ExtrusionLine& line, bool at_front, double distance) {
  auto& s = line.sites;
  if (at_front) std::reverse(s.begin(), s.end());
  double remaining = distance * kUmPerMm;
  bool alive = true;
  while (true) {
    if (s.size() < 2) {
      alive = false;
      break;
    }
    const ExtrusionSite& a = s[s.size() - 2];
    const ExtrusionSite& b = s.back();
    double len = dist(a.pos, b.pos);
    if (len > remaining + 0.5) {
      double f = remaining / len;
      ExtrusionSite n = b;
      n.pos = round_point(lerp(Vec2(b.pos), Vec2(a.pos), f));
      n.w = b.w + (a.w - b.w) * f;
      n.node = -1;
      s.back() = n;
      break;
    }
    remaining -= len;
    s.pop_back();
    if (remaining <= 0.5) {
      alive = s.size() >= 2;
      break;
    }
  }
  if (at_front) std::reverse(s.begin(), s.end());
  return alive;
}

namespace {

struct EndRef {
  int line;
  int end;  // 0 front, 1 back
};

std::map<Point, std::vector<EndRef>> end_map(const std::vector<ExtrusionLine>& lines) {
  std::map<Point, std::vector<EndRef>> m;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.closed || l.dot || l.sites.size() < 2) continue;
    m[l.sites.front().pos].push_back({int(i), 0});
    m[l.sites.back().pos].push_back({int(i), 1});
  }
  return m;
}

}  // namespace

// Links open ends that share a point. With only_pairs, points where more than
// two ends meet are left alone; otherwise the first two ends there are linked.
std::vector<ExtrusionLine> join_lines(const std::vector<ExtrusionLine>& lines, bool only_pairs) {
  const std::size_t n = lines.size();
  std::vector<std::array<EndRef, 2>> link(n, {EndRef{-1, -1}, EndRef{-1, -1}});
  auto m = end_map(lines);
  for (auto& [p, ends] : m) {
    if (ends.size() < 2 || (only_pairs && ends.size() > 2)) continue;
    EndRef a = ends[0], b = ends[1];
    link[a.line][a.end] = b;
    link[b.line][b.end] = a;
  }

  std::vector<ExtrusionLine> out;
  std::vector<char> used(n, 0);
  auto append = [](ExtrusionLine& dst, const ExtrusionLine& src, bool reversed) {
    if (reversed) {
      for (auto it = src.sites.rbegin() + 1; it != src.sites.rend(); ++it) dst.sites.push_back(*it);
    } else {
      dst.sites.insert(dst.sites.end(), src.sites.begin() + 1, src.sites.end());
    }
  };
  // Follows links from `start`, leaving it through `exit_end`.
  auto walk = [&](int start, int exit_end) {
    ExtrusionLine merged = lines[start];
    if (exit_end == 0) std::reverse(merged.sites.begin(), merged.sites.end());
    used[start] = 1;
    int cur = start;
    while (true) {
      EndRef nx = link[cur][exit_end];
      if (nx.line < 0) break;
      if (used[nx.line]) {
        if (nx.line == start) merged.closed = true;
        break;
      }
      used[nx.line] = 1;
      append(merged, lines[nx.line], nx.end == 1);
      cur = nx.line;
      exit_end = 1 - nx.end;
    }
    if (merged.closed && merged.sites.front().pos != merged.sites.back().pos) merged.sites.push_back(merged.sites.front());
    return merged;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    const auto& l = lines[i];
    if (l.dot || l.closed || l.sites.size() < 2) {
      used[i] = 1;
      if (l.sites.size() >= 2) out.push_back(l);
      continue;
    }
    if (link[i][0].line < 0) out.push_back(walk(int(i), 1));
    else if (link[i][1].line < 0) out.push_back(walk(int(i), 0));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!used[i]) out.push_back(walk(int(i), 1));
  }
  return out;
}

void retreat_intersections(std::vector<ExtrusionLine>& lines, double ratio) {
  lines = join_lines(lines, true);
  auto m = end_map(lines);
  std::vector<char> dead(lines.size(), 0);
  for (auto& [p, ends] : m) {
    if (ends.size() < 3 || ratio <= 0) continue;
    for (std::size_t k = 2; k < ends.size(); ++k) {
      auto& l = lines[ends[k].line];
      if (dead[ends[k].line]) continue;
      const auto& site = ends[k].end == 0 ? l.sites.front() : l.sites.back();
      if (site.pos != p) continue;
      const double d = site.w * ratio;
      if (!retreat_line(l, ends[k].end == 0, d)) dead[ends[k].line] = 1;
    }
  }
  std::vector<ExtrusionLine> kept;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!dead[i]) kept.push_back(std::move(lines[i]));
  }
  lines = std::move(kept);
}

std::vector<ExtrusionLine> stitch_and_finalize(std::vector<ExtrusionLine> lines) {
  for (auto& l : lines) {
    if (!l.dot) std::reverse(l.sites.begin(), l.sites.end());
  }
  auto out = join_lines(lines, false);
  for (auto& l : out) {
    if (!l.closed && !l.dot && l.sites.size() > 2 && l.sites.front().pos == l.sites.back().pos) l.closed = true;
  }
  return out;
}

}  // namespace beadpath
