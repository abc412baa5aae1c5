#include "beadpath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace beadpath {

namespace {

// One extrusion segment in micrometers.
struct Seg {
  Vec2 p0, p1;
  double r0 = 0, r1 = 0;  // half widths
  bool end_cap = false;
  bool notch = false;  // end semicircle excluded, the next segment covers it
  int line = -1;
};

struct Box {
  double x0, y0, x1, y1;
  bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

std::vector<Seg> build_segments(const ExtrusionLine& line, int line_id) {
  std::vector<Seg> segs;
  const auto& s = line.sites;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].pos == s[i - 1].pos) continue;
    Seg g;
    g.p0 = Vec2(s[i - 1].pos);
    g.p1 = Vec2(s[i].pos);
    g.r0 = 0.5 * s[i - 1].w * kUmPerMm;
    g.r1 = 0.5 * s[i].w * kUmPerMm;
    g.line = line_id;
    segs.push_back(g);
  }
  for (auto& g : segs) g.notch = true;
  if (!line.closed && !segs.empty()) segs.back().notch = false, segs.back().end_cap = true;
  return segs;
}

Vec2 unit(const Seg& g) {
  Vec2 d = g.p1 - g.p0;
  return d * (1.0 / d.norm());
}

Ring trap_ring(const Seg& g) {
  Vec2 u = unit(g);
  Vec2 n(-u.y, u.x);
  return {round_point(g.p0 - n * g.r0), round_point(g.p1 - n * g.r1), round_point(g.p1 + n * g.r1),
          round_point(g.p0 + n * g.r0)};
}

// Half disc around c spanning angles [a0, a0 + pi], counter-clockwise.
Ring half_disc(const Vec2& c, double r, double a0) {
  Ring ring;
  for (int k = 0; k <= kCapSegments; ++k) {
    double a = a0 + std::numbers::pi * k / kCapSegments;
    ring.push_back(round_point(c + Vec2(std::cos(a), std::sin(a)) * r));
  }
  return ring;
}

// Half disc at `c` on the side opposite to the segment direction.
Ring back_cap(const Seg& g, const Vec2& c, double r) {
  Vec2 u = unit(g);
  return half_disc(c, r, std::atan2(u.y, u.x) + std::numbers::pi / 2);
}

PolygonSet shape_of(const std::vector<Seg>& segs, std::size_t i) {
  const Seg& g = segs[i];
  Vec2 u = unit(g);
  PolygonSet shape;
  shape.rings.push_back(trap_ring(g));
  shape.rings.push_back(back_cap(g, g.p0, g.r0));
  if (g.end_cap) shape.rings.push_back(half_disc(g.p1, g.r1, std::atan2(u.y, u.x) - std::numbers::pi / 2));
  if (!g.notch) return unite(shape);
  PolygonSet excluded;
  excluded.rings.push_back(back_cap(g, g.p1, g.r1));
  return clip(unite(shape), excluded, BoolOp::Difference);
}

Box box_of(const PolygonSet& s) {
  Box b{1e300, 1e300, -1e300, -1e300};
  for (const Ring& r : s.rings) {
    for (const Point& p : r) {
      b.x0 = std::min(b.x0, double(p.x));
      b.y0 = std::min(b.y0, double(p.y));
      b.x1 = std::max(b.x1, double(p.x));
      b.y1 = std::max(b.y1, double(p.y));
    }
  }
  return b;
}

// Pairwise union tree. A single union over hundreds of mutually overlapping
// shapes (tight loops around a peak) makes the sweep crawl.
PolygonSet merge_range(const std::vector<PolygonSet>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    PolygonSet all;
    for (std::size_t i = lo; i < hi; ++i) all.rings.insert(all.rings.end(), parts[i].rings.begin(), parts[i].rings.end());
    return unite(all);
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  PolygonSet a = merge_range(parts, lo, mid);
  PolygonSet b = merge_range(parts, mid, hi);
  a.rings.insert(a.rings.end(), b.rings.begin(), b.rings.end());
  return unite(a);
}

PolygonSet merge(const std::vector<PolygonSet>& parts) { return merge_range(parts, 0, parts.size()); }

bool in_trap(const Seg& g, const Vec2& x) {
  Vec2 d = g.p1 - g.p0;
  double len = d.norm();
  Vec2 u = d * (1.0 / len);
  Vec2 rel = x - g.p0;
  double s = dot(rel, u) / len;
  if (s < 0 || s > 1) return false;
  double lat = std::abs(cross(u, rel));
  return lat <= g.r0 + (g.r1 - g.r0) * s;
}

bool in_back_half(const Seg& g, const Vec2& c, double r, const Vec2& x) {
  return dist(x, c) <= r && dot(x - c, unit(g)) <= 0;
}

bool in_segment(const std::vector<Seg>& segs, std::size_t i, const Vec2& x) {
  const Seg& g = segs[i];
  if (g.notch && in_back_half(g, g.p1, g.r1, x)) return false;
  return in_trap(g, x) || in_back_half(g, g.p0, g.r0, x) ||
         (g.end_cap && dist(x, g.p1) <= g.r1 && dot(x - g.p1, unit(g)) >= 0);
}

}  // namespace

std::vector<PolygonSet> segment_shapes(const ExtrusionLine& line) {
  std::vector<Seg> segs = build_segments(line, 0);
  std::vector<PolygonSet> out;
  for (std::size_t i = 0; i < segs.size(); ++i) out.push_back(shape_of(segs, i));
  return out;
}

PolygonSet bead_shape(const ExtrusionLine& line) { return merge(segment_shapes(line)); }

AccuracyReport compute_accuracy(const std::vector<ExtrusionLine>& lines, const PolygonSet& outline,
                                double close_radius_mm) {
  std::vector<PolygonSet> shapes;
  std::vector<Box> boxes;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::vector<Seg> segs = build_segments(lines[li], int(li));
    for (std::size_t i = 0; i < segs.size(); ++i) {
      shapes.push_back(shape_of(segs, i));
      boxes.push_back(box_of(shapes.back()));
    }
  }
  std::vector<std::size_t> order(shapes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return boxes[a].x0 < boxes[b].x0; });

  struct Overlap {
    PolygonSet region;
    Box box;
    std::size_t j;  // larger sorted position of the pair
  };
  std::vector<Overlap> pairs;
  for (std::size_t a = 0; a < order.size(); ++a) {
    const std::size_t i = order[a];
    for (std::size_t b = a + 1; b < order.size() && boxes[order[b]].x0 <= boxes[i].x1; ++b) {
      const std::size_t j = order[b];
      if (!boxes[i].overlaps(boxes[j])) continue;
      PolygonSet ov = clip(shapes[i], shapes[j], BoolOp::Intersection);
      if (ov.empty()) continue;
      pairs.push_back({ov, box_of(ov), b});
    }
  }
  std::vector<PolygonSet> triples;
  for (const Overlap& o : pairs) {
    for (std::size_t c = o.j + 1; c < order.size() && boxes[order[c]].x0 <= o.box.x1; ++c) {
      const std::size_t k = order[c];
      if (!boxes[k].overlaps(o.box)) continue;
      PolygonSet t = clip(o.region, shapes[k], BoolOp::Intersection);
      if (!t.empty()) triples.push_back(std::move(t));
    }
  }

  AccuracyReport rep;
  const PolygonSet out_clean = unite(outline);
  rep.outline_area = area(out_clean);
  PolygonSet covered = merge(shapes);
  PolygonSet outside = clip(covered, out_clean, BoolOp::Difference);
  std::vector<PolygonSet> over_parts;
  for (auto& o : pairs) over_parts.push_back(std::move(o.region));
  over_parts.push_back(outside);
  rep.overfill = morphological_open(merge(over_parts), close_radius_mm);
  rep.triple = morphological_open(merge(triples), close_radius_mm);
  rep.underfill = clip(out_clean, morphological_close(covered, close_radius_mm), BoolOp::Difference);
  rep.overfill_area = area(rep.overfill) + area(rep.triple);
  rep.underfill_area = area(rep.underfill);
  rep.covered_area = area(clip(covered, out_clean, BoolOp::Intersection));
  if (rep.outline_area > 0) {
    rep.overfill_percent = 100.0 * rep.overfill_area / rep.outline_area;
    rep.underfill_percent = 100.0 * rep.underfill_area / rep.outline_area;
  }
  return rep;
}

ToolpathStatistics compute_statistics(const std::vector<ExtrusionLine>& lines) {
  ToolpathStatistics st;
  double wsum = 0, w2sum = 0;
  for (const auto& l : lines) {
    (l.closed ? st.closed_paths : st.open_paths)++;
    std::vector<std::pair<Vec2, double>> pts;
    for (const auto& s : l.sites) {
      Vec2 p(s.pos);
      if (!pts.empty() && dist(pts.back().first, p) < 0.5) continue;
      pts.emplace_back(p, s.w);
    }
    for (std::size_t i = 1; i < pts.size(); ++i) {
      double len = coord_to_mm(dist(pts[i - 1].first, pts[i].first));
      double w = 0.5 * (pts[i - 1].second + pts[i].second);
      st.total_length += len;
      wsum += w * len;
      w2sum += w * w * len;
      st.width_histogram[int(std::floor(w / 0.01 + 1e-9))] += len;
    }
    auto corner = [&](const Vec2& a, const Vec2& b, const Vec2& c) {
      Vec2 u = a - b, v = c - b;
      double ang = std::atan2(std::abs(cross(u, v)), dot(u, v)) * 180.0 / std::numbers::pi;
      int bin = std::clamp(int(std::lround(ang)), 0, 180);
      if (bin >= 180) return;
      st.angle_histogram[bin]++;
      st.corners++;
    };
    const std::size_t m = pts.size();
    for (std::size_t i = 1; i + 1 < m; ++i) corner(pts[i - 1].first, pts[i].first, pts[i + 1].first);
    if (l.closed && m > 3) corner(pts[m - 2].first, pts[0].first, pts[1].first);
  }
  if (st.total_length > 0) {
    st.width_mean = wsum / st.total_length;
    st.width_sigma = std::sqrt(std::max(0.0, w2sum / st.total_length - st.width_mean * st.width_mean));
  }
  return st;
}

MonteCarloEstimate monte_carlo_accuracy(const std::vector<ExtrusionLine>& lines, const PolygonSet& outline,
                                        int samples, std::uint64_t seed) {
  std::vector<Seg> segs;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::vector<Seg> s = build_segments(lines[li], int(li));
    segs.insert(segs.end(), s.begin(), s.end());
  }
  Box all{1e300, 1e300, -1e300, -1e300};
  auto grow = [&](double x, double y) {
    all.x0 = std::min(all.x0, x);
    all.y0 = std::min(all.y0, y);
    all.x1 = std::max(all.x1, x);
    all.y1 = std::max(all.y1, y);
  };
  for (const Ring& r : outline.rings) {
    for (const Point& p : r) grow(double(p.x), double(p.y));
  }
  std::vector<Box> sb;
  for (const Seg& g : segs) {
    double r = std::max(g.r0, g.r1);
    Box b{std::min(g.p0.x, g.p1.x) - r, std::min(g.p0.y, g.p1.y) - r, std::max(g.p0.x, g.p1.x) + r,
          std::max(g.p0.y, g.p1.y) + r};
    sb.push_back(b);
    grow(b.x0, b.y0);
    grow(b.x1, b.y1);
  }
  MonteCarloEstimate est;
  if (all.x0 > all.x1) return est;

  const int gn = std::max(1, int(std::sqrt(double(segs.size()))));
  const double cw = (all.x1 - all.x0) / gn + 1e-9;
  const double ch = (all.y1 - all.y0) / gn + 1e-9;
  std::vector<std::vector<int>> grid(std::size_t(gn) * gn);
  auto cell = [&](double v, double lo, double size) { return std::clamp(int((v - lo) / size), 0, gn - 1); };
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (int gx = cell(sb[i].x0, all.x0, cw); gx <= cell(sb[i].x1, all.x0, cw); ++gx) {
      for (int gy = cell(sb[i].y0, all.y0, ch); gy <= cell(sb[i].y1, all.y0, ch); ++gy) {
        grid[std::size_t(gy) * gn + gx].push_back(int(i));
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(all.x0, all.x1), uy(all.y0, all.y1);
  long over = 0, under = 0, covered = 0;
  for (int s = 0; s < samples; ++s) {
    Vec2 x(ux(rng), uy(rng));
    int count = 0;
    for (int i : grid[std::size_t(cell(x.y, all.y0, ch)) * gn + cell(x.x, all.x0, cw)]) {
      if (in_segment(segs, std::size_t(i), x)) ++count;
    }
    const bool inside = contains(outline, x);
    if (inside && count == 0) ++under;
    if (inside && count > 0) ++covered;
    if (count >= 2 || (!inside && count > 0)) ++over;
    if (count >= 3) ++over;
  }
  const double box_area = coord_to_mm(all.x1 - all.x0) * coord_to_mm(all.y1 - all.y0);
  est.overfill_area = box_area * double(over) / samples;
  est.underfill_area = box_area * double(under) / samples;
  est.covered_area = box_area * double(covered) / samples;
  return est;
}

}  // namespace beadpath
