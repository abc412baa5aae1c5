#include "beadpath/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include <boost/polygon/polygon.hpp>
#include <boost/polygon/voronoi.hpp>

namespace beadpath {

namespace {

namespace bp = boost::polygon;
using VD = bp::voronoi_diagram<double>;
using BSegment = bp::segment_data<int>;
using BPoint = bp::point_data<int>;

constexpr double kSnap = 0.5;  // um

struct PointHash {
  std::size_t operator()(const Point& p) const {
    return std::hash<std::int64_t>()(p.x * 73856093LL) ^ std::hash<std::int64_t>()(p.y * 19349663LL);
  }
};

struct ChainEdge {
  Vec2 p0, p1;
  std::size_t vd_id = 0;
  std::size_t twin_id = 0;
  EdgeKind kind = EdgeKind::LineLine;
  bool secondary = false;
  int other_source = -1;
};

struct CellChain {
  int source = -1;
  std::vector<ChainEdge> edges;
};

struct InteriorVd {
  std::vector<SourceSite> sources;
  std::vector<CellChain> chains;
  std::vector<std::vector<int>> ring_sources;
  PolygonSet outline;
};

bool near(const Vec2& a, const Vec2& b) { return dist(a, b) < kSnap; }

double dist_to_source(const SourceSite& s, const Vec2& p) {
  if (s.type == SourceSite::Type::Vertex) return dist(p, Vec2(s.a));
  Vec2 a(s.a), b(s.b);
  Vec2 ab = b - a;
  double len2 = dot(ab, ab);
  double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return dist(p, a + ab * t);
}

InteriorVd compute_interior(const PolygonSet& input) {
  validate(input);
  double a = area(input);
  if (!(a > 0)) throw InvalidPolygon("outline has no interior");
  InteriorVd out;
  out.outline = normalize(input);
  if (out.outline.empty()) throw InvalidPolygon("outline has no interior");
  const auto limit = Coord(std::numeric_limits<int>::max() / 2);
  for (const Ring& r : out.outline.rings) {
    for (const Point& p : r) {
      if (std::llabs(p.x) > limit || std::llabs(p.y) > limit) throw InvalidPolygon("coordinates out of range");
    }
  }

  std::vector<BSegment> segs;
  std::vector<int> seg_source;
  std::vector<std::vector<int>> vertex_source(out.outline.rings.size());
  std::vector<std::pair<int, int>> seg_ring_index;
  for (std::size_t ri = 0; ri < out.outline.rings.size(); ++ri) {
    const Ring& r = out.outline.rings[ri];
    const std::size_t n = r.size();
    vertex_source[ri].assign(n, -1);
    std::vector<int> seg_ids(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Point& p = r[k];
      const Point& q = r[(k + 1) % n];
      segs.emplace_back(BPoint(int(p.x), int(p.y)), BPoint(int(q.x), int(q.y)));
      seg_ring_index.emplace_back(int(ri), int(k));
      SourceSite s;
      s.type = SourceSite::Type::Segment;
      s.a = p;
      s.b = q;
      s.ring = int(ri);
      s.index = int(k);
      seg_ids[k] = int(out.sources.size());
      seg_source.push_back(seg_ids[k]);
      out.sources.push_back(s);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const Point& prev = r[(k + n - 1) % n];
      const Point& cur = r[k];
      const Point& next = r[(k + 1) % n];
      double c = cross(Vec2(cur - prev), Vec2(next - cur));
      if (c < 0) {
        SourceSite s;
        s.type = SourceSite::Type::Vertex;
        s.a = cur;
        s.b = cur;
        s.ring = int(ri);
        s.index = int(k);
        vertex_source[ri][k] = int(out.sources.size());
        out.sources.push_back(s);
      }
    }
    std::vector<int> order;
    for (std::size_t kk = n; kk-- > 0;) {
      order.push_back(seg_ids[kk]);
      if (vertex_source[ri][kk] >= 0) order.push_back(vertex_source[ri][kk]);
    }
    out.ring_sources.push_back(std::move(order));
  }

  VD vd;
  bp::construct_voronoi(segs.begin(), segs.end(), &vd);

  const auto* edge_base = &vd.edges()[0];
  auto vid = [&](const VD::edge_type* e) { return std::size_t(e - edge_base); };
  auto cell_source = [&](const VD::cell_type* c) -> int {
    std::size_t si = c->source_index();
    if (c->contains_segment()) return seg_source[si];
    auto [ri, k] = seg_ring_index[si];
    int n = int(out.outline.rings[ri].size());
    int vi = c->source_category() == bp::SOURCE_CATEGORY_SEGMENT_START_POINT ? k : (k + 1) % n;
    return vertex_source[ri][vi];
  };
  auto v0 = [](const VD::edge_type* e) { return Vec2(e->vertex0()->x(), e->vertex0()->y()); };
  auto v1 = [](const VD::edge_type* e) { return Vec2(e->vertex1()->x(), e->vertex1()->y()); };

  auto make_chain_edge = [&](const VD::edge_type* e) {
    ChainEdge ce;
    ce.p0 = v0(e);
    ce.p1 = v1(e);
    ce.vd_id = vid(e);
    ce.twin_id = vid(e->twin());
    ce.secondary = e->is_secondary();
    const VD::cell_type* lc = e->cell();
    const VD::cell_type* rc = e->twin()->cell();
    ce.other_source = cell_source(rc);
    if (ce.secondary) {
      ce.kind = EdgeKind::Rib;
    } else if (lc->contains_point() && rc->contains_point()) {
      ce.kind = EdgeKind::VertexVertex;
    } else if (lc->contains_point() || rc->contains_point()) {
      ce.kind = EdgeKind::VertexLine;
    } else {
      ce.kind = EdgeKind::LineLine;
    }
    return ce;
  };

  for (const auto& cell : vd.cells()) {
    const VD::edge_type* inc = cell.incident_edge();
    if (!inc) continue;
    std::vector<const VD::edge_type*> cyc;
    const VD::edge_type* e = inc;
    do {
      cyc.push_back(e);
      e = e->next();
    } while (e != inc);
    const std::size_t m = cyc.size();
    auto finite = [](const VD::edge_type* x) { return x->vertex0() && x->vertex1(); };

    CellChain chain;
    if (cell.contains_segment()) {
      const int src = seg_source[cell.source_index()];
      const SourceSite& s = out.sources[src];
      Vec2 from(s.a), to(s.b);
      int start = -1;
      for (std::size_t i = 0; i < m && start < 0; ++i) {
        if (!finite(cyc[i]) || !near(v0(cyc[i]), to)) continue;
        for (std::size_t j = 0; j < m; ++j) {
          const VD::edge_type* x = cyc[(i + j) % m];
          if (!finite(x)) break;
          if (j > 0 && near(v0(x), to)) break;
          if (near(v1(x), from)) {
            start = int(i);
            break;
          }
        }
      }
      if (start < 0) continue;
      chain.source = src;
      for (std::size_t j = 0; j < m; ++j) {
        const VD::edge_type* x = cyc[(start + j) % m];
        chain.edges.push_back(make_chain_edge(x));
        if (near(v1(x), from)) break;
      }
    } else {
      const int src = cell_source(&cell);
      if (src < 0) continue;  // convex vertex: cell lies outside
      Vec2 p(out.sources[src].a);
      int last = -1;
      for (std::size_t i = 0; i < m; ++i) {
        if (!finite(cyc[i])) {
          last = -2;
          break;
        }
        if (near(v1(cyc[i]), p) && !near(v0(cyc[i]), p)) last = int(i);
      }
      if (last < 0) continue;
      chain.source = src;
      for (std::size_t j = 1; j <= m; ++j) chain.edges.push_back(make_chain_edge(cyc[(last + j) % m]));
    }
    out.chains.push_back(std::move(chain));
  }
  std::sort(out.chains.begin(), out.chains.end(),
            [](const CellChain& a, const CellChain& b) { return a.source < b.source; });
  return out;
}

double cot_half(double alpha_max_deg) {
  double h = alpha_max_deg * std::numbers::pi / 360.0;
  return std::cos(h) / std::sin(h);
}

// Subdivides (x_a, x_b) in a canonical frame with curvature scale `c`
// (focus distance for parabolas, half distance for vertex-vertex edges),
// stepping away from the end with the smaller |x| so that mirrored inputs
// yield mirrored nodes.
void subdivide(double xa, double xb, double c, bool parabola, const StOptions& opt, std::vector<double>& xs) {
  const double d = opt.d_discretization * kUmPerMm;
  const double tol = opt.discretization_tolerance * kUmPerMm;
  bool forward = std::abs(xa) <= std::abs(xb);
  double start = forward ? xa : xb;
  double end = forward ? xb : xa;
  double dir = end > start ? 1.0 : -1.0;
  double span = std::abs(end - start);
  auto max_step = [&](double x0, double x1) {
    double lo = std::min(std::abs(x0), std::abs(x1));
    double hi = std::max(std::abs(x0), std::abs(x1));
    if (std::signbit(x0) != std::signbit(x1)) lo = 0;
    double slope_hi = parabola ? hi / c : 0.0;
    double by_len = d / std::sqrt(1.0 + slope_hi * slope_hi);
    double flat = parabola ? std::sqrt(1.0 + (lo / c) * (lo / c)) : 1.0;
    double by_tol = std::sqrt(8.0 * c * tol * flat);
    return std::min(by_len, by_tol);
  };
  std::vector<double> local;
  double x = start;
  double done = 0;
  while (true) {
    double h = max_step(x, x + dir * std::min(d, span - done));
    h = std::min(h, max_step(x, x + dir * h));
    if (done + h >= span - 1e-6) break;
    done += h;
    x = start + dir * done;
    local.push_back(x);
  }
  if (!forward) std::reverse(local.begin(), local.end());
  xs.insert(xs.end(), local.begin(), local.end());
}

}  // namespace

double parabola_boundary(double alpha_max_deg) { return cot_half(alpha_max_deg); }
double vertex_vertex_boundary(double alpha_max_deg) { return 0.5 * cot_half(alpha_max_deg); }

std::vector<DiscretizedPoint> discretize_edge(const VoronoiEdgeInfo& e, const std::vector<SourceSite>& sources,
                                              const StOptions& opt) {
  std::vector<DiscretizedPoint> out;
  if (e.secondary || e.kind == EdgeKind::LineLine || e.kind == EdgeKind::Rib) return out;
  const double margin = 1.0;  // um, keeps split points off the endpoints
  Vec2 origin, u, n;
  double c = 0;
  bool parabola = e.kind == EdgeKind::VertexLine;
  if (parabola) {
    const SourceSite& ls = sources[e.left_source];
    const SourceSite& rs = sources[e.right_source];
    const SourceSite& pt = ls.type == SourceSite::Type::Vertex ? ls : rs;
    const SourceSite& sg = ls.type == SourceSite::Type::Vertex ? rs : ls;
    Vec2 a(sg.a), b(sg.b), f(pt.a);
    u = (b - a) * (1.0 / (b - a).norm());
    origin = a + u * dot(f - a, u);
    c = dist(f, origin);
    if (c < 1e-9) return out;
    n = (f - origin) * (1.0 / c);
  } else {
    Vec2 a(sources[e.left_source].a), b(sources[e.right_source].a);
    origin = (a + b) * 0.5;
    c = dist(a, b) * 0.5;
    if (c < 1e-9) return out;
    Vec2 ab = (b - a) * (1.0 / (2 * c));
    u = Vec2(-ab.y, ab.x);
  }
  double x0 = dot(e.p0 - origin, u);
  double x1 = dot(e.p1 - origin, u);
  double lo = std::min(x0, x1), hi = std::max(x0, x1);
  double xb = (parabola ? parabola_boundary(opt.alpha_max_deg) : vertex_vertex_boundary(opt.alpha_max_deg)) * c *
              (parabola ? 1.0 : 2.0);
  std::vector<double> crit;
  for (double x : {-xb, 0.0, xb}) {
    if (x > lo + margin && x < hi - margin) crit.push_back(x);
  }
  std::vector<double> knots{lo};
  knots.insert(knots.end(), crit.begin(), crit.end());
  knots.push_back(hi);
  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (i > 0) xs.push_back(knots[i]);
    subdivide(knots[i], knots[i + 1], c, parabola, opt, xs);
  }
  if (x0 > x1) std::reverse(xs.begin(), xs.end());
  for (double x : xs) {
    DiscretizedPoint dp;
    if (parabola) {
      double y = (x * x + c * c) / (2 * c);
      dp.p = origin + u * x + n * y;
      dp.R = coord_to_mm(y);
    } else {
      dp.p = origin + u * x;
      dp.R = coord_to_mm(std::sqrt(x * x + c * c));
    }
    out.push_back(dp);
  }
  return out;
}

VoronoiGraph build_interior_voronoi(const PolygonSet& outline) {
  InteriorVd ivd = compute_interior(outline);
  VoronoiGraph g;
  g.sources = ivd.sources;
  for (const CellChain& ch : ivd.chains) {
    for (const ChainEdge& ce : ch.edges) {
      if (ce.vd_id > ce.twin_id && ce.other_source >= 0) continue;
      VoronoiEdgeInfo info;
      info.p0 = ce.p0;
      info.p1 = ce.p1;
      info.left_source = ch.source;
      info.right_source = ce.other_source;
      info.kind = ce.kind;
      info.secondary = ce.secondary;
      g.edges.push_back(info);
    }
  }
  return g;
}

std::vector<int> SkeletalTrapezoidation::faces() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].prev < 0 && edges[e].source >= 0) out.push_back(int(e));
  }
  return out;
}

std::vector<int> SkeletalTrapezoidation::face_edges(int first_edge) const {
  std::vector<int> out;
  for (int e = first_edge; e >= 0; e = edges[e].next) out.push_back(e);
  return out;
}

Vec2 SkeletalTrapezoidation::support_point(int source, const Vec2& p) const {
  const SourceSite& s = sources[source];
  if (s.type == SourceSite::Type::Vertex) return Vec2(s.a);
  Vec2 a(s.a), b(s.b);
  Vec2 ab = b - a;
  double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return a + ab * t;
}

int SkeletalTrapezoidation::add_node(const Point& p, double R) {
  StNode n;
  n.pos = p;
  n.R = R;
  n.b_tilde = 2.0 * R / w_star;
  nodes.push_back(n);
  out_edges.emplace_back();
  return int(nodes.size() - 1);
}

int SkeletalTrapezoidation::add_edge(int from, int to, EdgeKind kind, int source) {
  StEdge e;
  e.from = from;
  e.to = to;
  e.kind = kind;
  e.source = source;
  edges.push_back(e);
  int id = int(edges.size() - 1);
  out_edges[from].push_back(id);
  return id;
}

int SkeletalTrapezoidation::split_edge(int e, const Vec2& p, double R) {
  const int a = edges[e].from;
  const int b = edges[e].to;
  Point rp = round_point(p);
  if (dist(Vec2(rp), pos(a)) < 1.0) return a;
  if (dist(Vec2(rp), pos(b)) < 1.0) return b;
  const int t = edges[e].twin;
  const int v = add_node(rp, R);
  const EdgeKind kind = edges[e].kind;
  const bool central = edges[e].central;

  auto insert_side = [&](int edge, int far) {
    // edge: x -> far becomes x -> v, then rib down, rib up, v -> far.
    const int src = edges[edge].source;
    const int old_next = edges[edge].next;
    const int old_to = edges[edge].to;
    (void)old_to;
    edges[edge].to = v;
    Point sp = round_point(support_point(src, Vec2(rp)));
    int s = add_node(sp, 0.0);
    int down = add_edge(v, s, EdgeKind::Rib, src);
    int up = add_edge(s, v, EdgeKind::Rib, src);
    int rest = add_edge(v, far, kind, src);
    edges[rest].central = central;
    edges[down].twin = up;
    edges[up].twin = down;
    edges[edge].next = down;
    edges[down].prev = edge;
    edges[up].next = rest;
    edges[rest].prev = up;
    edges[rest].next = old_next;
    if (old_next >= 0) edges[old_next].prev = rest;
    return rest;
  };
  int e_rest = insert_side(e, b);
  int t_rest = t >= 0 ? insert_side(t, a) : -1;
  if (t >= 0) {
    edges[e].twin = t_rest;
    edges[t_rest].twin = e;
    edges[e_rest].twin = t;
    edges[t].twin = e_rest;
  }
  if (central) nodes[v].central = true;
  return v;
}

int SkeletalTrapezoidation::split_edge_at(int e, double t) {
  const StEdge& ed = edges[e];
  Vec2 p = lerp(pos(ed.from), pos(ed.to), t);
  double R = nodes[ed.from].R + (nodes[ed.to].R - nodes[ed.from].R) * t;
  return split_edge(e, p, R);
}

SkeletalTrapezoidation build_st(const PolygonSet& outline, const StOptions& opt) {
  InteriorVd ivd = compute_interior(outline);
  SkeletalTrapezoidation st;
  st.w_star = opt.w_star;
  st.sources = ivd.sources;
  st.outline = ivd.outline;
  st.ring_sources = ivd.ring_sources;
  st.source_first_edge.assign(st.sources.size(), -1);

  std::unordered_map<Point, int, PointHash> node_at;
  auto node_for = [&](const Vec2& p, double R) {
    Point rp = round_point(p);
    auto it = node_at.find(rp);
    if (it != node_at.end()) return it->second;
    int id = st.add_node(rp, R);
    node_at.emplace(rp, id);
    return id;
  };
  std::map<std::size_t, std::vector<DiscretizedPoint>> disc_cache;
  std::map<std::pair<int, int>, int> half_edges;

  auto link_twin = [&](int e) {
    auto it = half_edges.find({st.edges[e].to, st.edges[e].from});
    if (it != half_edges.end() && st.edges[it->second].twin < 0) {
      st.edges[e].twin = it->second;
      st.edges[it->second].twin = e;
    }
    half_edges[{st.edges[e].from, st.edges[e].to}] = e;
  };

  for (const CellChain& ch : ivd.chains) {
    const int src = ch.source;
    const SourceSite& site = st.sources[src];
    auto radius = [&](const Vec2& p) { return coord_to_mm(dist_to_source(site, p)); };

    struct Piece {
      int a, b;
      EdgeKind kind;
    };
    std::vector<int> ks;  // skeletal node sequence
    std::vector<Piece> pieces;
    bool rib_start = false, rib_end = false;
    int outline_start = -1, outline_end = -1;

    auto push_node = [&](int n, EdgeKind kind) {
      if (!ks.empty() && ks.back() == n) return;
      if (!ks.empty()) pieces.push_back({ks.back(), n, kind});
      ks.push_back(n);
    };

    const std::size_t m = ch.edges.size();
    for (std::size_t i = 0; i < m; ++i) {
      const ChainEdge& ce = ch.edges[i];
      if (ce.secondary) {
        if (i == 0) {
          rib_start = true;
          outline_start = node_for(ce.p0, 0.0);
          push_node(node_for(ce.p1, radius(ce.p1)), EdgeKind::Rib);
        } else {
          rib_end = true;
          outline_end = node_for(ce.p1, 0.0);
          push_node(node_for(ce.p0, radius(ce.p0)), EdgeKind::Rib);
        }
        continue;
      }
      if (ks.empty()) push_node(node_for(ce.p0, i == 0 ? 0.0 : radius(ce.p0)), ce.kind);
      std::vector<DiscretizedPoint> pts;
      if (ce.kind == EdgeKind::VertexLine || ce.kind == EdgeKind::VertexVertex) {
        std::size_t key = std::min(ce.vd_id, ce.twin_id);
        auto it = disc_cache.find(key);
        if (it == disc_cache.end()) {
          VoronoiEdgeInfo info;
          info.p0 = ce.vd_id == key ? ce.p0 : ce.p1;
          info.p1 = ce.vd_id == key ? ce.p1 : ce.p0;
          info.left_source = src;
          info.right_source = ce.other_source;
          info.kind = ce.kind;
          it = disc_cache.emplace(key, discretize_edge(info, st.sources, opt)).first;
        }
        pts = it->second;
        if (ce.vd_id != key) std::reverse(pts.begin(), pts.end());
      }
      for (const DiscretizedPoint& dp : pts) push_node(node_for(dp.p, dp.R), ce.kind);
      bool last = i + 1 == m;
      push_node(node_for(ce.p1, last ? 0.0 : radius(ce.p1)), ce.kind);
    }
    if (pieces.empty()) continue;

    int prev_down = -1;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      const Piece& pc = pieces[j];
      int first = -1;
      int last = -1;
      auto chain_edge = [&](int e) {
        if (last >= 0) {
          st.edges[last].next = e;
          st.edges[e].prev = last;
        } else {
          first = e;
        }
        last = e;
      };
      if (j > 0 || rib_start) {
        int s = j == 0 ? outline_start : st.edges[prev_down].to;
        int up = st.add_edge(s, pc.a, EdgeKind::Rib, src);
        if (j > 0) {
          st.edges[up].twin = prev_down;
          st.edges[prev_down].twin = up;
          half_edges[{s, pc.a}] = up;
        } else {
          link_twin(up);
        }
        chain_edge(up);
      }
      int ske = st.add_edge(pc.a, pc.b, pc.kind, src);
      link_twin(ske);
      chain_edge(ske);
      if (j + 1 < pieces.size() || rib_end) {
        int s;
        if (j + 1 < pieces.size()) {
          Vec2 sp = st.support_point(src, st.pos(pc.b));
          s = node_for(sp, 0.0);
        } else {
          s = outline_end;
        }
        int down = st.add_edge(pc.b, s, EdgeKind::Rib, src);
        if (j + 1 == pieces.size()) {
          link_twin(down);
        } else {
          half_edges[{pc.b, s}] = down;
        }
        chain_edge(down);
        prev_down = down;
      }
      if (j == 0) st.source_first_edge[src] = first;
    }
  }
  return st;
}

std::vector<Domain> assign_domains(const SkeletalTrapezoidation& st) {
  std::vector<Domain> out;
  for (std::size_t r = 0; r < st.ring_sources.size(); ++r) {
    Domain d;
    d.ring = int(r);
    for (int src : st.ring_sources[r]) {
      int f = st.source_first_edge[src];
      while (f >= 0) {
        d.faces.push_back(f);
        int last = f;
        while (st.edges[last].next >= 0) last = st.edges[last].next;
        int tw = st.edges[last].twin;
        if (tw < 0 || st.edges[tw].source != src || st.edges[tw].prev >= 0) break;
        f = tw;
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace beadpath
