#include "beadpath/geometry.hpp"

#include <algorithm>

#include "clipper.hpp"

namespace beadpath {

namespace {

using ClipperLib::IntPoint;
using ClipperLib::Path;
using ClipperLib::Paths;

Paths to_paths(const PolygonSet& s) {
  Paths out;
  out.reserve(s.rings.size());
  for (const Ring& r : s.rings) {
    Path p;
    p.reserve(r.size());
    for (const Point& pt : r) p.push_back(IntPoint(pt.x, pt.y));
    out.push_back(std::move(p));
  }
  return out;
}

PolygonSet from_paths(const Paths& paths) {
  PolygonSet s;
  for (const Path& p : paths) {
    if (p.size() < 3) continue;
    if (ClipperLib::Area(p) == 0.0) continue;
    Ring r;
    r.reserve(p.size());
    for (const IntPoint& ip : p) r.push_back({ip.X, ip.Y});
    s.rings.push_back(std::move(r));
  }
  return s;
}

using i128 = __int128;

int orient(const Point& a, const Point& b, const Point& c) {
  i128 v = i128(b.x - a.x) * i128(c.y - a.y) - i128(b.y - a.y) * i128(c.x - a.x);
  return (v > 0) - (v < 0);
}

bool within_box(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

struct Seg {
  Point a, b;
  std::size_t ring, idx, ring_size;
  Coord minx, maxx, miny, maxy;
};

bool segments_touch(const Seg& s, const Seg& t) {
  int o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
  int o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && within_box(s.a, s.b, t.a)) return true;
  if (o2 == 0 && within_box(s.a, s.b, t.b)) return true;
  if (o3 == 0 && within_box(t.a, t.b, s.a)) return true;
  if (o4 == 0 && within_box(t.a, t.b, s.b)) return true;
  return false;
}

// True if segments that share exactly the endpoint `shared` also overlap
// along a stretch or cross elsewhere.
bool bad_shared_contact(const Seg& s, const Seg& t, const Point& shared) {
  const Point& so = s.a == shared ? s.b : s.a;
  const Point& to = t.a == shared ? t.b : t.a;
  if (orient(s.a, s.b, to) == 0 && within_box(s.a, s.b, to)) return true;
  if (orient(t.a, t.b, so) == 0 && within_box(t.a, t.b, so)) return true;
  return false;
}

bool conflict(const Seg& s, const Seg& t) {
  if (s.maxy < t.miny || t.maxy < s.miny) return false;
  bool adjacent = s.ring == t.ring &&
                  ((s.idx + 1) % s.ring_size == t.idx || (t.idx + 1) % t.ring_size == s.idx);
  if (adjacent) {
    Point shared = (s.idx + 1) % s.ring_size == t.idx ? s.b : s.a;
    if (s.ring_size == 2) return true;
    return bad_shared_contact(s, t, shared);
  }
  for (const Point& p : {s.a, s.b}) {
    for (const Point& q : {t.a, t.b}) {
      if (p == q) return bad_shared_contact(s, t, p);
    }
  }
  return segments_touch(s, t);
}

}  // namespace

double signed_area(const Ring& ring) {
  if (ring.size() < 3) throw InvalidPolygon("ring has fewer than 3 vertices");
  i128 acc = 0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    acc += i128(p.x) * i128(q.y) - i128(q.x) * i128(p.y);
  }
  return double(acc) / 2.0 / (kUmPerMm * kUmPerMm);
}

double area(const PolygonSet& set) {
  double a = 0;
  for (const Ring& r : set.rings) a += signed_area(r);
  return a;
}

bool has_self_intersections(const PolygonSet& set) {
  std::vector<Seg> segs;
  for (std::size_t r = 0; r < set.rings.size(); ++r) {
    const Ring& ring = set.rings[r];
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point& a = ring[i];
      const Point& b = ring[(i + 1) % ring.size()];
      segs.push_back({a, b, r, i, ring.size(), std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y),
                      std::max(a.y, b.y)});
    }
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& s, const Seg& t) { return s.minx < t.minx; });
  std::vector<const Seg*> active;
  for (const Seg& s : segs) {
    std::size_t keep = 0;
    for (const Seg* t : active) {
      if (t->maxx >= s.minx) active[keep++] = t;
    }
    active.resize(keep);
    for (const Seg* t : active) {
      if (conflict(s, *t)) return true;
    }
    active.push_back(&s);
  }
  return false;
}

void validate(const PolygonSet& set) {
  for (const Ring& r : set.rings) {
    if (r.size() < 3) throw InvalidPolygon("ring has fewer than 3 vertices");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == r[(i + 1) % r.size()]) throw InvalidPolygon("ring has repeated consecutive vertices");
    }
  }
  if (has_self_intersections(set)) throw InvalidPolygon("polygon edges intersect");
}

PolygonSet boolean(const PolygonSet& a, const PolygonSet& b, BoolOp op) {
  validate(a);
  validate(b);
  return clip(a, b, op);
}

PolygonSet clip(const PolygonSet& a, const PolygonSet& b, BoolOp op) {
  ClipperLib::ClipType ct = ClipperLib::ctUnion;
  switch (op) {
    case BoolOp::Union: ct = ClipperLib::ctUnion; break;
    case BoolOp::Difference: ct = ClipperLib::ctDifference; break;
    case BoolOp::Intersection: ct = ClipperLib::ctIntersection; break;
    case BoolOp::Xor: ct = ClipperLib::ctXor; break;
  }
  ClipperLib::Clipper c;
  c.AddPaths(to_paths(a), ClipperLib::ptSubject, true);
  c.AddPaths(to_paths(b), ClipperLib::ptClip, true);
  Paths out;
  c.Execute(ct, out, ClipperLib::pftNonZero, ClipperLib::pftNonZero);
  return from_paths(out);
}

PolygonSet unite(const PolygonSet& a) {
  ClipperLib::Clipper c;
  c.AddPaths(to_paths(a), ClipperLib::ptSubject, true);
  Paths out;
  c.Execute(ClipperLib::ctUnion, out, ClipperLib::pftNonZero, ClipperLib::pftNonZero);
  return from_paths(out);
}

PolygonSet offset(const PolygonSet& s, double delta_mm, double arc_tolerance_mm) {
  if (s.empty()) return {};
  ClipperLib::ClipperOffset co(2.0, std::max(0.05, arc_tolerance_mm * kUmPerMm));
  co.AddPaths(to_paths(unite(s)), ClipperLib::jtRound, ClipperLib::etClosedPolygon);
  Paths out;
  co.Execute(out, delta_mm * kUmPerMm);
  return unite(from_paths(out));
}

PolygonSet morphological_close(const PolygonSet& s, double radius_mm) {
  if (s.empty()) return {};
  if (radius_mm <= 0) return unite(s);
  return offset(offset(s, radius_mm), -radius_mm);
}

PolygonSet morphological_open(const PolygonSet& s, double radius_mm) {
  if (radius_mm <= 0 || s.empty()) return unite(s);
  return offset(offset(s, -radius_mm), radius_mm);
}

PolygonSet normalize(const PolygonSet& s, double clean_distance_um) {
  ClipperLib::Clipper c;
  c.StrictlySimple(true);
  c.AddPaths(to_paths(s), ClipperLib::ptSubject, true);
  Paths out;
  c.Execute(ClipperLib::ctUnion, out, ClipperLib::pftNonZero, ClipperLib::pftNonZero);
  ClipperLib::CleanPolygons(out, clean_distance_um);
  return from_paths(out);
}

std::size_t component_count(const PolygonSet& s) {
  std::size_t n = 0;
  for (const Ring& r : s.rings) {
    if (r.size() >= 3 && signed_area(r) > 0) ++n;
  }
  return n;
}

bool contains(const PolygonSet& s, const Vec2& p) {
  bool inside = false;
  for (const Ring& r : s.rings) {
    for (std::size_t i = 0, j = r.size() - 1; i < r.size(); j = i++) {
      double xi = double(r[i].x), yi = double(r[i].y);
      double xj = double(r[j].x), yj = double(r[j].y);
      if ((yi > p.y) != (yj > p.y) && p.x < (xj - xi) * (p.y - yi) / (yj - yi) + xi) inside = !inside;
    }
  }
  return inside;
}

PolygonSet make_rect(double x0, double y0, double x1, double y1) {
  PolygonSet s;
  s.rings.push_back({point_mm(x0, y0), point_mm(x1, y0), point_mm(x1, y1), point_mm(x0, y1)});
  return s;
}

Ring make_ring_mm(const std::vector<std::pair<double, double>>& pts) {
  Ring r;
  r.reserve(pts.size());
  for (auto [x, y] : pts) r.push_back(point_mm(x, y));
  return r;
}

}  // namespace beadpath
