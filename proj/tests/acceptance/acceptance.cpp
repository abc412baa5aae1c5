// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beadpath/analysis.hpp"
#include "beadpath/io.hpp"
#include "beadpath/pipeline.hpp"
#include "beadpath/skeleton.hpp"

using namespace beadpath;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PipelineConfig config(const std::string& scheme, double w_star = 0.4) {
  PipelineConfig cfg;
  cfg.scheme.name = scheme;
  cfg.scheme.w_star = w_star;
  return cfg;
}

PolygonSet ring_set(const std::vector<std::pair<double, double>>& pts) {
  PolygonSet s;
  s.rings.push_back(make_ring_mm(pts));
  return s;
}

PolygonSet wedge(double opening_deg, double length) {
  double h = length * std::tan(opening_deg * M_PI / 360.0);
  return ring_set({{0, 0}, {length, -h}, {length, h}});
}

// Tapered strip whose width grows linearly from 0.4 to 4 mm.
PolygonSet wedge_sweep() { return ring_set({{0, -0.2}, {20, -2}, {20, 2}, {0, 0.2}}); }

PolygonSet regular_polygon(double cx, double cy, double r, int n, double phase = 0) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    double a = phase + 2 * M_PI * i / n;
    pts.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return ring_set(pts);
}

// Square plate with a staggered grid of hexagonal holes.
PolygonSet honeycomb() {
  PolygonSet s = make_rect(0, 0, 21, 21);
  const double side = 1.2, wall = 0.9;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 5; ++j) {
      double cx = 3 + i * (side * 1.5 + wall);
      double cy = 3 + j * (side * std::sqrt(3) + wall) + (i % 2) * (side * std::sqrt(3) + wall) / 2;
      Ring hole = regular_polygon(cx, cy, side, 6).rings[0];
      std::reverse(hole.begin(), hole.end());
      s.rings.push_back(hole);
    }
  }
  return s;
}

PolygonSet letter_e() {
  return ring_set({{0, 0}, {4, 0}, {4, 1}, {1.3, 1}, {1.3, 2.2}, {3, 2.2}, {3, 3}, {1.3, 3}, {1.3, 4.3}, {4, 4.3},
                   {4, 5.3}, {0, 5.3}});
}

PolygonSet wavy_disc(int n) {
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < n; ++k) {
    double a = 2 * M_PI * k / n;
    double r = 20 * (1 + 0.15 * std::sin(7 * a) + 0.05 * std::sin(31 * a));
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return ring_set(pts);
}

double misfill(const std::vector<ExtrusionLine>& lines, const PolygonSet& outline) {
  auto acc = compute_accuracy(lines, outline);
  return acc.overfill_area + acc.underfill_area;
}

// Length of toolpath with widths inside [lo, hi], over total length.
double fraction_in_range(const std::vector<ExtrusionLine>& lines, double lo, double hi) {
  double in = 0, total = 0;
  for (auto& l : lines) {
    for (std::size_t i = 0; i + 1 < l.sites.size(); ++i) {
      double len = coord_to_mm(dist(l.sites[i].pos, l.sites[i + 1].pos));
      bool ok = l.sites[i].w >= lo - 1e-9 && l.sites[i].w <= hi + 1e-9 && l.sites[i + 1].w >= lo - 1e-9 &&
                l.sites[i + 1].w <= hi + 1e-9;
      total += len;
      if (ok) in += len;
    }
  }
  return total > 0 ? in / total : 1.0;
}

double directed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double worst = 0;
  for (auto& p : a) {
    double best = 1e18;
    for (auto& q : b) best = std::min(best, dist(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<Vec2> site_positions(const std::vector<ExtrusionLine>& lines) {
  std::vector<Vec2> out;
  for (auto& l : lines)
    for (auto& s : l.sites) out.push_back(Vec2(s.pos));
  return out;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab = b - a;
  double l2 = dot(ab, ab);
  double t = l2 > 0 ? std::clamp(dot(p - a, ab) / l2, 0.0, 1.0) : 0.0;
  return dist(p, a + ab * t);
}

double distance_to_rings(const Vec2& p, const std::vector<std::vector<Vec2>>& rings) {
  double best = 1e18;
  for (auto& r : rings)
    for (std::size_t i = 0; i + 1 < r.size(); ++i) best = std::min(best, point_segment_distance(p, r[i], r[i + 1]));
  return best;
}

// 1. Per-tip misfill of the uniform scheme on a 45 degree wedge (bisector
// angle 135). The first loop corner is isolated by cutting halfway to the
// second loop's corner.
Outcome wedge_tip() {
  const double w = 0.4, alpha = 135 * M_PI / 180;
  const double expect = 0.25 * w * w * (std::tan(alpha / 2) - alpha / 2);
  auto t0 = std::chrono::steady_clock::now();
  PolygonSet outline = wedge(45, 3);
  auto lines = generate_toolpaths(outline, config("uniform"));
  auto acc = compute_accuracy(lines, outline);
  double secs = seconds_since(t0);
  std::vector<double> apex(2, 1e18);
  for (auto& l : lines)
    if (l.index < 2)
      for (auto& s : l.sites) apex[l.index] = std::min(apex[l.index], coord_to_mm(double(s.pos.x)));
  if (apex[1] > 1e17) return {false, "second loop missing"};
  PolygonSet window = make_rect(-1, -5, 0.5 * (apex[0] + apex[1]), 5);
  double under = area(clip(acc.underfill, window, BoolOp::Intersection));
  double over = area(clip(acc.overfill, window, BoolOp::Intersection));
  bool ok = std::abs(under - expect) <= 0.1 * expect && std::abs(over - expect) <= 0.1 * expect && secs < 1.0;
  return {ok, fmt("expected %.4f mm2 each; tip underfill %.4f (%+.1f%%), overfill %.4f (%+.1f%%); %.3f s", expect,
                  under, 100 * (under / expect - 1), over, 100 * (over / expect - 1), secs)};
}

// 2. Width ranges on the wedge sweep.
Outcome width_range() {
  PolygonSet outline = wedge_sweep();
  double f_in = fraction_in_range(generate_toolpaths(outline, config("inward")), 0.3, 0.6);
  double f_ev = fraction_in_range(generate_toolpaths(outline, config("evenly")), 0.3, 0.6);
  auto centered = generate_toolpaths(outline, config("centered"));
  double cmin = 1e9, cmax = 0;
  int centers = 0;
  for (auto& l : centered)
    for (auto& s : l.sites)
      if (s.center) {
        cmin = std::min(cmin, s.w);
        cmax = std::max(cmax, s.w);
        ++centers;
      }
  bool ok = f_in >= 1 - 1e-12 && f_ev >= 1 - 1e-12 && centers > 0 && cmin >= 0.1 - 1e-9 && cmax <= 0.72 + 1e-9;
  return {ok, fmt("length in [0.3,0.6]: inward %.2f%%, evenly %.2f%%; centered center beads (%d sites) in [%.3f, %.3f]",
                  100 * f_in, 100 * f_ev, centers, cmin, cmax)};
}

// 3. Mass conservation at integral central nodes and the coverage identity.
Outcome mass_conservation() {
  std::vector<PolygonSet> shapes = {wedge_sweep(), honeycomb(), letter_e(), regular_polygon(0, 0, 3, 40)};
  double worst = 0;
  int sampled = 0;
  for (auto& s : shapes) {
    for (const char* scheme : {"evenly", "inward"}) {
      auto res = run_pipeline(s, config(scheme));
      for (std::size_t v = 0; v < res.st.nodes.size(); ++v) {
        const auto& n = res.st.nodes[v];
        if (!n.central || n.b_hat < 0.5 || std::abs(n.b_hat - std::round(n.b_hat)) > 1e-9) continue;
        worst = std::max(worst, std::abs(res.beadings[v].total() - 2 * n.R));
        ++sampled;
      }
    }
  }
  double worst_identity = 0;
  for (auto& s : shapes) {
    auto acc = compute_accuracy(generate_toolpaths(s, config("inward")), s);
    worst_identity =
        std::max(worst_identity, std::abs(acc.covered_area + acc.underfill_area - acc.outline_area) / acc.outline_area);
  }
  bool ok = sampled > 0 && worst <= 1e-6 && worst_identity <= 0.005;
  return {ok, fmt("%d central nodes, max |sum w - 2R| = %.2e mm; covered + underfill vs outline: %.3f%%", sampled,
                  worst, 100 * worst_identity)};
}

// 4. Exact-fit rectangles.
Outcome exact_fit() {
  double worst_over = 0, worst_under = 0;
  std::string where;
  for (int i = 1; i <= 5; ++i) {
    // long strips: each 90 degree loop corner adds 0.0086 mm2 of over- and underfill
    PolygonSet rect = make_rect(0, 0, 100, 2 * i * 0.4);
    for (const char* scheme : {"uniform", "outer", "evenly", "centered", "inward"}) {
      auto lines = generate_toolpaths(rect, config(scheme));
      auto acc = compute_accuracy(lines, rect);
      double under = acc.underfill_percent;
      if (std::string(scheme) == "outer" && i > 1) {
        // the outer scheme leaves everything inside its perimeter open
        PolygonSet band = boolean(rect, offset(rect, -0.4), BoolOp::Difference);
        under = 100 * area(clip(acc.underfill, band, BoolOp::Intersection)) / area(band);
      }
      if (acc.overfill_percent > worst_over || under > worst_under) where = fmt("%s i=%d", scheme, i);
      worst_over = std::max(worst_over, acc.overfill_percent);
      worst_under = std::max(worst_under, under);
    }
  }
  bool ok = worst_over < 0.1 && worst_under < 0.1;
  return {ok, fmt("worst overfill %.4f%%, underfill %.4f%% (%s); outer underfill taken on its perimeter band",
                  worst_over, worst_under, where.c_str())};
}

// 5. Inward vs uniform total misfill.
Outcome misfill_dominance() {
  PolygonSet sweep = wedge_sweep(), honey = honeycomb();
  double ws_u = misfill(generate_toolpaths(sweep, config("uniform")), sweep);
  double ws_i = misfill(generate_toolpaths(sweep, config("inward")), sweep);
  double hc_u = misfill(generate_toolpaths(honey, config("uniform")), honey);
  double hc_i = misfill(generate_toolpaths(honey, config("inward")), honey);
  double r1 = ws_i / ws_u, r2 = hc_i / hc_u;
  bool ok = r1 <= 0.25 && r2 <= 0.25;
  return {ok, fmt("wedge sweep %.4f / %.4f mm2 = %.1f%%; honeycomb %.4f / %.4f mm2 = %.1f%%", ws_i, ws_u, 100 * r1,
                  hc_i, hc_u, 100 * r2)};
}

// 6. Toolpaths move at most 10 um when outline vertices move by up to 1 um.
Outcome perturbation() {
  PolygonSet base = wedge_sweep();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> jitter(-1, 1);
  double worst = 0;
  for (const char* scheme : {"evenly", "inward", "centered"}) {
    auto ref = site_positions(generate_toolpaths(base, config(scheme)));
    for (int trial = 0; trial < 5; ++trial) {
      PolygonSet moved = base;
      for (auto& r : moved.rings)
        for (auto& p : r) {
          int dx = jitter(rng), dy = jitter(rng);
          p.x += dx;
          p.y += dx != 0 && dy != 0 ? 0 : dy;  // keep each displacement within 1 um
        }
      auto got = site_positions(generate_toolpaths(moved, config(scheme)));
      worst = std::max({worst, directed_hausdorff(ref, got), directed_hausdorff(got, ref)});
    }
  }
  return {worst <= 10.0, fmt("max Hausdorff distance between site sets: %.2f um", worst)};
}

// Numeric scan for the points where |dR/ds| crosses cos(a/2) along y = h(x),
// R = r(x), for x >= 0.
double scan_boundary(double alpha_deg, const std::function<double(double)>& y, const std::function<double(double)>& r) {
  const double c = std::cos(alpha_deg * M_PI / 360.0);
  const double h = 1e-6;
  double prev = -1;
  for (double x = 0; x < 5; x += h) {
    double ds = std::hypot(h, y(x + h) - y(x));
    double slope = (r(x + h) - r(x)) / ds;
    if (prev >= 0 && slope >= c) return x;
    prev = slope;
  }
  return -1;
}

double nearest_node_um(const SkeletalTrapezoidation& st, const Vec2& p) {
  double best = 1e18;
  for (auto& n : st.nodes) best = std::min(best, dist(Vec2(n.pos), p));
  return best;
}

// 7. Boundary nodes of the significant portion of curved edges.
Outcome appendix_boundaries() {
  // reflex vertex 1 mm above a straight wall: parabola y = (x^2 + 1) / 2
  PolygonSet notch = ring_set({{-5, 0}, {5, 0}, {5, 3}, {0.5, 3}, {0, 1}, {-0.5, 3}, {-5, 3}});
  // two reflex vertices 1 mm apart: straight edge y = 0 with R = sqrt(1/4 + x^2)
  PolygonSet pinch = ring_set({{-5, -3}, {-0.5, -3}, {0, -0.5}, {0.5, -3}, {5, -3}, {5, 3}, {0.5, 3}, {0, 0.5},
                               {-0.5, 3}, {-5, 3}});
  double worst = 0;
  std::string detail;
  for (double a : {120.0, 135.0, 150.0}) {
    StOptions opt;
    opt.alpha_max_deg = a;
    double xp = scan_boundary(a, [](double x) { return 0.5 * (x * x + 1); },
                              [](double x) { return 0.5 * (x * x + 1); });
    double xv = scan_boundary(a, [](double) { return 0.0; }, [](double x) { return std::sqrt(0.25 + x * x); });
    auto st_p = build_st(notch, opt);
    auto st_v = build_st(pinch, opt);
    double yp = 0.5 * (xp * xp + 1);
    double e1 = std::max(nearest_node_um(st_p, Vec2(xp * 1000, yp * 1000)),
                         nearest_node_um(st_p, Vec2(-xp * 1000, yp * 1000)));
    double e2 = std::max(nearest_node_um(st_v, Vec2(xv * 1000, 0)), nearest_node_um(st_v, Vec2(-xv * 1000, 0)));
    double f1 = std::abs(parabola_boundary(a) - xp) * 1000, f2 = std::abs(vertex_vertex_boundary(a) - xv) * 1000;
    worst = std::max({worst, e1, e2, f1, f2});
    detail += fmt("%s%.0f: %.4f/%.4f mm", detail.empty() ? "" : ", ", a, xp, xv);
  }
  return {worst <= 1.0, fmt("scanned |x_bound| parabola/vertex-vertex %s; worst node or formula offset %.2f um",
                            detail.c_str(), worst)};
}

// 8. Sampling estimate against the polygon engine.
Outcome monte_carlo() {
  std::vector<std::pair<PolygonSet, const char*>> cases = {{wedge(45, 3), "uniform"},
                                                           {wedge_sweep(), "inward"},
                                                           {letter_e(), "centered"},
                                                           {regular_polygon(0, 0, 2, 50), "evenly"},
                                                           {honeycomb(), "uniform"}};
  double worst = 0;
  for (auto& [shape, scheme] : cases) {
    auto lines = generate_toolpaths(shape, config(scheme));
    auto acc = compute_accuracy(lines, shape, 0);
    auto mc = monte_carlo_accuracy(lines, shape, 100000, 1234);
    double a = acc.outline_area;
    worst = std::max({worst, std::abs(mc.overfill_area - acc.overfill_area) / a,
                      std::abs(mc.underfill_area - acc.underfill_area) / a,
                      std::abs(mc.covered_area - acc.covered_area) / a});
  }
  return {worst <= 0.01, fmt("5 shapes x 1e5 samples, worst difference %.3f%% of the outline area", 100 * worst)};
}

struct Move {
  double x, y, f;
  bool extrude;
};

std::vector<Move> parse_moves(const std::string& g) {
  std::vector<Move> out;
  std::istringstream in(g);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("G0 ", 0) != 0 && line.rfind("G1 ", 0) != 0) continue;
    Move m{0, 0, 0, line[1] == '1'};
    std::istringstream ws(line.substr(3));
    std::string tok;
    while (ws >> tok) {
      double v = std::stod(tok.substr(1));
      if (tok[0] == 'X') m.x = v;
      if (tok[0] == 'Y') m.y = v;
      if (tok[0] == 'F') m.f = v;
    }
    out.push_back(m);
  }
  return out;
}

// Expected feedrate of every extruding move, from the toolpaths and
// v(w) = (f0 - k (w / w0 - 1)) / (h w).
std::vector<double> expected_feedrates(const std::vector<ExtrusionLine>& lines, double v0, double w0, double h,
                                       double k) {
  std::vector<double> out;
  for (auto& l : lines) {
    for (std::size_t i = 0; i + 1 < l.sites.size(); ++i) {
      const auto& a = l.sites[i];
      const auto& b = l.sites[i + 1];
      double len = coord_to_mm(dist(a.pos, b.pos));
      if (len <= 0) continue;
      int pieces = a.w == b.w ? 1 : std::max(1, int(std::ceil(len / 0.2 - 1e-9)));
      for (int p = 0; p < pieces; ++p) {
        double w = a.w + (b.w - a.w) * (p + 0.5) / pieces;
        out.push_back(60 * (v0 * w0 * h - k * (w / w0 - 1)) / (h * w));
      }
    }
  }
  return out;
}

// 9. Feedrates in the G-code follow the back-pressure model.
Outcome backpressure() {
  GcodeOptions opt;
  PolygonSet shape = wedge_sweep();
  auto lines = order_greedy(generate_toolpaths(shape, config("inward")), 0, 0);
  double worst = 0;
  std::size_t checked = 0;
  for (double k : {1.1, 0.0}) {
    opt.model.k = k;
    auto moves = parse_moves(emit_gcode(lines, opt));
    auto expect = expected_feedrates(lines, 30, 0.4, 0.1, k);
    std::size_t j = 0;
    for (auto& m : moves) {
      if (!m.extrude) continue;
      if (j >= expect.size()) return {false, "more moves than expected"};
      worst = std::max(worst, std::abs(m.f - expect[j++]));
      ++checked;
    }
    if (j != expect.size()) return {false, "fewer moves than expected"};
  }
  FlowModel m;
  double v04 = speed_for_width(m, 0.4).speed, v08 = speed_for_width(m, 0.8).speed;
  m.k = 0;
  double flow_spread = std::abs(speed_for_width(m, 0.3).flow - speed_for_width(m, 0.6).flow);
  bool ok = worst <= 0.005 + 1e-9 && std::abs(v04 - 30) < 1e-12 && std::abs(v08 - 1.25) < 1e-12 && flow_spread < 1e-12;
  return {ok, fmt("%zu moves, max |F - 60 v(w)| = %.4f mm/min; v(0.4) = %.4f, v(0.8) = %.4f mm/s; k=0 flow spread %.1e",
                  checked, worst, v04, v08, flow_spread)};
}

// 10. Runtime and its n log n fit.
Outcome performance() {
  std::vector<int> ns = {100, 1000, 10000};
  std::vector<double> t;
  for (int n : ns) {
    PolygonSet s = wavy_disc(n);
    double best = 1e18;
    for (int rep = 0; rep < 3; ++rep) {
      auto t0 = std::chrono::steady_clock::now();
      generate_toolpaths(s, config("inward"));
      best = std::min(best, seconds_since(t0));
    }
    t.push_back(best);
  }
  double num = 0, den = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    double x = ns[i] * std::log(double(ns[i]));
    num += x * t[i];
    den += x * x;
  }
  double c = num / den;
  bool ok = t.back() <= 5.0 && c >= 5e-7 && c <= 5e-5;
  return {ok, fmt("t(1e2) = %.3f s, t(1e3) = %.3f s, t(1e4) = %.3f s; fitted c = %.2e s", t[0], t[1], t[2], c)};
}

// 11. Uniform toolpaths against inward offsets of the outline, and the
// constant scheme across a 2 mm strip.
Outcome scheme_emulation() {
  double worst = 0;
  for (PolygonSet s : {make_rect(0, 0, 4, 4), make_rect(0, 0, 3, 5), regular_polygon(0, 0, 2, 6),
                       ring_set({{0, 0}, {5, 0}, {4, 3}, {1, 3.5}})}) {
    auto lines = generate_toolpaths(s, config("uniform"));
    int max_index = 0;
    for (auto& l : lines) max_index = std::max(max_index, l.index);
    for (int k = 0; k <= max_index; ++k) {
      PolygonSet ref = offset(s, -(k + 0.5) * 0.4);
      std::vector<std::vector<Vec2>> ref_rings, path_rings;
      for (auto& r : ref.rings) {
        std::vector<Vec2> v;
        for (auto& p : r) v.push_back(Vec2(p));
        v.push_back(v.front());
        ref_rings.push_back(v);
      }
      for (auto& l : lines) {
        if (l.index != k) continue;
        std::vector<Vec2> v;
        for (auto& site : l.sites) v.push_back(Vec2(site.pos));
        path_rings.push_back(v);
      }
      for (auto& r : path_rings)
        for (auto& p : r) worst = std::max(worst, distance_to_rings(p, ref_rings));
      for (auto& r : ref_rings)
        for (auto& p : r) worst = std::max(worst, distance_to_rings(p, path_rings));
    }
  }
  // constant scheme across the middle of a 2 mm wide strip
  PipelineConfig cc = config("constant");
  cc.scheme.c = 4;
  auto strip = generate_toolpaths(make_rect(0, 0, 10, 2), cc);
  double wmin = 1e9, wmax = 0;
  int crossings = 0;
  for (auto& l : strip) {
    for (std::size_t i = 0; i + 1 < l.sites.size(); ++i) {
      const auto& a = l.sites[i];
      const auto& b = l.sites[i + 1];
      if ((a.pos.x < 5000) == (b.pos.x < 5000)) continue;
      double t = (5000.0 - double(a.pos.x)) / double(b.pos.x - a.pos.x);
      double w = a.w + (b.w - a.w) * t;
      wmin = std::min(wmin, w);
      wmax = std::max(wmax, w);
      ++crossings;
    }
  }
  bool ok = worst <= 10.0 && crossings == 4 && std::abs(wmin - 0.5) < 1e-6 && std::abs(wmax - 0.5) < 1e-6;
  return {ok, fmt("uniform vs offsets: max deviation %.2f um; constant C=4 across a 2 mm strip: %d beads, widths [%.4f, %.4f]",
                  worst, crossings, wmin, wmax)};
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"wedge analytic misfill", wedge_tip},
      {"width range", width_range},
      {"mass conservation", mass_conservation},
      {"exact-fit null test", exact_fit},
      {"misfill dominance", misfill_dominance},
      {"perturbation stability", perturbation},
      {"significance boundaries", appendix_boundaries},
      {"monte carlo vs boolean", monte_carlo},
      {"back-pressure feedrates", backpressure},
      {"performance", performance},
      {"scheme emulation", scheme_emulation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}
