#include "beadpath/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace beadpath {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt(const char* f, double v) {
  // Avoid "-0.000" for values that round to zero.
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  std::string s = buf;
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

Ring parse_ring(const json& j, double scale) {
  if (!j.is_array()) throw ParseError("ring must be an array of points");
  Ring r;
  r.reserve(j.size());
  for (const auto& p : j) {
    double x, y;
    if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
      x = p[0].get<double>();
      y = p[1].get<double>();
    } else if (p.is_object() && p.contains("x") && p.contains("y")) {
      x = p.at("x").get<double>();
      y = p.at("y").get<double>();
    } else {
      throw ParseError("point must be [x, y] or {\"x\", \"y\"}");
    }
    if (!std::isfinite(x) || !std::isfinite(y)) throw ParseError("non-finite coordinate");
    r.push_back({std::llround(x * scale), std::llround(y * scale)});
  }
  if (r.size() > 1 && r.front() == r.back()) r.pop_back();
  return r;
}

void orient(Ring& r, bool ccw) {
  if ((signed_area(r) > 0) != ccw) std::reverse(r.begin(), r.end());
}

json ring_json(const Ring& r) {
  json a = json::array();
  for (const auto& p : r) a.push_back({coord_to_mm(double(p.x)), coord_to_mm(double(p.y))});
  return a;
}

struct Bounds {
  double x0 = std::numeric_limits<double>::max(), y0 = x0;
  double x1 = std::numeric_limits<double>::lowest(), y1 = x1;
  void add(const Point& p, double pad = 0) {
    double x = coord_to_mm(double(p.x)), y = coord_to_mm(double(p.y));
    x0 = std::min(x0, x - pad);
    y0 = std::min(y0, y - pad);
    x1 = std::max(x1, x + pad);
    y1 = std::max(y1, y + pad);
  }
  bool valid() const { return x0 <= x1; }
};

std::string color_for(double w, double w_star) {
  double t = std::clamp((w - w_star) / (0.5 * w_star), -1.0, 1.0);
  int r = 128, g = 128, b = 128;
  if (t < 0) {
    r = int(std::lround(128 * (1 + t)));
    g = int(std::lround(128 * (1 + t)));
    b = int(std::lround(128 - 127 * t));
  } else if (t > 0) {
    r = int(std::lround(128 + 127 * t));
    g = int(std::lround(128 * (1 - t)));
    b = int(std::lround(128 * (1 - t)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string svg_path(const PolygonSet& s, double ymax) {
  std::string d;
  for (const auto& r : s.rings) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      d += i == 0 ? "M" : "L";
      d += fmt("%.3f", coord_to_mm(double(r[i].x))) + " " + fmt("%.3f", ymax - coord_to_mm(double(r[i].y)));
    }
    d += "Z";
  }
  return d;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

LayerFile parse_layer(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("layer: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("layer: top level must be an object");
  std::string units = j.value("units", "mm");
  double scale;
  if (units == "mm")
    scale = kUmPerMm;
  else if (units == "um")
    scale = 1.0;
  else
    throw ParseError("layer: unknown units '" + units + "'");

  LayerFile out;
  try {
    for (const auto& poly : j.value("polygons", json::array())) {
      if (poly.is_object()) {
        Ring outer = parse_ring(poly.at("outer"), scale);
        orient(outer, true);
        out.outline.rings.push_back(std::move(outer));
        for (const auto& h : poly.value("holes", json::array())) {
          Ring hole = parse_ring(h, scale);
          orient(hole, false);
          out.outline.rings.push_back(std::move(hole));
        }
      } else {
        Ring outer = parse_ring(poly, scale);
        orient(outer, true);
        out.outline.rings.push_back(std::move(outer));
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("layer: ") + e.what());
  }
  if (j.contains("config")) {
    if (!j["config"].is_object()) throw ParseError("layer: config must be an object");
    out.config_json = j["config"].dump();
  }
  validate(out.outline);
  return out;
}

LayerFile read_layer(const std::string& path) { return parse_layer(read_file(path)); }

std::string layer_to_json(const PolygonSet& outline) {
  ordered_json j;
  j["units"] = "mm";
  json polys = json::array();
  // Holes follow the outer ring they belong to; assign each to the first
  // containing outer.
  std::vector<std::size_t> outers;
  for (std::size_t i = 0; i < outline.rings.size(); ++i)
    if (signed_area(outline.rings[i]) > 0) outers.push_back(i);
  std::vector<json> holes(outers.size(), json::array());
  for (const auto& r : outline.rings) {
    if (signed_area(r) > 0) continue;
    for (std::size_t k = 0; k < outers.size(); ++k) {
      if (contains(PolygonSet{{outline.rings[outers[k]]}}, Vec2(r[0]))) {
        holes[k].push_back(ring_json(r));
        break;
      }
    }
  }
  for (std::size_t k = 0; k < outers.size(); ++k) {
    json p;
    p["outer"] = ring_json(outline.rings[outers[k]]);
    p["holes"] = holes[k];
    polys.push_back(p);
  }
  j["polygons"] = polys;
  return j.dump() + "\n";
}

void apply_layer_config(const LayerFile& layer, PipelineConfig& cfg) {
  if (layer.config_json.empty()) return;
  json c = json::parse(layer.config_json);
  try {
    if (c.contains("scheme")) cfg.scheme.name = c["scheme"].get<std::string>();
    if (c.contains("w_star")) cfg.scheme.w_star = c["w_star"].get<double>();
    if (c.contains("n")) cfg.scheme.n = c["n"].get<int>();
    if (c.contains("c")) cfg.scheme.c = c["c"].get<int>();
    if (c.contains("shell")) cfg.scheme.shell = c["shell"].get<int>();
    if (c.contains("widening")) {
      const auto& w = c["widening"];
      if (w.is_boolean()) {
        cfg.scheme.widening = w.get<bool>();
      } else {
        cfg.scheme.widening = true;
        cfg.scheme.w_min = w.value("w_min", cfg.scheme.w_min);
        cfg.scheme.r_min = w.value("r_min", cfg.scheme.r_min);
      }
    }
    if (c.contains("alpha_max")) cfg.alpha_max_deg = c["alpha_max"].get<double>();
    if (c.contains("d_discretization")) cfg.d_discretization = c["d_discretization"].get<double>();
    if (c.contains("d_max_transition")) cfg.d_max_transition = c["d_max_transition"].get<double>();
    if (c.contains("retreat")) cfg.retreat_ratio = c["retreat"].get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("layer config: ") + e.what());
  }
}

std::string toolpaths_to_json(const std::vector<ExtrusionLine>& lines) {
  ordered_json j;
  j["units"] = "mm";
  ordered_json paths = ordered_json::array();
  for (const auto& l : lines) {
    ordered_json p;
    p["closed"] = l.closed;
    p["index"] = l.index;
    if (l.dot) {
      p["dot"] = true;
      p["dot_width"] = l.dot_width;
    }
    ordered_json sites = ordered_json::array();
    for (const auto& s : l.sites) {
      ordered_json q;
      q["x"] = coord_to_mm(double(s.pos.x));
      q["y"] = coord_to_mm(double(s.pos.y));
      q["w"] = s.w;
      sites.push_back(q);
    }
    p["sites"] = sites;
    paths.push_back(p);
  }
  j["paths"] = paths;
  return j.dump() + "\n";
}

std::vector<ExtrusionLine> parse_toolpaths(const std::string& text) {
  std::vector<ExtrusionLine> out;
  try {
    json j = json::parse(text);
    double scale = j.value("units", "mm") == "um" ? 1.0 : kUmPerMm;
    for (const auto& p : j.at("paths")) {
      ExtrusionLine l;
      l.closed = p.value("closed", false);
      l.index = p.value("index", 0);
      l.dot = p.value("dot", false);
      l.dot_width = p.value("dot_width", 0.0);
      for (const auto& s : p.at("sites")) {
        ExtrusionSite site;
        site.pos = {std::llround(s.at("x").get<double>() * scale), std::llround(s.at("y").get<double>() * scale)};
        site.w = s.at("w").get<double>();
        site.index = l.index;
        l.sites.push_back(site);
      }
      out.push_back(std::move(l));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("toolpaths: ") + e.what());
  }
  return out;
}

std::vector<ExtrusionLine> read_toolpaths(const std::string& path) { return parse_toolpaths(read_file(path)); }

std::string render_svg(const std::vector<ExtrusionLine>& lines, const PolygonSet& outline, const SvgOptions& opt) {
  Bounds b;
  for (const auto& r : outline.rings)
    for (const auto& p : r) b.add(p);
  for (const auto& l : lines)
    for (const auto& s : l.sites) b.add(s.pos, s.w / 2);
  if (!b.valid()) b = {0, 0, 1, 1};
  double margin = 0.05 * std::max({b.x1 - b.x0, b.y1 - b.y0, 1e-3});
  b.x0 -= margin;
  b.y0 -= margin;
  b.x1 += margin;
  b.y1 += margin;
  // Flip y: document y = ymax - y.
  double ymax = b.y1 + b.y0;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt("%.3f", b.x1 - b.x0) +
       "mm\" height=\"" + fmt("%.3f", b.y1 - b.y0) + "mm\" viewBox=\"" + fmt("%.3f", b.x0) + " " +
       fmt("%.3f", ymax - b.y1) + " " + fmt("%.3f", b.x1 - b.x0) + " " + fmt("%.3f", b.y1 - b.y0) + "\">\n";
  if (!outline.empty())
    s += "<g id=\"outline\"><path d=\"" + svg_path(outline, ymax) +
         "\" fill=\"#eeeeee\" fill-rule=\"evenodd\" stroke=\"black\" stroke-width=\"0.01\"/></g>\n";
  s += "<g id=\"toolpaths\" stroke-linecap=\"round\" fill=\"none\">\n";
  for (const auto& l : lines) {
    for (std::size_t i = 0; i + 1 < l.sites.size(); ++i) {
      const auto& a = l.sites[i];
      const auto& c = l.sites[i + 1];
      double w = 0.5 * (a.w + c.w);
      s += "<line x1=\"" + fmt("%.3f", coord_to_mm(double(a.pos.x))) + "\" y1=\"" +
           fmt("%.3f", ymax - coord_to_mm(double(a.pos.y))) + "\" x2=\"" + fmt("%.3f", coord_to_mm(double(c.pos.x))) +
           "\" y2=\"" + fmt("%.3f", ymax - coord_to_mm(double(c.pos.y))) + "\" stroke=\"" +
           color_for(w, opt.w_star) + "\" stroke-width=\"" + fmt("%.4f", w) + "\"/>\n";
    }
  }
  s += "</g>\n";
  if (opt.overlay) {
    if (!opt.overlay->overfill.empty())
      s += "<g id=\"overfill\"><path d=\"" + svg_path(opt.overlay->overfill, ymax) +
           "\" fill=\"orange\" fill-opacity=\"0.8\" fill-rule=\"nonzero\"/></g>\n";
    if (!opt.overlay->underfill.empty())
      s += "<g id=\"underfill\"><path d=\"" + svg_path(opt.overlay->underfill, ymax) +
           "\" fill=\"azure\" stroke=\"#3399cc\" stroke-width=\"0.002\" fill-rule=\"evenodd\"/></g>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string report_to_json(const AccuracyReport& acc, const ToolpathStatistics& st) {
  ordered_json j;
  j["outline_area_mm2"] = acc.outline_area;
  j["covered_area_mm2"] = acc.covered_area;
  j["overfill_area_mm2"] = acc.overfill_area;
  j["underfill_area_mm2"] = acc.underfill_area;
  j["overfill_percent"] = acc.overfill_percent;
  j["underfill_percent"] = acc.underfill_percent;
  ordered_json s;
  s["total_length_mm"] = st.total_length;
  s["open_paths"] = st.open_paths;
  s["closed_paths"] = st.closed_paths;
  s["width_mean_mm"] = st.width_mean;
  s["width_sigma_mm"] = st.width_sigma;
  ordered_json hist = ordered_json::array();
  for (const auto& [bin, len] : st.width_histogram) hist.push_back({{"width_mm", bin * 0.01}, {"length_mm", len}});
  s["width_histogram"] = hist;
  s["corners"] = st.corners;
  ordered_json ang = ordered_json::array();
  for (std::size_t a = 0; a < st.angle_histogram.size(); ++a)
    if (st.angle_histogram[a]) ang.push_back({{"angle_deg", a}, {"count", st.angle_histogram[a]}});
  s["angle_histogram"] = ang;
  j["statistics"] = s;
  return j.dump(2) + "\n";
}

std::vector<ExtrusionLine> order_greedy(const std::vector<ExtrusionLine>& lines, double start_x, double start_y) {
  std::vector<ExtrusionLine> out;
  out.reserve(lines.size());
  std::vector<bool> used(lines.size(), false);
  Vec2 cur(start_x * kUmPerMm, start_y * kUmPerMm);
  for (std::size_t step = 0; step < lines.size(); ++step) {
    double best = std::numeric_limits<double>::max();
    std::size_t bi = 0, bk = 0;
    bool rev = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (used[i] || lines[i].sites.empty()) continue;
      const auto& st = lines[i].sites;
      if (lines[i].closed) {
        for (std::size_t k = 0; k + 1 < st.size(); ++k) {
          double d = dist(cur, Vec2(st[k].pos));
          if (d < best) best = d, bi = i, bk = k, rev = false;
        }
      } else {
        double d0 = dist(cur, Vec2(st.front().pos)), d1 = dist(cur, Vec2(st.back().pos));
        if (d0 < best) best = d0, bi = i, bk = 0, rev = false;
        if (d1 < best) best = d1, bi = i, bk = 0, rev = true;
      }
    }
    if (best == std::numeric_limits<double>::max()) break;
    used[bi] = true;
    ExtrusionLine l = lines[bi];
    if (l.closed && bk > 0) {
      l.sites.pop_back();
      std::rotate(l.sites.begin(), l.sites.begin() + std::ptrdiff_t(bk), l.sites.end());
      l.sites.push_back(l.sites.front());
    } else if (rev) {
      std::reverse(l.sites.begin(), l.sites.end());
    }
    cur = Vec2(l.sites.back().pos);
    out.push_back(std::move(l));
  }
  // Lines without sites keep their relative order at the end.
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (!used[i] && lines[i].sites.empty()) out.push_back(lines[i]);
  return out;
}

std::string emit_gcode(const std::vector<ExtrusionLine>& lines, const GcodeOptions& opt) {
  const double filament_area = std::numbers::pi * 0.25 * opt.filament_diameter * opt.filament_diameter;
  std::string g;
  g += "; beadpath\n";
  g += "; layer_height=" + fmt("%.3f", opt.model.h) + " v0=" + fmt("%.3f", opt.model.v0) +
       " w0=" + fmt("%.3f", opt.model.w0) + " k=" + fmt("%.4f", opt.model.k) +
       " flow_factor=" + fmt("%.3f", opt.model.flow_factor) + "\n";
  g += "G21\nG90\nM82\nG92 E0\n";
  double e = 0;
  for (const auto& l : lines) {
    if (l.sites.size() < 2) continue;
    const auto& s0 = l.sites.front();
    g += "G0 X" + fmt("%.3f", coord_to_mm(double(s0.pos.x))) + " Y" + fmt("%.3f", coord_to_mm(double(s0.pos.y))) +
         " F" + fmt("%.2f", opt.travel_speed * 60.0) + "\n";
    for (std::size_t i = 0; i + 1 < l.sites.size(); ++i) {
      const auto& a = l.sites[i];
      const auto& b = l.sites[i + 1];
      Vec2 pa(a.pos), pb(b.pos);
      double len = coord_to_mm(dist(pa, pb));
      if (len <= 0) continue;
      int pieces = 1;
      if (a.w != b.w) pieces = std::max(1, int(std::ceil(len / opt.max_piece - 1e-9)));
      for (int k = 0; k < pieces; ++k) {
        double t0 = double(k) / pieces, t1 = double(k + 1) / pieces;
        double w = a.w + (b.w - a.w) * 0.5 * (t0 + t1);
        double piece_len = len / pieces;
        double w_vol = l.dot ? l.dot_width : w;
        FlowPoint fp = speed_for_width(opt.model, w);
        e += volume_per_length(opt.model, w_vol) * piece_len / filament_area;
        Vec2 p = lerp(pa, pb, t1);
        g += "G1 X" + fmt("%.3f", coord_to_mm(p.x)) + " Y" + fmt("%.3f", coord_to_mm(p.y)) + " E" +
             fmt("%.5f", e) + " F" + fmt("%.2f", fp.speed * 60.0) + "\n";
      }
    }
  }
  g += "M400\n; end\n";
  return g;
}

}  // namespace beadpath
