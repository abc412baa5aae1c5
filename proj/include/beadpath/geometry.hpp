#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace beadpath {

// Integer micrometers.
using Coord = std::int64_t;

struct InvalidPolygon : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point {
  Coord x = 0;
  Coord y = 0;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
};

// Floating point vector, used for intermediate math in micrometers.
struct Vec2 {
  double x = 0;
  double y = 0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}
  explicit Vec2(const Point& p) : x(double(p.x)), y(double(p.y)) {}

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(const Vec2& a, double s) { return {a.x * s, a.y * s}; }
  friend Vec2 operator*(double s, const Vec2& a) { return {a.x * s, a.y * s}; }
  double norm() const { return std::hypot(x, y); }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Vec2 lerp(const Vec2& a, const Vec2& b, double t) { return a + (b - a) * t; }
inline double dist(const Vec2& a, const Vec2& b) { return (a - b).norm(); }
inline double dist(const Point& a, const Point& b) { return dist(Vec2(a), Vec2(b)); }

inline Point round_point(const Vec2& v) { return {std::llround(v.x), std::llround(v.y)}; }

constexpr double kUmPerMm = 1000.0;
inline Coord mm_to_coord(double mm) { return std::llround(mm * kUmPerMm); }
inline double coord_to_mm(double um) { return um / kUmPerMm; }
inline Point point_mm(double x, double y) { return {mm_to_coord(x), mm_to_coord(y)}; }

using Ring = std::vector<Point>;

// Outer rings counter-clockwise, holes clockwise.
struct PolygonSet {
  std::vector<Ring> rings;

  bool empty() const { return rings.empty(); }
  std::size_t size() const { return rings.size(); }
};

enum class BoolOp { Union, Difference, Intersection, Xor };

// Shoelace area in mm^2, positive for counter-clockwise rings.
double signed_area(const Ring& ring);
// Sum of signed ring areas in mm^2.
double area(const PolygonSet& set);

// Throws InvalidPolygon for rings with <3 vertices or crossing edges.
void validate(const PolygonSet& set);
bool has_self_intersections(const PolygonSet& set);

PolygonSet boolean(const PolygonSet& a, const PolygonSet& b, BoolOp op);
// Like boolean() but skips validation; operands may overlap themselves
// (non-zero fill).
PolygonSet clip(const PolygonSet& a, const PolygonSet& b, BoolOp op);
PolygonSet unite(const PolygonSet& a);
// Positive delta grows, negative shrinks. Round joins.
PolygonSet offset(const PolygonSet& s, double delta_mm, double arc_tolerance_mm = 0.0005);
PolygonSet morphological_close(const PolygonSet& s, double radius_mm);
// Erosion followed by dilation; removes slivers narrower than 2 * radius.
PolygonSet morphological_open(const PolygonSet& s, double radius_mm);
// Union with non-zero fill, strictly simple output, collinear and tiny
// segments removed.
PolygonSet normalize(const PolygonSet& s, double clean_distance_um = 2.0);

// Number of connected filled components (outer rings).
std::size_t component_count(const PolygonSet& s);
bool contains(const PolygonSet& s, const Vec2& p);

PolygonSet make_rect(double x0, double y0, double x1, double y1);
Ring make_ring_mm(const std::vector<std::pair<double, double>>& pts);

}  // namespace beadpath
