#include <doctest.h>

#include "beadpath/analysis.hpp"
#include "support.hpp"

using namespace beadpath;
using doctest::Approx;

namespace {

ExtrusionLine polyline(std::vector<std::pair<double, double>> pts, double w = 0.4, bool closed = false) {
  ExtrusionLine l;
  l.closed = closed;
  for (auto [x, y] : pts) {
    ExtrusionSite s;
    s.pos = point_mm(x, y);
    s.w = w;
    l.sites.push_back(s);
  }
  if (closed) l.sites.push_back(l.sites.front());
  return l;
}

}  // namespace

TEST_CASE("straight open bead is a stadium") {
  double a = area(bead_shape(polyline({{0, 0}, {10, 0}})));
  CHECK(a == Approx(10 * 0.4 + M_PI * 0.04).epsilon(1e-3));
}

TEST_CASE("closed square loop matches the union of its stadia") {
  auto loop = polyline({{0, 0}, {10, 0}, {10, 10}, {0, 10}}, 0.4, true);
  double a = area(bead_shape(loop));
  // outer square with rounded corners minus the inner square
  double expect = 10.4 * 10.4 - 9.6 * 9.6 - 4 * (0.04 - M_PI * 0.04 / 4);
  CHECK(a == Approx(expect).epsilon(1e-3));
}

TEST_CASE("dot covers a disc") {
  auto dot = make_dot(point_mm(0, 0), 0.4, 0);
  double a = area(bead_shape(dot));
  CHECK(a == Approx(M_PI * 0.04 + kDotLength * 0.4).epsilon(2e-3));
}

TEST_CASE("empty line has no shape") {
  ExtrusionLine l;
  CHECK(bead_shape(l).empty());
}

TEST_CASE("variable width segment is a tapered stadium") {
  auto l = polyline({{0, 0}, {4, 0}});
  l.sites[1].w = 0.6;
  double a = area(bead_shape(l));
  // trapezoid plus two half discs; the caps meet the taper almost tangentially
  double expect = 4 * 0.5 + 0.5 * M_PI * (0.04 + 0.09);
  CHECK(a == Approx(expect).epsilon(5e-3));
}

TEST_CASE("exact fit rectangle under the uniform scheme") {
  // long enough that the 90 degree corners (0.0086 mm2 each way per loop) stay below 0.1 %
  auto outline = make_rect(0, 0, 100, 1.6);
  auto lines = generate_toolpaths(outline, test::config("uniform"));
  auto acc = compute_accuracy(lines, outline);
  CHECK(acc.outline_area == Approx(160.0));
  CHECK(acc.overfill_percent < 0.1);
  CHECK(acc.underfill_percent < 0.1);
}

TEST_CASE("double deposition is overfill") {
  auto outline = make_rect(-1, -1, 11, 1);
  std::vector<ExtrusionLine> lines = {polyline({{0, 0}, {10, 0}}), polyline({{0, 0}, {10, 0}})};
  auto acc = compute_accuracy(lines, outline);
  double stadium = 10 * 0.4 + M_PI * 0.04;
  CHECK(acc.overfill_area == Approx(stadium).epsilon(3e-3));
  CHECK(acc.covered_area == Approx(stadium).epsilon(3e-3));
  lines.push_back(lines[0]);
  acc = compute_accuracy(lines, outline);
  CHECK(acc.overfill_area == Approx(2 * stadium).epsilon(3e-3));
}

TEST_CASE("material outside the outline is overfill") {
  auto outline = make_rect(0, -1, 10, 1);
  std::vector<ExtrusionLine> lines = {polyline({{0, 0}, {10, 0}})};
  auto acc = compute_accuracy(lines, outline);
  CHECK(acc.overfill_area == Approx(M_PI * 0.04).epsilon(1e-2));
  CHECK(acc.underfill_area == Approx(20 - 4).epsilon(1e-3));
}

TEST_CASE("coverage identity") {
  auto outline = test::wedge(45, 3);
  auto lines = generate_toolpaths(outline, test::config("inward"));
  auto acc = compute_accuracy(lines, outline);
  CHECK(acc.covered_area + acc.underfill_area == Approx(acc.outline_area).epsilon(5e-3));
}

TEST_CASE("sampling agrees with the polygon engine") {
  auto outline = test::wedge(30, 4);
  auto lines = generate_toolpaths(outline, test::config("uniform"));
  auto acc = compute_accuracy(lines, outline, 0);
  auto mc = monte_carlo_accuracy(lines, outline, 100000, 7);
  CHECK(std::abs(mc.covered_area - acc.covered_area) / acc.outline_area < 0.01);
  CHECK(std::abs(mc.underfill_area - acc.underfill_area) / acc.outline_area < 0.01);
  CHECK(std::abs(mc.overfill_area - acc.overfill_area) / acc.outline_area < 0.01);
}

TEST_CASE("statistics of a straight line") {
  auto s = compute_statistics({polyline({{0, 0}, {10, 0}})});
  CHECK(s.corners == 0);
  CHECK(s.open_paths == 1);
  CHECK(s.closed_paths == 0);
  CHECK(s.total_length == Approx(10));
  CHECK(s.width_sigma == Approx(0).epsilon(1e-12));
  CHECK(s.width_mean == Approx(0.4));
}

TEST_CASE("statistics of a square loop") {
  auto s = compute_statistics({polyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0.4, true)});
  CHECK(s.corners == 4);
  CHECK(s.angle_histogram[90] == 4);
  CHECK(s.closed_paths == 1);
  CHECK(s.width_sigma == Approx(0).epsilon(1e-12));
}

TEST_CASE("width spread is length weighted") {
  auto a = polyline({{0, 0}, {3, 0}}, 0.4);
  auto b = polyline({{0, 1}, {1, 1}}, 0.8);
  auto s = compute_statistics({a, b});
  CHECK(s.width_mean == Approx(0.5));
  // E[w^2] - mean^2 = (3*0.16 + 0.64)/4 - 0.25
  CHECK(s.width_sigma == Approx(std::sqrt(0.03)));
  CHECK(s.width_histogram[40] == Approx(3));
  CHECK(s.width_histogram[80] == Approx(1));
}
