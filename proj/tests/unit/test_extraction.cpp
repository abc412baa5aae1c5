#include <doctest.h>

#include "beadpath/extraction.hpp"
#include "support.hpp"

using namespace beadpath;
using doctest::Approx;

namespace {

ExtrusionLine polyline(std::vector<std::pair<double, double>> pts, double w = 0.4, int index = 0) {
  ExtrusionLine l;
  l.index = index;
  for (auto [x, y] : pts) {
    ExtrusionSite s;
    s.pos = point_mm(x, y);
    s.w = w;
    s.index = index;
    l.sites.push_back(s);
  }
  return l;
}

int count_index(const std::vector<ExtrusionLine>& lines, int index, bool closed) {
  int n = 0;
  for (auto& l : lines) n += l.index == index && l.closed == closed && !l.dot;
  return n;
}

}  // namespace

TEST_CASE("sites along an upward edge") {
  auto st = test::chain_graph({0, 1}, {0.2, 0.6});
  std::vector<Beading> b(2);
  b[1].n = 4;
  b[1].r = 0.6;
  b[1].widths = {0.4, 0.4, 0.4};
  b[1].locations = {0.2, 0.3, 0.6};
  auto sites = generate_sites(st, b);
  int up = st.edges[0].from == 0 ? 0 : 1;
  REQUIRE(sites[up].size() == 2);
  // l = 0.2 is the lower end: not on this edge
  CHECK(sites[up][0].index == 1);
  CHECK(coord_to_mm(double(sites[up][0].pos.x)) == Approx(0.25));
  CHECK(sites[up][1].pos == st.nodes[1].pos);
  CHECK(sites[up][1].node == 1);
  CHECK(sites[1 - up].empty());
}

TEST_CASE("odd rectangle gives a loop and a center line") {
  auto lines = generate_toolpaths(make_rect(0, 0, 10, 1.2), test::config("evenly"));
  CHECK(count_index(lines, 0, true) == 1);
  int centers = 0;
  for (auto& l : lines) {
    if (l.index != 1) continue;
    ++centers;
    for (auto& s : l.sites) CHECK(s.w == Approx(0.4));
  }
  CHECK(centers == 1);
  CHECK(lines.size() == 2);
}

TEST_CASE("even rectangle gives one loop") {
  auto lines = generate_toolpaths(make_rect(0, 0, 10, 0.8), test::config("evenly"));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].closed);
  CHECK(lines[0].index == 0);
  for (auto& s : lines[0].sites) CHECK(s.w == Approx(0.4));
}

TEST_CASE("small disc gives a loop and a dot") {
  auto lines = generate_toolpaths(test::regular_polygon(0, 0, 0.6, 96), test::config("evenly"));
  int loops = 0, dots = 0;
  for (auto& l : lines) {
    loops += l.closed;
    if (l.dot) {
      ++dots;
      CHECK(l.length() == Approx(kDotLength).epsilon(0.1));
      CHECK(l.dot_width == Approx(M_PI * l.sites[0].w * l.sites[0].w / (4 * kDotLength)));
    }
  }
  CHECK(loops == 1);
  CHECK(dots == 1);
}

TEST_CASE("three way junction keeps two and retreats the third") {
  std::vector<ExtrusionLine> lines = {polyline({{-5, 0}, {0, 0}}), polyline({{0, 0}, {5, 0}}),
                                      polyline({{0, 0}, {0, 5}})};
  retreat_intersections(lines, 0.75);
  lines = stitch_and_finalize(lines);
  REQUIRE(lines.size() == 2);
  std::vector<double> len = {lines[0].length(), lines[1].length()};
  std::sort(len.begin(), len.end());
  CHECK(len[0] == Approx(4.7));
  CHECK(len[1] == Approx(10.0));
}

TEST_CASE("zero retreat ratio keeps all ends") {
  std::vector<ExtrusionLine> lines = {polyline({{-5, 0}, {0, 0}}), polyline({{0, 0}, {5, 0}}),
                                      polyline({{0, 0}, {0, 5}})};
  retreat_intersections(lines, 0);
  double total = 0;
  for (auto& l : lines) total += l.length();
  CHECK(total == Approx(15.0));
}

TEST_CASE("two ends join without retreat") {
  std::vector<ExtrusionLine> lines = {polyline({{-5, 0}, {0, 0}}), polyline({{0, 0}, {5, 0}})};
  retreat_intersections(lines, 0.75);
  lines = stitch_and_finalize(lines);
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(lines[0].closed);
  CHECK(lines[0].length() == Approx(10.0));
}

TEST_CASE("stitching closes rings and leaves closed loops alone") {
  std::vector<ExtrusionLine> lines = {polyline({{0, 0}, {1, 0}, {1, 1}}), polyline({{1, 1}, {0, 1}, {0, 0}})};
  auto out = stitch_and_finalize(lines);
  REQUIRE(out.size() == 1);
  CHECK(out[0].closed);
  CHECK(out[0].length() == Approx(4.0));
  auto again = stitch_and_finalize(out);
  REQUIRE(again.size() == 1);
  CHECK(again[0].closed);
  CHECK(again[0].sites.size() == out[0].sites.size());
  CHECK(again[0].length() == Approx(4.0));
}

TEST_CASE("retreat shortens from either end") {
  auto l = polyline({{0, 0}, {1, 0}, {2, 0}});
  CHECK(retreat_line(l, false, 0.5));
  CHECK(l.length() == Approx(1.5));
  CHECK(l.sites.back().pos == point_mm(1.5, 0));
  CHECK(retreat_line(l, true, 1.2));
  CHECK(l.sites.front().pos == point_mm(1.2, 0));
  CHECK_FALSE(retreat_line(l, true, 1.0));
}

TEST_CASE("closed loops follow the outline orientation") {
  auto lines = generate_toolpaths(make_rect(0, 0, 10, 0.8), test::config("evenly"));
  REQUIRE(lines.size() == 1);
  Ring r;
  for (auto& s : lines[0].sites) r.push_back(s.pos);
  r.pop_back();
  CHECK(signed_area(r) > 0);
  auto holed = test::with_hole(make_rect(0, 0, 6, 6), make_rect(2, 2, 4, 4));
  for (auto& l : generate_toolpaths(holed, test::config("evenly"))) {
    if (!l.closed) continue;
    Ring ring;
    for (auto& s : l.sites) ring.push_back(s.pos);
    ring.pop_back();
    Vec2 p(ring[0]);
    if (l.index >= 2) continue;
    bool around_hole = std::max(std::abs(p.x - 3000), std::abs(p.y - 3000)) < 2000;
    CHECK((signed_area(ring) < 0) == around_hole);
  }
}
