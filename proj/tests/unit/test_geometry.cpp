#include <doctest.h>

#include "support.hpp"

using namespace beadpath;

TEST_CASE("signed area follows orientation") {
  PolygonSet sq = make_rect(0, 0, 1, 1);
  CHECK(area(sq) == doctest::Approx(1.0));
  Ring cw = sq.rings[0];
  std::reverse(cw.begin(), cw.end());
  CHECK(signed_area(cw) == doctest::Approx(-1.0));
  CHECK(area(make_rect(0, 0, 2, 3)) == doctest::Approx(6.0));
}

TEST_CASE("rings with fewer than three vertices are rejected") {
  PolygonSet s;
  s.rings.push_back({point_mm(0, 0), point_mm(1, 0)});
  CHECK_THROWS_AS(validate(s), InvalidPolygon);
}

TEST_CASE("self intersecting rings are rejected by boolean") {
  PolygonSet bow;
  bow.rings.push_back(make_ring_mm({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK(has_self_intersections(bow));
  CHECK_THROWS_AS(boolean(bow, make_rect(0, 0, 1, 1), BoolOp::Union), InvalidPolygon);
}

TEST_CASE("boolean identities on the unit square") {
  PolygonSet sq = make_rect(0, 0, 1, 1);
  CHECK(area(boolean(sq, sq, BoolOp::Intersection)) == doctest::Approx(1.0));
  CHECK(boolean(sq, sq, BoolOp::Difference).empty());
  // overlap strip 0.5 x 1
  PolygonSet shifted = make_rect(0.5, 0, 1.5, 1);
  CHECK(area(boolean(sq, shifted, BoolOp::Union)) == doctest::Approx(1.5));
  CHECK(area(boolean(sq, shifted, BoolOp::Xor)) == doctest::Approx(1.0));
}

TEST_CASE("morphological close") {
  CHECK(morphological_close(PolygonSet{}, 0.005).empty());

  PolygonSet sq = make_rect(0, 0, 1, 1);
  double a = area(morphological_close(sq, 0.005));
  CHECK(std::abs(a - 1.0) / 1.0 < 1e-3);

  PolygonSet two = make_rect(0, 0, 1, 1);
  two.rings.push_back(make_rect(1.004, 0, 2.004, 1).rings[0]);
  CHECK(component_count(two) == 2);
  CHECK(component_count(morphological_close(two, 0.005)) == 1);
}

TEST_CASE("morphological open drops slivers") {
  PolygonSet s = make_rect(0, 0, 1, 1);
  s.rings.push_back(make_rect(2, 0, 2.006, 1).rings[0]);
  PolygonSet o = morphological_open(s, 0.005);
  CHECK(component_count(o) == 1);
  CHECK(area(o) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("offset of a square") {
  PolygonSet sq = make_rect(0, 0, 2, 2);
  CHECK(area(offset(sq, -0.5)) == doctest::Approx(1.0).epsilon(1e-4));
  // grown by r with round corners: a + perimeter r + pi r^2
  CHECK(area(offset(sq, 0.5)) == doctest::Approx(4 + 8 * 0.5 + M_PI * 0.25).epsilon(1e-3));
}

TEST_CASE("contains and component count with holes") {
  PolygonSet s = test::with_hole(make_rect(0, 0, 10, 10), make_rect(3, 3, 7, 7));
  CHECK(area(s) == doctest::Approx(84.0));
  CHECK(component_count(s) == 1);
  CHECK(contains(s, Vec2(1000, 1000)));
  CHECK_FALSE(contains(s, Vec2(5000, 5000)));
}
