#include <doctest.h>

#include "support.hpp"

using namespace beadpath;

namespace {

int nearest_node(const SkeletalTrapezoidation& st, double x, double y) {
  int best = -1;
  double bd = 1e18;
  for (std::size_t i = 0; i < st.nodes.size(); ++i) {
    double d = dist(Vec2(st.nodes[i].pos), Vec2(x * 1000, y * 1000));
    if (d < bd) bd = d, best = int(i);
  }
  return best;
}

}  // namespace

TEST_CASE("square skeleton is its two diagonals") {
  auto st = build_st(make_rect(0, 0, 2, 2));
  int c = nearest_node(st, 1, 1);
  CHECK(dist(Vec2(st.nodes[c].pos), Vec2(1000, 1000)) < 1.5);
  CHECK(st.nodes[c].R == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(st.nodes[c].b_tilde == doctest::Approx(5.0).epsilon(1e-3));
  for (std::size_t e = 0; e < st.edges.size(); ++e) {
    if (!st.is_skeletal(int(e))) continue;
    for (int v : {st.edges[e].from, st.edges[e].to}) {
      Vec2 p(st.nodes[v].pos);
      CHECK(std::abs(std::abs(p.x - 1000) - std::abs(p.y - 1000)) < 2.0);
    }
  }
}

TEST_CASE("rectangle spine has constant radius") {
  auto st = build_st(make_rect(0, 0, 1, 3));
  for (auto& n : st.nodes) {
    Vec2 p(n.pos);
    if (p.y > 500 + 2 && p.y < 2500 - 2) {
      if (n.R > 0) {
        CHECK(std::abs(p.x - 500) < 1.5);
        CHECK(n.R == doctest::Approx(0.5).epsilon(1e-3));
      }
    }
  }
  CHECK(st.nodes[nearest_node(st, 0.5, 0.5)].R == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(st.nodes[nearest_node(st, 0.5, 2.5)].R == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("strip of one bead width has unit bead count") {
  auto st = build_st(make_rect(0, 0, 10, 0.4));
  int n = st.nodes[nearest_node(st, 5, 0.2)].R > 0 ? nearest_node(st, 5, 0.2) : -1;
  REQUIRE(n >= 0);
  CHECK(st.nodes[n].b_tilde == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("convex outlines have no vertex edges") {
  for (auto poly : {make_rect(0, 0, 3, 1), test::regular_polygon(0, 0, 2, 7), test::wedge(45, 3)}) {
    auto st = build_st(poly);
    for (auto& e : st.edges) {
      CHECK(e.kind != EdgeKind::VertexVertex);
      CHECK(e.kind != EdgeKind::VertexLine);
    }
  }
}

TEST_CASE("concave outlines produce vertex edges") {
  PolygonSet L;
  L.rings.push_back(make_ring_mm({{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}}));
  auto st = build_st(L);
  int vl = 0;
  for (auto& e : st.edges) vl += e.kind == EdgeKind::VertexLine;
  CHECK(vl > 0);
}

TEST_CASE("significance boundaries in canonical units") {
  CHECK(parabola_boundary(135) == doctest::Approx(0.4142).epsilon(1e-4));
  CHECK(vertex_vertex_boundary(135) == doctest::Approx(0.2071).epsilon(1e-4));
}

TEST_CASE("straight line-line edges are not split") {
  std::vector<SourceSite> sources(2);
  sources[0].type = SourceSite::Type::Segment;
  sources[0].a = point_mm(0, 0);
  sources[0].b = point_mm(10, 0);
  sources[1].type = SourceSite::Type::Segment;
  sources[1].a = point_mm(10, 2);
  sources[1].b = point_mm(0, 2);
  VoronoiEdgeInfo e;
  e.p0 = Vec2(2000, 1000);
  e.p1 = Vec2(3000, 1000);
  e.left_source = 0;
  e.right_source = 1;
  e.kind = EdgeKind::LineLine;
  CHECK(discretize_edge(e, sources, StOptions{}).empty());
}

TEST_CASE("curved edges are split finely") {
  // Reflex corner of an L: a parabola between the corner vertex and the far walls.
  PolygonSet L;
  L.rings.push_back(make_ring_mm({{0, 0}, {6, 0}, {6, 2}, {2, 2}, {2, 6}, {0, 6}}));
  auto st = build_st(L);
  for (std::size_t e = 0; e < st.edges.size(); ++e) {
    if (st.edges[e].kind != EdgeKind::VertexLine) continue;
    CHECK(st.length(int(e)) <= 0.2 + 1e-3);
  }
}

TEST_CASE("degenerate outlines are invalid") {
  PolygonSet flat;
  flat.rings.push_back(make_ring_mm({{0, 0}, {1, 0}, {2, 0}}));
  CHECK_THROWS_AS(build_st(flat), InvalidPolygon);
  PolygonSet bow;
  bow.rings.push_back(make_ring_mm({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK_THROWS_AS(build_st(bow), InvalidPolygon);
}

TEST_CASE("one domain per boundary ring") {
  CHECK(assign_domains(build_st(make_rect(0, 0, 2, 2))).size() == 1);
  auto holed = test::with_hole(make_rect(0, 0, 10, 10), make_rect(3, 3, 7, 7));
  CHECK(assign_domains(build_st(holed)).size() == 2);
  PolygonSet two = make_rect(0, 0, 1, 1);
  two.rings.push_back(make_rect(3, 0, 4, 1).rings[0]);
  CHECK(assign_domains(build_st(two)).size() == 2);
}

TEST_CASE("every face belongs to exactly one domain") {
  auto holed = test::with_hole(make_rect(0, 0, 10, 10), make_rect(3, 3, 7, 7));
  auto st = build_st(holed);
  auto domains = assign_domains(st);
  std::size_t n = 0;
  for (auto& d : domains) n += d.faces.size();
  CHECK(n == st.faces().size());
}

TEST_CASE("half-edge twins are consistent") {
  auto st = build_st(test::regular_polygon(0, 0, 3, 9));
  for (std::size_t e = 0; e < st.edges.size(); ++e) {
    int t = st.edges[e].twin;
    if (t < 0) continue;
    CHECK(st.edges[t].twin == int(e));
    CHECK(st.edges[t].from == st.edges[e].to);
  }
}
