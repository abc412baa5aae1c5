#include <doctest.h>

#include "beadpath/centering.hpp"
#include "beadpath/transitions.hpp"
#include "support.hpp"

using namespace beadpath;
using doctest::Approx;

namespace {

std::shared_ptr<const BeadingScheme> evenly() { return std::make_shared<EvenlyScheme>(0.4); }

}  // namespace

TEST_CASE("transition lengths") {
  auto s = evenly();
  CHECK(s->transition_length(1) == Approx(0.4));
  CHECK(s->transition_anchor_pos(1) == Approx(0.2));
  CHECK(CenteredScheme(0.4).transition_length(3) == Approx(0.2));
  CHECK(OuterScheme(0.4).transition_length(1) == 0);
}

TEST_CASE("anchor sits where the diameter reaches the step") {
  auto st = test::chain_graph({0, 1}, {0.25, 0.35});
  test::mark_all_links(st);
  quantize_marked(st, *evenly());
  CHECK(st.nodes[0].b_bar == 1);
  CHECK(st.nodes[1].b_bar == 2);
  auto anchors = find_transition_anchors(st, *evenly());
  REQUIRE(anchors.size() == 1);
  CHECK(anchors[0].n == 1);
  CHECK(anchors[0].t == Approx(0.5));
  CHECK(st.edges[anchors[0].edge].from == 0);
}

TEST_CASE("downhill edges report the anchor in the upward direction") {
  auto st = test::chain_graph({0, 1}, {0.35, 0.25});
  test::mark_all_links(st);
  quantize_marked(st, *evenly());
  auto anchors = find_transition_anchors(st, *evenly());
  REQUIRE(anchors.size() == 1);
  CHECK(st.edges[anchors[0].edge].from == 1);
  CHECK(anchors[0].t == Approx(0.5));
}

TEST_CASE("plateau edges have no anchors") {
  auto st = test::chain_graph({0, 1}, {0.31, 0.39});
  test::mark_all_links(st);
  quantize_marked(st, *evenly());
  CHECK(find_transition_anchors(st, *evenly()).empty());
}

TEST_CASE("anchors over several counts on one edge") {
  auto st = test::chain_graph({0, 1}, {0.25, 0.65});
  test::mark_all_links(st);
  quantize_marked(st, *evenly());
  auto anchors = find_transition_anchors(st, *evenly());
  REQUIRE(anchors.size() == 2);
  // 2R = 0.6 and 1.0
  CHECK(anchors[0].t == Approx(0.125));
  CHECK(anchors[1].t == Approx(0.625));
}

TEST_CASE("close opposite anchors are filtered away") {
  // up at x = 0.1, down at x = 0.7
  auto st = test::chain_graph({0, 0.2, 0.6, 0.8}, {0.25, 0.35, 0.35, 0.25});
  test::mark_all_links(st);
  quantize_marked(st, *evenly());
  CHECK(find_transition_anchors(st, *evenly()).size() == 2);
  auto kept = filter_anchors(st, *evenly(), 1.0);
  CHECK(kept.empty());
  for (auto& n : st.nodes) CHECK(n.b_bar == 1);
}

TEST_CASE("close opposite dip is filled") {
  auto st = test::chain_graph({0, 0.2, 0.6, 0.8}, {0.35, 0.25, 0.25, 0.35});
  test::mark_all_links(st);
  quantize_marked(st, *evenly());
  auto kept = filter_anchors(st, *evenly(), 1.0);
  CHECK(kept.empty());
  for (auto& n : st.nodes) CHECK(n.b_bar == 2);
}

TEST_CASE("distant opposite anchors are kept") {
  auto st = test::chain_graph({0, 0.2, 1.4, 1.6}, {0.25, 0.35, 0.35, 0.25});
  test::mark_all_links(st);
  quantize_marked(st, *evenly());
  CHECK(filter_anchors(st, *evenly(), 1.0).size() == 2);
  CHECK(st.nodes[1].b_bar == 2);
}

TEST_CASE("same direction anchors are kept") {
  // 1 -> 2 at x = 0.1, 2 -> 3 at x = 0.3
  auto st = test::chain_graph({0, 0.2, 0.25, 0.35, 1.5}, {0.25, 0.35, 0.45, 0.55, 0.55});
  test::mark_all_links(st);
  quantize_marked(st, *evenly());
  auto kept = filter_anchors(st, *evenly(), 1.0);
  CHECK(kept.size() == 2);
}

TEST_CASE("ramp on a straight wedge spine") {
  // tip half angle atan(0.1): R(x) = x sin(atan 0.1)
  PolygonSet w;
  w.rings.push_back(make_ring_mm({{0, 0}, {10, -1}, {10, 1}}));
  auto st = build_st(w);
  auto s = evenly();
  apply_centering(st, s->centering(), 135, 0.4);
  quantize_marked(st, *s);
  auto anchors = filter_anchors(st, *s, 1.0);
  auto ramps = apply_transitions(st, *s, anchors);

  const double k = std::sin(std::atan(0.1));
  const double x_anchor = 0.3 / k;
  const TransitionRamp* r1 = nullptr;
  for (auto& r : ramps)
    if (r.n == 1) r1 = &r;
  REQUIRE(r1 != nullptr);
  REQUIRE(r1->lower_ends.size() == 1);
  REQUIRE(r1->upper_ends.size() == 1);
  double x_lo = coord_to_mm(double(st.nodes[r1->lower_ends[0]].pos.x));
  double x_hi = coord_to_mm(double(st.nodes[r1->upper_ends[0]].pos.x));
  CHECK(x_lo == Approx(x_anchor - 0.2).epsilon(1e-3));
  CHECK(x_hi == Approx(x_anchor + 0.2).epsilon(1e-3));
  CHECK(st.nodes[r1->lower_ends[0]].b_hat == Approx(1));
  CHECK(st.nodes[r1->upper_ends[0]].b_hat == Approx(2));
  for (auto& [v, bh] : r1->inner) {
    double x = coord_to_mm(double(st.nodes[v].pos.x));
    CHECK(bh == Approx(1 + (x - x_lo) / 0.4).epsilon(1e-3));
    CHECK(st.nodes[v].b_hat == Approx(bh));
  }

  // b_hat never decreases towards the base and is integral outside ramps
  for (auto& n : st.nodes) {
    if (!n.central) continue;
    CHECK(n.b_hat >= 0);
  }
}

TEST_CASE("mid-ramp node gets half a bead") {
  // node at the anchor: 2R = 0.6 exactly at x = 0.5
  auto st = build_st(test::wedge(2 * std::atan(0.1) * 180 / M_PI, 10));
  auto s = evenly();
  apply_centering(st, s->centering(), 135, 0.4);
  const double k = std::sin(std::atan(0.1));
  // split the spine at 2R = 0.6
  for (std::size_t e = 0; e < st.edges.size(); ++e) {
    if (!st.is_skeletal(int(e)) || !st.is_upward(int(e))) continue;
    double r0 = st.nodes[st.edges[e].from].R, r1 = st.nodes[st.edges[e].to].R;
    if (r0 < 0.3 && r1 > 0.3 && st.edges[e].central) {
      st.split_edge_at(int(e), (0.3 - r0) / (r1 - r0));
      break;
    }
  }
  quantize_marked(st, *s);
  apply_transitions(st, *s, filter_anchors(st, *s, 1.0));
  int mid = -1;
  for (std::size_t v = 0; v < st.nodes.size(); ++v) {
    if (st.nodes[v].central && std::abs(st.nodes[v].R - 0.3) < 1e-6) mid = int(v);
  }
  REQUIRE(mid >= 0);
  CHECK(coord_to_mm(double(st.nodes[mid].pos.x)) == Approx(0.3 / k).epsilon(1e-3));
  CHECK(st.nodes[mid].b_hat == Approx(1.5).epsilon(1e-3));
}
