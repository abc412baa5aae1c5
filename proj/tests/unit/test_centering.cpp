#include <doctest.h>

#include "beadpath/centering.hpp"
#include "support.hpp"

using namespace beadpath;

namespace {

bool link_central(const SkeletalTrapezoidation& st, int i) {
  for (auto& e : st.edges)
    if (e.from == i && e.to == i + 1) return e.central;
  return false;
}

}  // namespace

TEST_CASE("steep edges are not significant") {
  // slope 0.5 is a bisector angle of 120 degrees
  auto st = test::chain_graph({0, 1.0}, {0, 0.5});
  mark_central(st, 135);
  CHECK_FALSE(link_central(st, 0));
  clear_marking(st);
  mark_central(st, 90);
  CHECK(link_central(st, 0));
}

TEST_CASE("shallow edges are significant") {
  auto st = test::chain_graph({0, 1.0}, {0, 0.3});
  mark_central(st, 135);
  CHECK(link_central(st, 0));
  CHECK(st.nodes[0].central);
  CHECK(st.nodes[1].central);
}

TEST_CASE("a_max of 180 disables the slope test") {
  auto st = test::chain_graph({0, 1.0, 2.0}, {0, 0.05, 0.1});
  mark_central(st, 180);
  CHECK_FALSE(link_central(st, 0));
  CHECK_FALSE(link_central(st, 1));
  // the top is still a local maximum
  CHECK(st.nodes[2].central);
}

TEST_CASE("local maxima are marked") {
  auto st = test::chain_graph({0, 1, 2}, {0.0, 0.9, 0.0});
  mark_central(st, 135);
  CHECK(st.nodes[1].central);
  CHECK_FALSE(st.nodes[0].central);
  CHECK_FALSE(link_central(st, 0));
}

TEST_CASE("rectangle spine is central") {
  auto st = build_st(make_rect(0, 0, 1, 3));
  mark_central(st, 135);
  int spine = 0;
  for (std::size_t e = 0; e < st.edges.size(); ++e) {
    if (!st.is_skeletal(int(e))) continue;
    const auto& a = st.nodes[st.edges[e].from];
    const auto& b = st.nodes[st.edges[e].to];
    if (a.R > 0.49 && b.R > 0.49) {
      CHECK(st.edges[e].central);
      ++spine;
    }
    // 45 degree corner bisectors have slope 0.707
    if (a.R == 0 || b.R == 0) CHECK_FALSE(st.edges[e].central);
  }
  CHECK(spine > 0);
}

TEST_CASE("short unmarked chain between marked nodes is filled in") {
  auto st = test::chain_graph({0, 0.1, 0.2, 0.3}, {1, 1, 1, 1});
  st.nodes[0].central = st.nodes[3].central = true;
  filter_marking(st, 0.4);
  CHECK(link_central(st, 0));
  CHECK(link_central(st, 1));
  CHECK(link_central(st, 2));
}

TEST_CASE("long unmarked chain stays unmarked") {
  auto st = test::chain_graph({0, 0.25, 0.5}, {1, 1, 1});
  st.nodes[0].central = st.nodes[2].central = true;
  filter_marking(st, 0.4);
  CHECK_FALSE(link_central(st, 0));
  CHECK_FALSE(link_central(st, 1));
}

TEST_CASE("filter walks only along non-decreasing R") {
  auto st = test::chain_graph({0, 0.1, 0.2}, {1, 0.9, 1});
  st.nodes[0].central = st.nodes[2].central = true;
  filter_marking(st, 0.4);
  CHECK_FALSE(link_central(st, 0));
}

TEST_CASE("filter without marks is a no-op") {
  auto st = test::chain_graph({0, 0.1, 0.2}, {1, 1, 1});
  filter_marking(st, 0.4);
  for (auto& e : st.edges) CHECK_FALSE(e.central);
  for (auto& n : st.nodes) CHECK_FALSE(n.central);
}

TEST_CASE("all but outline") {
  auto st = build_st(test::regular_polygon(0, 0, 2, 6));
  mark_all_but_outline(st);
  for (std::size_t e = 0; e < st.edges.size(); ++e) {
    if (!st.is_skeletal(int(e))) continue;
    bool touches = st.nodes[st.edges[e].from].R <= 0 || st.nodes[st.edges[e].to].R <= 0;
    CHECK(st.edges[e].central == !touches);
  }
}
