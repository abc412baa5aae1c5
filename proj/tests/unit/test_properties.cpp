#include <doctest.h>

#include <random>

#include "beadpath/analysis.hpp"
#include "support.hpp"

using namespace beadpath;

TEST_CASE("random outlines run through every scheme") {
  std::mt19937_64 rng(2024);
  const char* schemes[] = {"uniform", "outer", "constant", "evenly", "centered", "inward"};
  for (int trial = 0; trial < 12; ++trial) {
    auto outline = test::random_star(rng, 12 + trial, 1.0, 4.0);
    if (outline.empty()) continue;
    auto grown = offset(outline, 0.01);
    for (const char* name : schemes) {
      CAPTURE(trial);
      CAPTURE(name);
      std::vector<ExtrusionLine> lines;
      REQUIRE_NOTHROW(lines = generate_toolpaths(outline, test::config(name)));
      for (auto& l : lines) {
        CHECK(l.sites.size() >= 2);
        if (l.closed) CHECK(l.sites.front().pos == l.sites.back().pos);
        for (auto& s : l.sites) {
          CHECK(s.w > 0);
          CHECK(s.w < 2.0);
          CHECK(contains(grown, Vec2(s.pos)));
        }
      }
    }
  }
}

TEST_CASE("central beadings fill the local diameter") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    auto outline = test::random_star(rng, 10, 1.0, 3.0);
    if (outline.empty()) continue;
    for (const char* name : {"evenly", "inward"}) {
      auto res = run_pipeline(outline, test::config(name));
      for (std::size_t v = 0; v < res.st.nodes.size(); ++v) {
        const auto& n = res.st.nodes[v];
        if (!n.central || n.b_hat < 0.5 || std::abs(n.b_hat - std::round(n.b_hat)) > 1e-9) continue;
        CHECK(std::abs(res.beadings[v].total() - 2 * n.R) < 1e-6);
      }
    }
  }
}

TEST_CASE("holes and several components") {
  PolygonSet s = test::with_hole(make_rect(0, 0, 6, 6), test::regular_polygon(3, 3, 1.2, 8));
  s.rings.push_back(make_rect(8, 0, 9.5, 3).rings[0]);
  for (const char* name : {"uniform", "inward"}) {
    auto lines = generate_toolpaths(s, test::config(name));
    CHECK_FALSE(lines.empty());
    auto acc = compute_accuracy(lines, s);
    CHECK(acc.underfill_percent < 15);
  }
}

TEST_CASE("inward widths stay in range on a wedge") {
  PolygonSet taper;
  taper.rings.push_back(make_ring_mm({{0, -0.2}, {10, -1.2}, {10, 1.2}, {0, 0.2}}));
  auto lines = generate_toolpaths(taper, test::config("inward"));
  CHECK(test::width_min(lines) >= 0.3 - 1e-9);
  CHECK(test::width_max(lines) <= 0.6 + 1e-9);
}
