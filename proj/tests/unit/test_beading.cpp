#include <doctest.h>

#include "beadpath/beading.hpp"
#include "beadpath/propagation.hpp"
#include "support.hpp"

using namespace beadpath;
using doctest::Approx;

namespace {

SchemePtr scheme(const char* name, int n = 2, int c = 4) {
  SchemeConfig cfg;
  cfg.name = name;
  cfg.n = n;
  cfg.c = c;
  return make_scheme(cfg);
}

void check_widths(const Beading& b, std::vector<double> expect) {
  REQUIRE(b.widths.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(b.widths[i] == Approx(expect[i]).epsilon(1e-4));
}

// Beads, mirrored to the full diameter, do not overlap and stay inside [0, 2r].
void check_layout(const Beading& b) {
  std::vector<std::pair<double, double>> full;
  for (std::size_t i = 0; i < b.widths.size(); ++i) full.push_back({b.locations[i], b.widths[i]});
  for (std::size_t i = b.widths.size(); i-- > 0;) {
    if (b.n % 2 == 1 && i + 1 == b.widths.size()) continue;
    full.push_back({2 * b.r - b.locations[i], b.widths[i]});
  }
  for (std::size_t i = 0; i + 1 < full.size(); ++i) {
    CHECK(full[i].first <= full[i + 1].first + 1e-12);
  }
}

}  // namespace

TEST_CASE("uniform") {
  auto s = scheme("uniform");
  CHECK(s->q(1.3) == 4);
  check_widths(s->beading_for(0.65), {0.4, 0.4});
  auto b = s->beading_for(0.4);
  CHECK(b.n == 2);
  check_widths(b, {0.4});
  CHECK(s->q(0.3) == 0);
  CHECK(s->centering() == CenteringPolicy::Disabled);
}

TEST_CASE("outer") {
  auto s = scheme("outer");
  auto b = s->beading_for(0.15);
  CHECK(b.n == 1);
  check_widths(b, {0.3});
  b = s->beading_for(0.5);
  CHECK(b.n == 2);
  check_widths(b, {0.4});
  CHECK(b.total() < 1.0);
  CHECK(s->q(0.4) == 2);
  CHECK(s->retreat_ratio() == 0);
}

TEST_CASE("constant") {
  auto s = scheme("constant", 2, 4);
  check_widths(s->beading_for(1.0), {0.5, 0.5});
  check_widths(s->beading_for(0.2), {0.1, 0.1});
  auto one = scheme("constant", 2, 1);
  for (double r : {0.1, 0.7, 2.0}) {
    auto b = one->beading_for(r);
    CHECK(b.n == 1);
    check_widths(b, {2 * r});
    CHECK(b.locations[0] == Approx(r));
  }
  CHECK(s->centering() == CenteringPolicy::AllButOutline);
}

TEST_CASE("evenly distributed") {
  auto s = scheme("evenly");
  CHECK(s->q(0.59) == 1);
  CHECK(s->q(0.61) == 2);
  CHECK(s->q(0) == 0);
  CHECK(s->q_inverse(1) == Approx(0.6));
  auto b = s->B(3, 0.63);
  check_widths(b, {0.42, 0.42});
  CHECK(b.has_center());
  CHECK(b.locations[1] == Approx(0.63));
  check_widths(s->beading_for(0.6), {0.4, 0.4});
  // quantization edges give the extreme widths 1.5 w* and 0.75 w*
  check_widths(s->beading_for(0.2999), {0.5998});
  check_widths(s->beading_for(0.3001), {0.3001});
}

TEST_CASE("centered") {
  auto s = scheme("centered");
  auto b = s->beading_for(0.5);
  CHECK(b.n == 3);
  check_widths(b, {0.4, 0.2});
  b = s->beading_for(0.8);
  CHECK(b.n == 4);
  check_widths(b, {0.4, 0.4});
  b = s->beading_for(0.359);
  CHECK(b.n == 1);
  CHECK(b.widths[0] == Approx(0.718));
  CHECK(s->transition_length(1) == Approx(0.2));
}

TEST_CASE("inward distributed") {
  auto s = scheme("inward", 2);
  auto b = s->B(4, 0.9);
  check_widths(b, {0.4318, 0.4682});
  CHECK(b.total() == Approx(1.8));
  check_widths(s->B(4, 0.8), {0.4, 0.4});

  // spreading over a very large N approaches the even distribution
  auto wide = std::make_shared<InwardScheme>(0.4, 1e6);
  auto even = scheme("evenly");
  for (double r : {0.35, 0.9, 1.37}) {
    int n = even->q(2 * r);
    auto a = wide->B(n, r);
    auto e = even->B(n, r);
    for (std::size_t i = 0; i < a.widths.size(); ++i) CHECK(std::abs(a.widths[i] - e.widths[i]) < 1e-9);
  }
}

TEST_CASE("widening") {
  SchemeConfig cfg;
  cfg.name = "evenly";
  cfg.widening = true;
  cfg.w_min = 0.3;
  cfg.r_min = 0.15;
  auto s = make_scheme(cfg);
  CHECK(s->q(0.25) == 0);
  auto b = s->beading_for(0.175);
  CHECK(b.n == 1);
  check_widths(b, {0.35});
  auto plain = scheme("evenly");
  for (double r : {0.2, 0.45, 1.1}) {
    auto x = s->beading_for(r), y = plain->beading_for(r);
    CHECK(x.n == y.n);
    for (std::size_t i = 0; i < x.widths.size(); ++i) CHECK(x.widths[i] == Approx(y.widths[i]));
  }
}

TEST_CASE("shell") {
  SchemeConfig cfg;
  cfg.name = "evenly";
  cfg.shell = 4;
  auto s = make_scheme(cfg);
  auto inner = scheme("evenly");
  CHECK(inner->q_inverse(4) == Approx(1.8));
  auto b = s->beading_for(1.5);
  CHECK(b.n == 4);
  check_widths(b, {0.4, 0.4});
  CHECK(b.locations[0] == Approx(0.2));
  CHECK(b.locations[1] == Approx(0.6));
  b = s->beading_for(0.85);
  CHECK(b.n == 4);
  check_widths(b, {0.425, 0.425});
  for (double r : {0.1, 0.25}) {
    auto x = s->beading_for(r), y = inner->beading_for(r);
    CHECK(x.n == y.n);
    for (std::size_t i = 0; i < x.widths.size(); ++i) CHECK(x.widths[i] == Approx(y.widths[i]));
  }
}

TEST_CASE("unknown scheme names are rejected") {
  SchemeConfig cfg;
  cfg.name = "spiral";
  CHECK_THROWS_AS(make_scheme(cfg), std::invalid_argument);
}

TEST_CASE("distributed schemes fill the diameter exactly") {
  for (const char* name : {"evenly", "inward", "constant"}) {
    auto s = scheme(name);
    for (double r = 0.05; r < 3; r += 0.0137) {
      auto b = s->beading_for(r);
      if (b.n == 0) continue;
      INFO(name, " r=", r);
      CHECK(b.total() == Approx(2 * r).epsilon(1e-9));
      check_layout(b);
    }
  }
}

TEST_CASE("centered scheme fills odd counts and keeps even counts close") {
  auto s = scheme("centered");
  for (double r = 0.05; r < 3; r += 0.0137) {
    auto b = s->beading_for(r);
    double gap = 2 * r - b.total();
    if (b.n % 2 == 1) {
      CHECK(gap == Approx(0).epsilon(1e-9));
      CHECK(b.widths.back() >= 0.25 * 0.4 - 1e-9);
      CHECK(b.widths.back() <= 1.8 * 0.4 + 1e-9);
    } else {
      // discrepancy limits d_min and d_max
      CHECK(gap >= -0.08 - 1e-9);
      CHECK(gap <= 0.1 + 1e-9);
    }
  }
}

TEST_CASE("widths grow with the diameter at most one to one") {
  SchemeConfig wc;
  wc.name = "inward";
  wc.widening = true;
  std::vector<SchemePtr> schemes = {scheme("evenly"), scheme("centered"), scheme("inward"), make_scheme(wc)};
  for (auto& s : schemes) {
    for (int n = 1; n <= 6; ++n) {
      for (double d = 0.1; d < 3; d += 0.01) {
        auto a = s->B(n, d / 2), b = s->B(n, (d + 0.01) / 2);
        for (std::size_t i = 0; i < a.widths.size(); ++i) {
          double dw = b.widths[i] - a.widths[i];
          CHECK(dw >= -1e-9);
          CHECK(dw <= 0.01 + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("interpolation between counts") {
  auto s = scheme("evenly");
  auto b2 = s->B(2, 0.3), b3 = s->B(3, 0.3);
  auto f0 = interpolate_beadings(b2, b3, 0);
  auto f1 = interpolate_beadings(b2, b3, 1);
  CHECK(f0.widths == b2.widths);
  CHECK(f1.widths == b3.widths);
  CHECK(f1.locations == b3.locations);
  auto m = interpolate_beadings(b2, b3, 2.0 / 3);
  check_layout(m);
  for (std::size_t i = 0; i + 1 < m.locations.size(); ++i) {
    CHECK(m.locations[i] + 0.5 * m.widths[i] <= m.locations[i + 1] - 0.5 * m.widths[i + 1] + 1e-9);
  }
  CHECK_THROWS_AS(interpolate_beadings(b2, s->B(3, 0.31), 0.5), InvalidInterpolation);
}

TEST_CASE("fractional bead count picks the interpolated beading") {
  auto s = scheme("evenly");
  auto b = central_beading(*s, 2.4, 0.5);
  auto ref = interpolate_beadings(s->B(2, 0.5), s->B(3, 0.5), 0.4);
  CHECK(b.n == ref.n);
  for (std::size_t i = 0; i < b.widths.size(); ++i) CHECK(b.widths[i] == Approx(ref.widths[i]));
}

TEST_CASE("rectangle chain carries one beading everywhere") {
  PipelineConfig cfg = test::config("evenly");
  auto res = run_pipeline(make_rect(0, 0, 10, 1.2), cfg);
  for (std::size_t v = 0; v < res.st.nodes.size(); ++v) {
    if (!res.st.nodes[v].central) continue;
    CHECK(res.beadings[v].n == 3);
    check_widths(res.beadings[v], {0.4, 0.4});
  }
  for (auto& b : res.beadings) CHECK(b.n >= 0);
}

TEST_CASE("radius nodes split edges once") {
  auto st = build_st(test::wedge(11.42, 10));
  insert_radius_nodes(st, {0.15});
  bool found = false;
  for (auto& n : st.nodes) found |= std::abs(n.R - 0.15) < 1e-6;
  CHECK(found);
  std::size_t count = st.nodes.size();
  insert_radius_nodes(st, {0.15});
  CHECK(st.nodes.size() == count);
  insert_radius_nodes(st, {});
  CHECK(st.nodes.size() == count);
}
