#include <doctest.h>

#include "beadpath/backpressure.hpp"

using namespace beadpath;

TEST_CASE("reference width keeps the reference speed") {
  FlowModel m;
  FlowPoint p = speed_for_width(m, 0.4);
  CHECK(p.flow == doctest::Approx(1.2));
  CHECK(p.speed == doctest::Approx(30.0));
}

TEST_CASE("double width slows down by the back-pressure term") {
  FlowModel m;
  FlowPoint p = speed_for_width(m, 0.8);
  CHECK(p.flow == doctest::Approx(0.1));
  CHECK(p.speed == doctest::Approx(1.25));
}

TEST_CASE("k = 0 is constant flow") {
  FlowModel m;
  m.k = 0;
  for (double w : {0.2, 0.4, 0.55, 0.9}) {
    FlowPoint p = speed_for_width(m, w);
    CHECK(p.flow == doctest::Approx(m.f0()));
    CHECK(p.speed * w == doctest::Approx(30.0 * 0.4));
  }
}

TEST_CASE("speed decreases with width") {
  FlowModel m;
  double prev = 1e9;
  for (double w = 0.2; w < 0.85; w += 0.05) {
    double v = speed_for_width(m, w).speed;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("unreachable widths") {
  FlowModel m;
  CHECK_THROWS_AS(speed_for_width(m, 1.0), WidthUnreachable);
  CHECK_THROWS_AS(speed_for_width(m, 0.0), std::invalid_argument);
  m.clamp_min_flow = true;
  FlowPoint p = speed_for_width(m, 1.0);
  CHECK(p.flow == doctest::Approx(0.05 * m.f0()));
}

TEST_CASE("volume per length") {
  FlowModel m;
  CHECK(volume_per_length(m, 0.4) == doctest::Approx(0.4 * 0.1 * 0.9));
}
