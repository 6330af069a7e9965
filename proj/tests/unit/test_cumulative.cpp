#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "qtt/cumulative.hpp"
#include "qtt/error.hpp"
#include "support/generators.hpp"

using namespace qtt;
using namespace qtt::numerics;
using Catch::Matchers::WithinAbs;

TEST_CASE("running integral of cos is sin") {
  const auto nodes = uniform_nodes(0.0, 3.0, 64);
  const CumulativeTable t([](double x) { return std::cos(x); }, nodes);
  for (double x : nodes) CHECK_THAT(t(x), WithinAbs(std::sin(x), 1e-12));
  for (double x = 0.01; x < 3.0; x += 0.137) {
    // PCHIP flattens the slope where cos changes sign, so between nodes near pi/2 it is O(h^2).
    CHECK_THAT(t(x), WithinAbs(std::sin(x), 1e-4));
    CHECK_THAT(t.derivative(x), WithinAbs(std::cos(x), 1e-2));
  }
  CHECK_THAT(t.total(), WithinAbs(std::sin(3.0), 1e-12));
  CHECK(t.lower() == 0.0);
  CHECK(t.upper() == 3.0);
}

TEST_CASE("positive integrands give a monotone table") {
  testing::Gen gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = gen.uniform(0.5, 4.0);
    const double b = gen.uniform(-3.0, 3.0);
    const auto f = [&](double x) { return std::exp(-a * (x - b) * (x - b)) + 1e-3; };
    const CumulativeTable t(f, uniform_nodes(-4.0, 4.0, gen.integer(4, 40)));
    double prev = t(-4.0);
    for (double x = -4.0; x <= 4.0; x += 0.01) {
      const double v = t(x);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("out-of-range arguments clamp") {
  const CumulativeTable t([](double) { return 2.0; }, uniform_nodes(1.0, 2.0, 8));
  CHECK(t(0.0) == t(1.0));
  CHECK_THAT(t(5.0), WithinAbs(2.0, 1e-14));
}

TEST_CASE("node validation") {
  const std::vector<double> too_few{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(CumulativeTable([](double x) { return x; }, too_few), Error);
  const std::vector<double> unsorted{0.0, 2.0, 1.0, 3.0};
  CHECK_THROWS_AS(CumulativeTable([](double x) { return x; }, unsorted), Error);
  const auto n = uniform_nodes(0.0, 1.0, 5);
  REQUIRE(n.size() == 5);
  CHECK(n.front() == 0.0);
  CHECK(n.back() == 1.0);
}
