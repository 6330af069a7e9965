#include <catch2/catch_amalgamated.hpp>

#include "qtt/error.hpp"
#include "qtt/units.hpp"

using namespace qtt;
using Catch::Matchers::WithinRel;

TEST_CASE("atomic time to attoseconds") {
  const auto q = convert({1.0, Unit::atomic_time}, Unit::attosecond);
  CHECK(q.unit == Unit::attosecond);
  CHECK(q.value == 24.188843265857);
  CHECK_THAT(convert({1.0, Unit::femtosecond}, Unit::atomic_time).value,
             WithinRel(1000.0 / 24.188843265857, 1e-15));
}

TEST_CASE("intensity to atomic units") {
  CHECK_THAT(convert({3.50944758e16, Unit::W_per_cm2}, Unit::atomic_intensity).value,
             WithinRel(1.0, 1e-15));
  CHECK_THAT(intensity_to_atomic(1.08e14), WithinRel(1.08e14 / 3.50944758e16, 1e-15));
}

TEST_CASE("round trip through every time unit") {
  for (double t : {1e-3, 0.5, 133.0, 7.7e4}) {
    for (Unit u : {Unit::atomic_time, Unit::femtosecond}) {
      const auto there = convert({t, Unit::attosecond}, u);
      CHECK_THAT(convert(there, Unit::attosecond).value, WithinRel(t, 1e-15));
    }
  }
}

TEST_CASE("converting across dimensions throws") {
  try {
    convert({1.0, Unit::attosecond}, Unit::W_per_cm2);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatibleUnits);
  }
  CHECK_THROWS_AS(convert({1.0, Unit::atomic_length}, Unit::atomic_energy), Error);
}

TEST_CASE("unit names parse back") {
  for (Unit u : {Unit::atomic_time, Unit::attosecond, Unit::femtosecond, Unit::atomic_field,
                 Unit::W_per_cm2, Unit::atomic_intensity, Unit::atomic_energy, Unit::atomic_length,
                 Unit::dimensionless}) {
    const auto parsed = parse_unit(to_string(u));
    REQUIRE(parsed);
    CHECK(*parsed == u);
  }
  CHECK_FALSE(parse_unit("furlong"));
}

TEST_CASE("error message carries the code") {
  const Error e(ErrorCode::NoBarrier, "field too strong");
  CHECK(std::string(e.what()) == "NoBarrier: field too strong");
  CHECK(e.detail() == "field too strong");
}
