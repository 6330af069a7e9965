#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "qtt/atomic_model.hpp"
#include "qtt/error.hpp"
#include "support/generators.hpp"

using namespace qtt;
using namespace qtt::atom;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("atom table rows") {
  const auto& he = atom_spec(Atom::He);
  CHECK(he.Z == 2);
  CHECK(he.Ip0 == 0.903);
  const auto& kr = atom_spec(Atom::Kr);
  CHECK(kr.A == 6.42);
  CHECK(kr.alpha_I == 9.25);
  CHECK(supported_atoms().size() == 3);
  for (Atom a : supported_atoms()) CHECK(parse_atom(to_string(a)) == a);
  CHECK_FALSE(parse_atom("Xe"));
}

TEST_CASE("screening function") {
  CHECK_THAT(screening(atom_spec(Atom::Ar), 1.0), WithinRel(2.278550902181343, 1e-13));
  CHECK(screening(atom_spec(Atom::He), 0.0) == 1.0); // Z - 1 electrons at the nucleus
  CHECK_THAT(screening(atom_spec(Atom::Kr), 0.0), WithinAbs(35.0, 1e-13));
}

TEST_CASE("Stark-shifted ionisation potential") {
  CHECK_THAT(stark_ip(atom_spec(Atom::He), 0.0423), WithinRel(0.9039841095, 1e-10));
  CHECK_THAT(stark_ip(atom_spec(Atom::Kr), 0.1006), WithinRel(0.552698341, 1e-9));
  CHECK(stark_ip(atom_spec(Atom::Ar), 0.0) == 0.580);
}

TEST_CASE("peak field conventions") {
  LaserSpec lo, hi;
  lo.intensity_W_cm2 = 1.08e14;
  hi.intensity_W_cm2 = 6.12e14;
  const double e_lo = peak_field(lo);
  const double e_hi = peak_field(hi);
  CHECK_THAT(e_lo, WithinRel(std::sqrt(1.08e14 / 3.50944758e16 / (1.0 + 0.85 * 0.85)), 1e-15));
  CHECK(e_lo >= 0.040);
  CHECK(e_hi <= 0.102);
  CHECK(peak_field(lo, FieldConvention::multiply) > 1.5 * e_lo);
  LaserSpec bad;
  bad.intensity_W_cm2 = 0.0;
  CHECK_THROWS_AS(peak_field(bad), Error);
}

TEST_CASE("analytic derivative of V_eff matches central differences") {
  testing::Gen gen(51);
  for (Atom a : supported_atoms()) {
    const EffectiveModel m(atom_spec(a), gen.uniform(0.03, 0.11));
    for (int trial = 0; trial < 200; ++trial) {
      const double eta = gen.log_uniform(0.3, 60.0);
      const double h = 1e-5 * eta;
      const double fd = (v_eff(m, eta + h) - v_eff(m, eta - h)) / (2.0 * h);
      CHECK_THAT(v_eff_prime(m, eta), WithinAbs(fd, 1e-6 * std::max(1.0, std::abs(fd))));
    }
  }
}

TEST_CASE("V_eff term by term") {
  const EffectiveModel m(atom_spec(Atom::He), 0.05);
  const double eta = 3.0;
  const double expected = -1.0 / (8 * eta * eta) - 1.0 / (2 * eta) -
                          std::exp(-2.134 * 1.5) / (2 * eta) + 0.28 * 0.05 / (eta * eta) -
                          0.05 * eta / 8 + std::sqrt(2 * m.Ip()) / (4 * eta);
  CHECK_THAT(v_eff(m, eta), WithinRel(expected, 1e-14));
}

TEST_CASE("model checks its ionisation potential") {
  const auto& he = atom_spec(Atom::He);
  CHECK_NOTHROW(EffectiveModel(he, 0.05, stark_ip(he, 0.05)));
  CHECK_THROWS_AS(EffectiveModel(he, 0.05, 0.903), Error);
  CHECK_THROWS_AS(EffectiveModel(he, -0.01), Error);
  const EffectiveModel m(he, 0.05, SeparationIp::field_free);
  CHECK(m.separation_ip() == 0.903);
  CHECK(m.energy() == -0.25 * m.Ip());
}
