#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "qtt/error.hpp"
#include "qtt/quadrature.hpp"
#include "qtt/report/reference.hpp"
#include "qtt/units.hpp"
#include "qtt/wkb.hpp"

using namespace qtt;
using namespace qtt::wkb;
using atom::Atom;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

EffectiveModel model_at(Atom a, double I) {
  atom::LaserSpec laser;
  laser.intensity_W_cm2 = I;
  return atom::make_model(a, laser);
}

int sign_changes(const EffectiveModel& m, double lo, double hi, int n) {
  int changes = 0;
  double prev = barrier_excess(m, lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo * std::pow(hi / lo, double(i) / n);
    const double v = barrier_excess(m, x);
    if ((prev > 0.0) != (v > 0.0)) ++changes;
    prev = v;
  }
  return changes;
}

} // namespace

TEST_CASE("turning points and barrier maximum") {
  for (const auto& ref : report::reference::kTurningPoints) {
    const auto m = model_at(ref.atom, ref.intensity_W_cm2);
    const auto g = locate_barrier(m);
    INFO(atom::to_string(ref.atom) << " " << ref.intensity_W_cm2);
    CHECK_THAT(g.eta_L, WithinRel(ref.eta_L, 1e-3));
    CHECK_THAT(g.eta_I, WithinRel(ref.eta_I, 1e-3));
    CHECK_THAT(g.eta_R, WithinRel(ref.eta_R, 1e-3));
    CHECK(std::abs(barrier_excess(m, g.eta_L)) < 1e-9);
    CHECK(std::abs(barrier_excess(m, g.eta_R)) < 1e-9);
    CHECK(std::abs(atom::v_eff_prime(m, g.eta_I)) < 1e-10);
    CHECK(g.chi > 0.0);
  }
}

TEST_CASE("exactly two turning points away from the origin") {
  for (Atom a : atom::supported_atoms()) {
    for (double I : {1.08e14, 1.7e14, 3e14, 6.12e14}) {
      const auto m = model_at(a, I);
      CHECK(sign_changes(m, 0.5, 8.0 * m.Ip() / m.E0(), 20000) == 2);
    }
  }
}

TEST_CASE("the barrier narrows as intensity grows") {
  for (Atom a : atom::supported_atoms()) {
    double prev = 1e300;
    for (double I = 1.0e14; I <= 6.5e14; I += 0.5e14) {
      const auto g = locate_barrier(model_at(a, I));
      CHECK(g.eta_R - g.eta_L < prev);
      prev = g.eta_R - g.eta_L;
    }
  }
}

TEST_CASE("no barrier once the field is strong enough") {
  const auto m = model_at(Atom::Kr, 2e15);
  try {
    locate_barrier(m);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoBarrier);
  }
  CHECK_THROWS_AS(locate_barrier(EffectiveModel(atom::atom_spec(Atom::He), 0.0)), Error);
}

TEST_CASE("local momenta") {
  const auto m = model_at(Atom::He, 1.08e14);
  const auto g = locate_barrier(m);
  const auto inside = momenta(m, 20.0);
  REQUIRE(inside.kappa);
  CHECK_FALSE(inside.k);
  CHECK_THAT(*inside.kappa, WithinRel(std::sqrt(2.0 * (atom::v_eff(m, 20.0) + m.Ip() / 4.0)), 1e-14));
  const auto outside = momenta(m, 1.2 * g.eta_R);
  REQUIRE(outside.k);
  CHECK_FALSE(outside.kappa);
  CHECK_THROWS_AS(momenta(m, 0.0), Error);
}

TEST_CASE("tabulated action matches direct quadrature") {
  for (Atom a : atom::supported_atoms()) {
    const auto m = model_at(a, 1.7e14);
    const auto g = locate_barrier(m);
    const TunnelingSolver solver(m, g);
    for (double f : {0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 0.999}) {
      const double eta = g.eta_I + f * (g.eta_R - g.eta_I);
      const double direct = region2_integrand(m, g, eta);
      // pointwise accuracy of the cubic table, the integral itself is refined to wkb_rel
      CHECK_THAT(solver.integrand(eta), WithinRel(direct, 1e-5));
    }
    CHECK_THAT(region2_integrand(m, g, g.eta_R), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("rearranged integrand equals the printed density over current") {
  const auto m = model_at(Atom::Ar, 1.08e14);
  const auto g = locate_barrier(m);
  const auto kappa = [&](double x) { return std::sqrt(std::max(0.0, 2.0 * barrier_excess(m, x))); };
  for (double f : {0.1, 0.4, 0.8}) {
    const double eta = g.eta_I + f * (g.eta_R - g.eta_I);
    const double S = -numerics::integrate_adaptive(kappa, eta, g.eta_R, 1e-13, 1e-300).value;
    const double q = kappa(eta);
    const double dq = atom::v_eff_prime(m, eta) / q; // from kappa^2 = 2 (V + Ip/4)
    const double naive = (std::exp(2.0 * S) / (4.0 * q)) / (0.5 - dq / (4.0 * q * q));
    CHECK_THAT(region2_integrand(m, g, eta), WithinRel(naive, 1e-9));
  }
}

TEST_CASE("tunnelling time against a nested-quadrature oracle") {
  for (Atom a : atom::supported_atoms()) {
    const auto m = model_at(a, 1.08e14);
    const auto g = locate_barrier(m);
    const auto f = [&](double eta) { return region2_integrand(m, g, eta); };
    const double oracle = numerics::integrate_adaptive(f, g.eta_I, g.eta_R, 1e-9, 1e-300).value;
    CHECK_THAT(qtt_tunneling(m, g), WithinRel(oracle, 1e-7));
  }
}

TEST_CASE("Kr travel times") {
  const double expected[] = {133.0, 116.0, 68.0};
  const double intensity[] = {1.08e14, 1.7e14, 6.12e14};
  for (int i = 0; i < 3; ++i) {
    const auto m = model_at(Atom::Kr, intensity[i]);
    CHECK_THAT(atomic_time_to_as(qtt_tunneling(m, locate_barrier(m))), WithinAbs(expected[i], 5.0));
  }
}

TEST_CASE("time to an arbitrary exit point") {
  const auto m = model_at(Atom::He, 6.12e14);
  const auto g = locate_barrier(m);
  const double full = qtt_tunneling(m, g);
  CHECK_THAT(qtt_to_exit(m, g, g.eta_R), WithinRel(full, 1e-8));
  const double half = qtt_to_exit(m, g, 0.5 * (g.eta_I + g.eta_R));
  CHECK(half > 0.0);
  CHECK(half < full);
  const double beyond = qtt_to_exit(m, g, 1.5 * g.eta_R);
  CHECK_THAT(beyond, WithinRel(full + qtt_continuum(m, g, 1.5 * g.eta_R), 1e-12));
  CHECK_THROWS_AS(qtt_to_exit(m, g, g.eta_I), Error);
}

TEST_CASE("continuum time matches a direct integral away from the exit") {
  const auto m = model_at(Atom::Kr, 1.08e14);
  const auto g = locate_barrier(m);
  const auto inv_k = [&](double eta) { return 1.0 / std::sqrt(-2.0 * barrier_excess(m, eta)); };
  const double a = 1.2 * g.eta_R, b = 2.0 * g.eta_R;
  const double direct = numerics::integrate_adaptive(inv_k, a, b, 1e-12, 1e-300).value;
  CHECK_THAT(qtt_continuum(m, g, b) - qtt_continuum(m, g, a), WithinRel(direct, 1e-8));
  CHECK(qtt_continuum(m, g, g.eta_R) == 0.0);
}

TEST_CASE("trajectory invariants") {
  for (Atom a : atom::supported_atoms()) {
    for (double I : {1.08e14, 6.12e14}) {
      const auto m = model_at(a, I);
      const auto g = locate_barrier(m);
      const auto tr = qtt_trajectory(m, g, 2.0 * g.eta_R, 81);
      REQUIRE(tr.samples.size() == 81);
      CHECK(tr.samples[tr.boundary_index].eta == g.eta_R);
      CHECK(tr.samples.front().time == 0.0);
      for (std::size_t i = 1; i < tr.samples.size(); ++i) {
        CHECK(tr.samples[i].eta > tr.samples[i - 1].eta);
        CHECK(tr.samples[i].time >= tr.samples[i - 1].time);
      }
      CHECK(std::abs(tr.boundary_jump()) < 2.0 * tr.tolerance);
      CHECK(std::abs(tr.slope_right / tr.slope_left - 1.0) > 0.1);
    }
  }
}

TEST_CASE("argument checks") {
  const auto m = model_at(Atom::He, 1.08e14);
  const auto g = locate_barrier(m);
  CHECK_THROWS_AS(qtt_trajectory(m, g, g.eta_R, 50), Error);
  CHECK_THROWS_AS(qtt_trajectory(m, g, 2 * g.eta_R, 2), Error);
  CHECK_THROWS_AS(qtt_continuum(m, g, 0.5 * g.eta_R), Error);
  BarrierGeometry broken = g;
  broken.eta_I = broken.eta_R + 1.0;
  CHECK_THROWS_AS(TunnelingSolver(m, broken), Error);
}
