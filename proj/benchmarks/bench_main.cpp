#include <cmath>

#include <benchmark/benchmark.h>

#include "qtt/quadrature.hpp"
#include "qtt/rect_barrier.hpp"
#include "qtt/wkb.hpp"

namespace {

qtt::atom::EffectiveModel model_at(qtt::atom::Atom a, double intensity) {
  qtt::atom::LaserSpec laser;
  laser.intensity_W_cm2 = intensity;
  return qtt::atom::make_model(a, laser);
}

void BM_RectSolve(benchmark::State& state) {
  const qtt::rect::BarrierSpec spec{1.0, 2.0, 0.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(qtt::rect::solve(spec));
}
BENCHMARK(BM_RectSolve);

void BM_RectRegionIQuadrature(benchmark::State& state) {
  const qtt::rect::BarrierSpec spec{1.0, 2.0, 2.0, 3.0};
  const auto sol = qtt::rect::solve(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qtt::rect::qtt_region_I(spec, sol, 1.0, qtt::rect::TimeMethod::quadrature).time);
  }
}
BENCHMARK(BM_RectRegionIQuadrature);

void BM_IntegrateAdaptive(benchmark::State& state) {
  const auto f = [](double x) { return 1.0 / std::sqrt(x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(qtt::numerics::integrate_adaptive(f, 0.0, 1.0, 1e-10, 1e-14).value);
  }
}
BENCHMARK(BM_IntegrateAdaptive);

void BM_LocateBarrier(benchmark::State& state) {
  const auto m = model_at(static_cast<qtt::atom::Atom>(state.range(0)), 1.08e14);
  for (auto _ : state) benchmark::DoNotOptimize(qtt::wkb::locate_barrier(m));
}
BENCHMARK(BM_LocateBarrier)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_TunnelingTime(benchmark::State& state) {
  const auto m = model_at(static_cast<qtt::atom::Atom>(state.range(0)), 1.08e14);
  const auto g = qtt::wkb::locate_barrier(m);
  for (auto _ : state) benchmark::DoNotOptimize(qtt::wkb::qtt_tunneling(m, g));
}
BENCHMARK(BM_TunnelingTime)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
