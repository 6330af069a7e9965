#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qtt/rect_barrier.hpp"

namespace qtt::testing {

// Seeded so a failing case can be reproduced from the seed alone.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// 0 < E < V0 with kappa w at most max_kappa_w; widths span four decades.
  rect::BarrierSpec barrier(double max_kappa_w = 30.0) {
    const double V0 = log_uniform(0.05, 20.0);
    const double E = V0 * uniform(0.02, 0.98);
    const double kappa = std::sqrt(2.0 * (V0 - E));
    double w = log_uniform(1e-3, 10.0);
    if (kappa * w > max_kappa_w) w = max_kappa_w / kappa * uniform(0.1, 1.0);
    const double xL = uniform(-5.0, 5.0);
    return {E, V0, xL, xL + w};
  }

private:
  std::mt19937_64 rng_;
};

} // namespace qtt::testing
