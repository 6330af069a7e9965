#pragma once

#include <functional>

namespace qtt::numerics {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;
};

using Integrand = std::function<double(double)>;

/// Global adaptive 21-point Gauss-Kronrod quadrature.
///
/// Only interior nodes are sampled, so integrable endpoint singularities
/// (1/sqrt at a turning point) are fine. The interval with the largest error
/// estimate is bisected until the summed estimate drops below
/// max(abs_tol, rel_tol * |I|).
///
/// Throws Error(NonConvergence) if the budget of subdivisions runs out and
/// Error(NonFiniteSample) if the integrand returns NaN or infinity.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b, double rel_tol,
                                    double abs_tol, int max_subdivisions = 4000);

inline QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                           const QuadratureOptions& opts) {
  return integrate_adaptive(f, a, b, opts.rel_tol, opts.abs_tol, opts.max_subdivisions);
}

/// Single application of the 21-point Kronrod rule with its embedded
/// 10-point Gauss estimate. Exposed for the tabulation code.
QuadratureResult kronrod21(const Integrand& f, double a, double b);

} // namespace qtt::numerics
