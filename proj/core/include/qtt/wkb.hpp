#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qtt/atomic_model.hpp"
#include "qtt/cumulative.hpp"

namespace qtt::wkb {

using atom::EffectiveModel;

/// V_eff(eta) + Ip/4: positive under the barrier, negative where the motion
/// along eta is classically allowed.
double barrier_excess(const EffectiveModel& model, double eta);

/// Local momenta. kappa is set under the barrier, k where the motion is
/// allowed; both are zero at a turning point.
struct Momenta {
  std::optional<double> k;
  std::optional<double> kappa;
};

Momenta momenta(const EffectiveModel& model, double eta);

struct BarrierGeometry {
  double eta_L; ///< inner turning point
  double eta_I; ///< maximum of V_eff, where the time integral starts
  double eta_R; ///< tunnel exit
  double chi;   ///< ∫ kappa over [eta_L, eta_R]
};

struct BarrierOptions {
  double eta_min = 1e-2;  ///< start of the sign scan
  double cap_factor = 8.0; ///< scan ends at cap_factor * Ip / E0
  int scan_points = 4000;
  double root_tol = 1e-10;
  double rel_tol = 1e-8;
};

/// Finds the outermost interval where V_eff + Ip/4 > 0 bounded by two sign
/// changes, refines both turning points, the maximum in between and the WKB
/// exponent chi. Throws NoBarrier when the field has pushed the barrier top
/// below -Ip/4 (over-the-barrier regime).
BarrierGeometry locate_barrier(const EffectiveModel& model, const BarrierOptions& opts = {});

/// ∫_{eta_R}^{eta} kappa for eta in [eta_start, eta_R] (a non-positive number),
/// tabulated in t = sqrt(eta_R - eta). In that variable kappa deta becomes
/// 2 t kappa(eta_R - t^2) dt, which is smooth at the exit.
class ExitAction {
public:
  ExitAction(const EffectiveModel& model, const BarrierGeometry& geom, double eta_start,
             int nodes);

  double operator()(double eta) const;
  int nodes() const noexcept { return static_cast<int>(table_.nodes().size()); }
  double eta_start() const noexcept { return eta_start_; }

private:
  double eta_R_;
  double eta_start_;
  numerics::CumulativeTable table_;
};

/// (rho - rho_backward) / J_forward under the barrier,
///   [e^{2 S} / (4 kappa)] / [1/2 - kappa' / (4 kappa^2)],  S = ∫_{eta_R}^{eta} kappa,
/// evaluated as kappa^2 e^{2 S} / (2 kappa^3 - V_eff'), which is finite (zero)
/// at eta_R. This overload computes S by direct quadrature.
double region2_integrand(const EffectiveModel& model, const BarrierGeometry& geom, double eta);

/// Same integrand with S read from a precomputed table.
double region2_integrand(const EffectiveModel& model, const ExitAction& action, double eta);

struct TunnelingOptions {
  double rel_tol = 1e-8;
  int initial_nodes = 32;
  int max_nodes = 1 << 16;
};

/// Tunnelling-time integral with its ExitAction table refined by doubling
/// until the result moves by less than rel_tol. Immutable once built.
class TunnelingSolver {
public:
  TunnelingSolver(const EffectiveModel& model, const BarrierGeometry& geom,
                  const TunnelingOptions& opts = {});

  /// ∫_{eta_I}^{eta_R}, atomic time units.
  double time() const noexcept { return time_; }
  /// ∫_{eta_I}^{eta} for eta in [eta_I, eta_R].
  double time_to(double eta) const;
  double integrand(double eta) const;
  const ExitAction& action() const noexcept { return action_; }
  const BarrierGeometry& geometry() const noexcept { return geom_; }
  double rel_tol() const noexcept { return opts_.rel_tol; }

private:
  TunnelingSolver(const EffectiveModel& model, const BarrierGeometry& geom,
                  const TunnelingOptions& opts, std::pair<ExitAction, double>&& refined);

  EffectiveModel model_;
  BarrierGeometry geom_;
  TunnelingOptions opts_;
  ExitAction action_;
  double time_;
};

/// Travel time from eta_I to the exit eta_R, atomic units.
double qtt_tunneling(const EffectiveModel& model, const BarrierGeometry& geom,
                     const TunnelingOptions& opts = {});

/// ∫_{eta_R}^{eta_tilde} deta / k(eta), the free-flight time after the exit.
/// Integrated in s = sqrt(eta - eta_R), which removes the 1/sqrt endpoint.
double qtt_continuum(const EffectiveModel& model, const BarrierGeometry& geom, double eta_tilde,
                     double rel_tol = 1e-8);

/// Time from eta_I to an arbitrary exit point: inside the barrier only the
/// tunnelling integral up to exit_eta, beyond eta_R the continuum part is added.
double qtt_to_exit(const EffectiveModel& model, const BarrierGeometry& geom, double exit_eta,
                   const TunnelingOptions& opts = {});

struct TrajectorySample {
  double eta;
  double time; ///< cumulative, atomic units
};

struct QttTrajectory {
  std::vector<TrajectorySample> samples;
  std::size_t boundary_index = 0; ///< sample sitting at eta_R
  double left_limit = 0.0;  ///< eta_R approached from the barrier (segment sum)
  double right_limit = 0.0; ///< eta_R approached from outside (single global integral)
  double slope_left = 0.0;  ///< secant slope of the last barrier segment
  double slope_right = 0.0; ///< secant slope of the first continuum segment
  double tolerance = 0.0;   ///< quadrature tolerance on the boundary value

  double boundary_jump() const noexcept { return right_limit - left_limit; }
};

/// Cumulative time sampled from eta_I through eta_R out to eta_tilde_max.
/// About half the samples fall under the barrier.
QttTrajectory qtt_trajectory(const EffectiveModel& model, const BarrierGeometry& geom,
                             double eta_tilde_max, int n_samples,
                             const TunnelingOptions& opts = {});

} // namespace qtt::wkb
