#include "qtt/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qtt/error.hpp"
#include "qtt/quadrature.hpp"
#include "qtt/roots.hpp"

namespace qtt::wkb {

namespace {

using atom::v_eff;
using atom::v_eff_prime;

double kappa_or_zero(const EffectiveModel& model, double eta) {
  return std::sqrt(std::max(0.0, 2.0 * barrier_excess(model, eta)));
}

// Below this s^2 = eta - eta_R the difference quotient for k^2 / s^2 is
// replaced by the derivative at the midpoint.
constexpr double kLinearZone = 1e-6;

// 2 s / k(eta_R + s^2), with k^2 measured from the computed exit so that the
// integrand has a finite limit 2 / sqrt(-2 V'(eta_R)) at s = 0.
double continuum_integrand(const EffectiveModel& model, double eta_R, double excess_at_exit,
                           double s) {
  const double s2 = s * s;
  if (s2 < kLinearZone) {
    const double slope = -v_eff_prime(model, eta_R + 0.5 * s2);
    return 2.0 / std::sqrt(2.0 * slope);
  }
  const double k2 = 2.0 * (excess_at_exit - barrier_excess(model, eta_R + s2));
  return 2.0 * s / std::sqrt(k2);
}

double outer_integral(const EffectiveModel& model, const ExitAction& action, double from,
                      double to, double rel_tol) {
  if (!(to > from)) return 0.0;
  const auto f = [&](double eta) { return region2_integrand(model, action, eta); };
  return numerics::integrate_adaptive(f, from, to, rel_tol, 1e-300, 8000).value;
}

} // namespace

double barrier_excess(const EffectiveModel& model, double eta) {
  return v_eff(model, eta) + 0.25 * model.Ip();
}

Momenta momenta(const EffectiveModel& model, double eta) {
  if (!(eta > 0.0)) throw Error(ErrorCode::InvalidArgument, "eta must be positive");
  const double excess = barrier_excess(model, eta);
  Momenta m;
  if (excess >= 0.0) m.kappa = std::sqrt(2.0 * excess);
  if (excess <= 0.0) m.k = std::sqrt(-2.0 * excess);
  return m;
}

BarrierGeometry locate_barrier(const EffectiveModel& model, const BarrierOptions& opts) {
  if (!(model.E0() > 0.0)) {
    throw Error(ErrorCode::NoBarrier, "no field, no exit from the atom");
  }
  const double cap = opts.cap_factor * model.Ip() / model.E0();
  if (!(cap > opts.eta_min)) {
    throw Error(ErrorCode::NoBarrier, "scan range is empty");
  }
  const auto f = [&](double eta) { return barrier_excess(model, eta); };

  // Log-spaced scan; collect every bounded interval where f > 0.
  const int n = std::max(opts.scan_points, 16);
  const double ratio = std::log(cap / opts.eta_min) / (n - 1);
  double prev_x = opts.eta_min;
  double prev_f = f(prev_x);
  std::optional<std::pair<double, double>> rise; // bracket of the last upward crossing
  std::optional<std::pair<std::pair<double, double>, std::pair<double, double>>> barrier;
  for (int i = 1; i < n; ++i) {
    const double x = (i == n - 1) ? cap : opts.eta_min * std::exp(ratio * i);
    const double fx = f(x);
    if (prev_f <= 0.0 && fx > 0.0) {
      rise = std::make_pair(prev_x, x);
    } else if (prev_f > 0.0 && fx <= 0.0 && rise) {
      barrier = std::make_pair(*rise, std::make_pair(prev_x, x));
      rise.reset();
    }
    prev_x = x;
    prev_f = fx;
  }
  if (!barrier) {
    std::ostringstream msg;
    msg << "V_eff stays below -Ip/4 on [" << opts.eta_min << ", " << cap << "] for "
        << atom::to_string(model.atom().name) << " at E0 = " << model.E0();
    throw Error(ErrorCode::NoBarrier, msg.str());
  }

  BarrierGeometry g{};
  try {
    g.eta_L = numerics::find_root(f, {barrier->first.first, barrier->first.second}, opts.root_tol);
    g.eta_R =
        numerics::find_root(f, {barrier->second.first, barrier->second.second}, opts.root_tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::RootBracketFailure, e.detail());
  }

  const auto v = [&](double eta) { return v_eff(model, eta); };
  const auto top = numerics::find_max(v, {g.eta_L, g.eta_R}, opts.root_tol);
  g.eta_I = top.x;
  // Brent on a flat top is only good to ~sqrt(eps); the zero of V' is sharper.
  const auto dv = [&](double eta) { return v_eff_prime(model, eta); };
  if (dv(g.eta_L) > 0.0 && dv(g.eta_R) < 0.0) {
    g.eta_I = numerics::find_root(dv, {g.eta_L, g.eta_R}, 1e-13 * g.eta_R);
  }

  const auto kappa = [&](double eta) { return kappa_or_zero(model, eta); };
  g.chi = numerics::integrate_adaptive(kappa, g.eta_L, g.eta_R, opts.rel_tol, 1e-300, 8000).value;
  return g;
}

ExitAction::ExitAction(const EffectiveModel& model, const BarrierGeometry& geom,
                       double eta_start, int nodes)
    : eta_R_(geom.eta_R),
      eta_start_(eta_start),
      table_(
          [&model, eta_R = geom.eta_R](double t) {
            return 2.0 * t * kappa_or_zero(model, eta_R - t * t);
          },
          numerics::uniform_nodes(0.0, std::sqrt(geom.eta_R - eta_start), std::max(nodes, 4))) {}

double ExitAction::operator()(double eta) const {
  return -table_(std::sqrt(std::max(0.0, eta_R_ - eta)));
}

double region2_integrand(const EffectiveModel& model, const BarrierGeometry& geom, double eta) {
  const auto kappa = [&](double x) { return kappa_or_zero(model, x); };
  const double action =
      eta < geom.eta_R
          ? -numerics::integrate_adaptive(kappa, eta, geom.eta_R, 1e-12, 1e-300, 8000).value
          : 0.0;
  const double k = kappa_or_zero(model, eta);
  const double k2 = k * k;
  return k2 * std::exp(2.0 * action) / (2.0 * k2 * k - v_eff_prime(model, eta));
}

double region2_integrand(const EffectiveModel& model, const ExitAction& action, double eta) {
  const double k = kappa_or_zero(model, eta);
  const double k2 = k * k;
  return k2 * std::exp(2.0 * action(eta)) / (2.0 * k2 * k - v_eff_prime(model, eta));
}

namespace {

std::pair<ExitAction, double> refine(const EffectiveModel& model, const BarrierGeometry& geom,
               const TunnelingOptions& opts) {
  if (!(geom.eta_L < geom.eta_I && geom.eta_I < geom.eta_R)) {
    throw Error(ErrorCode::InvalidArgument, "barrier geometry must satisfy eta_L < eta_I < eta_R");
  }
  const double inner_tol = 0.1 * opts.rel_tol;
  int nodes = std::max(opts.initial_nodes, 4);
  ExitAction action(model, geom, geom.eta_I, nodes);
  double time = outer_integral(model, action, geom.eta_I, geom.eta_R, inner_tol);
  while (true) {
    if (2 * nodes > opts.max_nodes) {
      std::ostringstream msg;
      msg << "tunnelling integral not stable to " << opts.rel_tol << " with " << nodes
          << " table nodes";
      throw Error(ErrorCode::NonConvergence, msg.str());
    }
    nodes *= 2;
    ExitAction finer(model, geom, geom.eta_I, nodes);
    const double t = outer_integral(model, finer, geom.eta_I, geom.eta_R, inner_tol);
    const bool settled = std::abs(t - time) <= opts.rel_tol * std::abs(t);
    action = std::move(finer);
    time = t;
    if (settled) break;
  }
  return {std::move(action), time};
}

} // namespace

TunnelingSolver::TunnelingSolver(const EffectiveModel& model, const BarrierGeometry& geom,
                                 const TunnelingOptions& opts)
    : TunnelingSolver(model, geom, opts, refine(model, geom, opts)) {}

TunnelingSolver::TunnelingSolver(const EffectiveModel& model, const BarrierGeometry& geom,
                                 const TunnelingOptions& opts,
                                 std::pair<ExitAction, double>&& refined)
    : model_(model),
      geom_(geom),
      opts_(opts),
      action_(std::move(refined.first)),
      time_(refined.second) {}

double TunnelingSolver::time_to(double eta) const {
  const double end = std::clamp(eta, geom_.eta_I, geom_.eta_R);
  return outer_integral(model_, action_, geom_.eta_I, end, 0.1 * opts_.rel_tol);
}

double TunnelingSolver::integrand(double eta) const {
  return region2_integrand(model_, action_, eta);
}

double qtt_tunneling(const EffectiveModel& model, const BarrierGeometry& geom,
                     const TunnelingOptions& opts) {
  return TunnelingSolver(model, geom, opts).time();
}

double qtt_continuum(const EffectiveModel& model, const BarrierGeometry& geom, double eta_tilde,
                     double rel_tol) {
  if (!(eta_tilde >= geom.eta_R)) {
    throw Error(ErrorCode::InvalidArgument, "continuum end point must lie beyond eta_R");
  }
  if (eta_tilde == geom.eta_R) return 0.0;
  const double excess_at_exit = barrier_excess(model, geom.eta_R);
  const auto g = [&](double s) {
    return continuum_integrand(model, geom.eta_R, excess_at_exit, s);
  };
  return numerics::integrate_adaptive(g, 0.0, std::sqrt(eta_tilde - geom.eta_R), rel_tol, 1e-300,
                                      8000)
      .value;
}

double qtt_to_exit(const EffectiveModel& model, const BarrierGeometry& geom, double exit_eta,
                   const TunnelingOptions& opts) {
  if (!(exit_eta > geom.eta_I)) {
    throw Error(ErrorCode::InvalidArgument, "exit point must lie beyond eta_I");
  }
  const TunnelingSolver solver(model, geom, opts);
  if (exit_eta <= geom.eta_R) return solver.time_to(exit_eta);
  return solver.time() + qtt_continuum(model, geom, exit_eta, opts.rel_tol);
}

QttTrajectory qtt_trajectory(const EffectiveModel& model, const BarrierGeometry& geom,
                             double eta_tilde_max, int n_samples, const TunnelingOptions& opts) {
  if (!(eta_tilde_max > geom.eta_R)) {
    throw Error(ErrorCode::InvalidArgument, "trajectory must extend beyond eta_R");
  }
  if (n_samples < 3) {
    throw Error(ErrorCode::InvalidArgument, "trajectory needs at least three samples");
  }
  const TunnelingSolver solver(model, geom, opts);
  const double seg_tol = 0.1 * opts.rel_tol;

  const int inside = std::max(1, (n_samples - 1) / 2); // segments under the barrier
  const int outside = std::max(1, n_samples - 1 - inside);

  QttTrajectory out;
  out.samples.reserve(static_cast<std::size_t>(inside + outside + 1));
  out.samples.push_back({geom.eta_I, 0.0});

  const auto barrier_nodes = numerics::uniform_nodes(geom.eta_I, geom.eta_R, inside + 1);
  double t = 0.0;
  for (int i = 1; i <= inside; ++i) {
    t += outer_integral(model, solver.action(), barrier_nodes[i - 1], barrier_nodes[i], seg_tol);
    out.samples.push_back({barrier_nodes[i], t});
  }
  out.boundary_index = out.samples.size() - 1;
  out.left_limit = t;
  out.right_limit = solver.time();
  out.tolerance = opts.rel_tol * std::abs(solver.time());

  const double excess_at_exit = barrier_excess(model, geom.eta_R);
  const auto g = [&](double s) {
    return continuum_integrand(model, geom.eta_R, excess_at_exit, s);
  };
  const auto outside_nodes = numerics::uniform_nodes(geom.eta_R, eta_tilde_max, outside + 1);
  for (int i = 1; i <= outside; ++i) {
    const double s0 = std::sqrt(outside_nodes[i - 1] - geom.eta_R);
    const double s1 = std::sqrt(outside_nodes[i] - geom.eta_R);
    t += numerics::integrate_adaptive(g, s0, s1, seg_tol, 1e-300, 8000).value;
    out.samples.push_back({outside_nodes[i], t});
  }

  const auto& s = out.samples;
  const std::size_t b = out.boundary_index;
  out.slope_left = (s[b].time - s[b - 1].time) / (s[b].eta - s[b - 1].eta);
  out.slope_right = (s[b + 1].time - s[b].time) / (s[b + 1].eta - s[b].eta);
  return out;
}

} // namespace qtt::wkb
