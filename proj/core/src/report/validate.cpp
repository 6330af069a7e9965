#include "qtt/report/validate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "qtt/error.hpp"
#include "qtt/quadrature.hpp"
#include "qtt/rect_barrier.hpp"
#include "qtt/report/reference.hpp"
#include "qtt/report/runs.hpp"
#include "qtt/units.hpp"
#include "qtt/wkb.hpp"

namespace qtt::report {

namespace {

using cd = std::complex<double>;

Check assertion(std::string name, double measured, double tolerance, std::string detail = {}) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  c.passed = std::isfinite(measured) && measured <= tolerance;
  c.detail = std::move(detail);
  return c;
}

Check measurement(std::string name, double measured, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.measurement_only = true;
  c.detail = std::move(detail);
  return c;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Integrates psi'' = 2 (V - E) psi from the transmitted wave on the right of
// the barrier back to x_left with classic RK4, then projects onto e^{+-ikx}.
double reflection_by_shooting(const rect::BarrierSpec& spec, int steps) {
  const double k = std::sqrt(2.0 * spec.energy);
  const double q2 = 2.0 * (spec.height - spec.energy);
  const cd i(0.0, 1.0);
  cd psi = std::exp(i * k * spec.x_right);
  cd dpsi = i * k * psi;
  const double h = -spec.width() / steps;
  const auto rhs = [&](cd y) { return q2 * y; };
  for (int n = 0; n < steps; ++n) {
    const cd k1y = dpsi, k1d = rhs(psi);
    const cd k2y = dpsi + 0.5 * h * k1d, k2d = rhs(psi + 0.5 * h * k1y);
    const cd k3y = dpsi + 0.5 * h * k2d, k3d = rhs(psi + 0.5 * h * k2y);
    const cd k4y = dpsi + h * k3d, k4d = rhs(psi + h * k3y);
    psi += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
  }
  const double x = spec.x_left;
  const cd A = 0.5 * (psi + dpsi / (i * k)) * std::exp(-i * k * x);
  const cd B = 0.5 * (psi - dpsi / (i * k)) * std::exp(i * k * x);
  return std::norm(B) / std::norm(A);
}

std::vector<rect::BarrierSpec> rect_sample(double x_left) {
  std::vector<rect::BarrierSpec> specs;
  for (double E : {0.3, 1.0, 1.7})
    for (double V0 : {2.0, 2.6, 3.4})
      for (double w : {0.3, 0.8, 1.5}) specs.push_back({E, V0, x_left, x_left + w});
  return specs;
}

} // namespace

std::vector<Check> run_validation(const ExperimentConfig& cfg) {
  std::vector<Check> checks;
  const double rel = cfg.tolerances.rect_rel;

  {
    const rect::BarrierSpec s{1.0, 2.0, 0.0, 1.0};
    const auto sol = rect::solve(s);
    checks.push_back(assertion("rect R vs RK4 shooting (E=1, V0=2, w=1)",
                               std::abs(sol.R - reflection_by_shooting(s, 4000)), 1e-10));
    checks.push_back(assertion("rect R vs high-precision reference (E=1, V0=2, w=1)",
                               std::abs(sol.R - 0.7892289060338695), 1e-12,
                               "reference 0.7892289060338695"));
  }

  double flux = 0.0, rt = 0.0, region_I = 0.0, linear = 0.0, dwell = 0.0;
  double ratio_min = 1e300, ratio_max = -1e300;
  std::size_t branch_skips = 0;
  for (const auto& s : rect_sample(cfg.rect.x_left)) {
    const auto sol = rect::solve(s);
    flux = std::max(flux, std::abs(std::norm(sol.A) - std::norm(sol.B) - 1.0) /
                              std::max(1.0, std::norm(sol.A)));
    rt = std::max(rt, std::abs(sol.R + sol.T - 1.0));
    try {
      const double c = rect::qtt_region_I(s, sol, cfg.rect.x_tilde_left).time;
      const double q =
          rect::qtt_region_I(s, sol, cfg.rect.x_tilde_left, rect::TimeMethod::quadrature, rel).time;
      region_I = std::max(region_I, rel_diff(c, q));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BranchDivergence) throw;
      ++branch_skips;
    }
    const auto II = rect::qtt_region_II_breakdown(s, sol, rel);
    linear = std::max(linear, std::abs(II.closed_linear - II.quadrature_linear) /
                                  std::max(1.0, std::abs(II.closed_linear)));
    ratio_min = std::min(ratio_min, II.exponential_ratio());
    ratio_max = std::max(ratio_max, II.exponential_ratio());

    const auto density = [&](double x) { return std::norm(rect::wavefunction(s, sol, x)); };
    const double stored =
        numerics::integrate_adaptive(density, s.x_left, s.x_right, 1e-12, 1e-300).value;
    dwell = std::max(dwell, rel_diff(rect::dwell_time(s, sol), stored / (s.k() * std::norm(sol.A))));
  }
  checks.push_back(assertion("rect flux |A|^2 - |B|^2 = 1 (relative to |A|^2)", flux, 1e-12));
  checks.push_back(assertion("rect R + T = 1", rt, 1e-12));
  {
    std::ostringstream d;
    d << branch_skips << " branch-divergent points skipped";
    checks.push_back(assertion("region I closed form vs quadrature", region_I, 1e-6, d.str()));
  }
  checks.push_back(assertion("region II linear term closed form vs quadrature", linear, 1e-10));
  {
    const rect::BarrierSpec s{1.0, 2.0, 0.0, 1.0};
    const auto II = rect::qtt_region_II_breakdown(s, rect::solve(s), rel);
    checks.push_back(measurement(
        "region II exponential term ratio quadrature / closed form", II.exponential_ratio(),
        "the printed closed form carries half the exponential term that the density over "
        "current integrates to"));
  }
  {
    std::ostringstream d;
    d << "ratio in [" << ratio_min << ", " << ratio_max << "] over the sample grid";
    checks.push_back(assertion("region II exponential ratio stable across grid",
                               ratio_max - ratio_min, 1e-8, d.str()));
  }
  checks.push_back(assertion("dwell time analytic vs quadrature of |psi|^2", dwell, 1e-9));
  {
    const double q = std::sqrt(2.0);
    const rect::BarrierSpec s{1.0, 2.0, 0.0, 20.0 / q};
    const double d = rect::dwell_time(s, rect::solve(s));
    checks.push_back(assertion("dwell time at kappa w = 20 vs opaque limit 0.5",
                               rel_diff(d, rect::dwell_time_opaque_limit(s)), 1e-2));
  }

  for (const auto& ref : reference::kTurningPoints) {
    const auto p = compute_point(cfg, ref.atom, ref.intensity_W_cm2);
    std::ostringstream name;
    name << "turning points " << atom::to_string(ref.atom) << " at " << ref.intensity_W_cm2
         << " W/cm2";
    double worst = std::numeric_limits<double>::quiet_NaN();
    std::ostringstream d;
    if (p.geometry) {
      const auto& g = *p.geometry;
      worst = std::max({rel_diff(g.eta_L, ref.eta_L), rel_diff(g.eta_I, ref.eta_I),
                        rel_diff(g.eta_R, ref.eta_R)});
      d << "eta_L " << g.eta_L << ", eta_I " << g.eta_I << ", eta_R " << g.eta_R;
    } else {
      d << p.status;
    }
    checks.push_back(assertion(name.str(), worst, 1e-3, d.str()));
  }

  for (const auto& ref : reference::kKrTimes) {
    const auto p = compute_point(cfg, atom::Atom::Kr, ref.intensity_W_cm2);
    std::ostringstream name, d;
    name << "Kr travel time at " << ref.intensity_W_cm2 << " W/cm2 vs " << ref.qtt_as << " as";
    d << p.qtt_as << " as";
    checks.push_back(assertion(name.str(), std::abs(p.qtt_as - ref.qtt_as), 5.0, d.str()));
  }

  {
    atom::LaserSpec laser = cfg.laser;
    laser.intensity_W_cm2 = 1.08e14;
    const auto model = atom::make_model(atom::Atom::He, laser, cfg.field_convention, cfg.separation_ip);
    const auto g = wkb::locate_barrier(model);
    const wkb::TunnelingSolver solver(model, g);
    double worst = 0.0;
    for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double eta = g.eta_I + f * (g.eta_R - g.eta_I);
      worst = std::max(worst, rel_diff(solver.integrand(eta), wkb::region2_integrand(model, g, eta)));
    }
    checks.push_back(
        assertion("barrier integrand, tabulated vs nested quadrature (He, 1.08e14)", worst, 1e-6));

    const auto tr = wkb::qtt_trajectory(model, g, 2.0 * g.eta_R, 121);
    std::ostringstream d;
    d << "slope ratio " << tr.slope_right / tr.slope_left;
    checks.push_back(assertion("trajectory jump at eta_R relative to 2x tolerance (He, 1.08e14)",
                               std::abs(tr.boundary_jump()) / (2.0 * tr.tolerance), 1.0, d.str()));
  }

  {
    atom::LaserSpec lo = cfg.laser, hi = cfg.laser;
    lo.intensity_W_cm2 = 1.08e14;
    hi.intensity_W_cm2 = 6.12e14;
    const double e_lo = atom::peak_field(lo, cfg.field_convention);
    const double e_hi = atom::peak_field(hi, cfg.field_convention);
    const double outside = std::max({0.0, 0.040 - e_lo, e_hi - 0.102});
    std::ostringstream d;
    d << "E0 from " << e_lo << " to " << e_hi << " a.u.";
    checks.push_back(assertion("peak field range inside [0.040, 0.102] a.u.", outside, 0.0, d.str()));
  }

  {
    ExperimentConfig other = cfg;
    other.separation_ip = cfg.separation_ip == atom::SeparationIp::stark_shifted
                              ? atom::SeparationIp::field_free
                              : atom::SeparationIp::stark_shifted;
    const auto a = compute_point(cfg, atom::Atom::Kr, 6.12e14);
    const auto b = compute_point(other, atom::Atom::Kr, 6.12e14);
    std::ostringstream d;
    d << a.qtt_as << " as vs " << b.qtt_as << " as with the other Ip in the separation term";
    checks.push_back(measurement("Kr 6.12e14 travel-time sensitivity to the separation Ip",
                                 rel_diff(b.qtt_as, a.qtt_as), d.str()));
  }
  return checks;
}

FigureTable validation_table(const std::vector<Check>& checks) {
  FigureTable t("validation",
                {Column::label("check"), Column::number("measured", Unit::dimensionless),
                 Column::number("tolerance", Unit::dimensionless), Column::label("verdict"),
                 Column::label("detail")},
                "cross-checks between independent routes; measured values are discrepancies "
                "in the unit of the quantity compared");
  for (const auto& c : checks) {
    t.add_row({c.name, c.measured, c.tolerance,
               std::string(c.measurement_only ? "measured" : (c.passed ? "pass" : "FAIL")),
               c.detail});
  }
  return t;
}

} // namespace qtt::report
