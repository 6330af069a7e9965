#pragma once

#include <complex>

namespace qtt::rect {

/// Particle of energy E hitting a rectangular barrier of height V0 on
/// [x_left, x_right]. Units hbar = m = 1.
struct BarrierSpec {
  double energy = 1.0;
  double height = 2.0;
  double x_left = 0.0;
  double x_right = 1.0;

  double width() const noexcept { return x_right - x_left; }
  /// Momentum outside the barrier, sqrt(2E).
  double k() const;
  /// Decay constant inside the barrier, sqrt(2(V0 - E)).
  double kappa() const;
};

/// Throws DegenerateInput for E == V0 and InvalidArgument for any other
/// violation of 0 < E < V0, x_left < x_right.
void validate(const BarrierSpec& spec);

/// psi = A e^{ikx} + B e^{-ikx} (I), C e^{-kx} + D e^{kx} (II), e^{ikx} (III).
struct ScatteringSolution {
  std::complex<double> A;
  std::complex<double> B;
  std::complex<double> C;
  std::complex<double> D;
  double R = 0.0;
  double T = 1.0;
  double phi_AB = 0.0; ///< arg(A conj(B)) in (-pi, pi]
  double phi_CD = 0.0; ///< arg(C conj(D)) in (-pi, pi]
};

ScatteringSolution solve(const BarrierSpec& spec);

enum class Region { I, II, III };

Region region_of(const BarrierSpec& spec, double x) noexcept;

std::complex<double> wavefunction(const BarrierSpec& spec, const ScatteringSolution& sol, double x);
std::complex<double> wavefunction_derivative(const BarrierSpec& spec, const ScatteringSolution& sol,
                                             double x);

/// Im(conj(psi) psi'), the total probability current.
double total_current(const BarrierSpec& spec, const ScatteringSolution& sol, double x);

/// rho - rho_backward for the region containing x.
double density_minus_backward(const BarrierSpec& spec, const ScatteringSolution& sol, double x);

/// Forward (+x) probability current for the region containing x.
double forward_current(const BarrierSpec& spec, const ScatteringSolution& sol, double x);

enum class TimeMethod { closed_form, quadrature };

struct RegionTime {
  Region region;
  double from_x;
  double to_x;
  double time; ///< atomic time units
  TimeMethod method;
};

/// Travel time from x_tilde_left to x_left in front of the barrier.
///
/// The closed form sums 2d/k and the unwrapped arctan term, so it stays
/// continuous when k x + phi_AB / 2 crosses a tangent singularity. Near such
/// a point with R close to one the arctan is ill-conditioned; the closed form
/// then throws BranchDivergence and the quadrature route should be used.
RegionTime qtt_region_I(const BarrierSpec& spec, const ScatteringSolution& sol,
                        double x_tilde_left, TimeMethod method = TimeMethod::closed_form,
                        double rel_tol = 1e-10);

/// Both routes for the time spent crossing the barrier, split into the part
/// linear in the width and the part carrying sinh(kappa w) e^{kappa w}.
struct RegionIIBreakdown {
  double closed_linear;
  double closed_exponential;
  double quadrature_linear;
  double quadrature_exponential;

  double closed_total() const noexcept { return closed_linear + closed_exponential; }
  double quadrature_total() const noexcept { return quadrature_linear + quadrature_exponential; }
  /// quadrature_exponential / closed_exponential (2 for every barrier).
  double exponential_ratio() const noexcept { return quadrature_exponential / closed_exponential; }
};

RegionIIBreakdown qtt_region_II_breakdown(const BarrierSpec& spec, const ScatteringSolution& sol,
                                          double rel_tol = 1e-10);

/// Time from x_left to x_right. The closed form is the reference route for
/// figure reproduction; the quadrature route integrates density over current.
RegionTime qtt_region_II(const BarrierSpec& spec, const ScatteringSolution& sol,
                         TimeMethod method = TimeMethod::closed_form, double rel_tol = 1e-10);

/// Free flight from x_right to x_tilde_right: (x_tilde_right - x_right) / k.
RegionTime qtt_region_III(const BarrierSpec& spec, double x_tilde_right);

/// Smith dwell time: probability inside the barrier over the incident flux k|A|^2.
double dwell_time(const BarrierSpec& spec, const ScatteringSolution& sol);

/// Opaque-barrier limit of the dwell time, sqrt(E / (V0 - E)) / V0.
double dwell_time_opaque_limit(const BarrierSpec& spec);

} // namespace qtt::rect
