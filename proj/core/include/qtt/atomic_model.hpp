#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace qtt::atom {

enum class Atom { He, Ar, Kr };

std::string_view to_string(Atom atom) noexcept;
std::optional<Atom> parse_atom(std::string_view name) noexcept;

/// Single-active-electron screening and polarisability data for one atom.
struct AtomSpec {
  Atom name;
  int Z;
  double A;
  double B;
  double C;
  double Ip0;     ///< field-free ionisation potential, Hartree
  double alpha_N; ///< static polarisability of the neutral atom
  double alpha_I; ///< static polarisability of the ion
};

/// Tabulated rows for He, Ar and Kr.
const AtomSpec& atom_spec(Atom atom) noexcept;
std::span<const Atom> supported_atoms() noexcept;

struct LaserSpec {
  double intensity_W_cm2 = 1.08e14;
  double ellipticity = 0.85;
  double omega = 0.035;    ///< carrier frequency, a.u.; carried, not used
  double tau_fs = 156.0;   ///< envelope period; carried, not used
};

/// How the peak field follows from intensity and ellipticity.
///  - divide:   E0 = sqrt(I / (1 + zeta^2)), which spans 0.042-0.101 a.u. over
///              1.08-6.12e14 W/cm^2.
///  - multiply: E0 = sqrt(I (1 + zeta^2)), kept only for comparison.
enum class FieldConvention { divide, multiply };

double peak_field(const LaserSpec& laser, FieldConvention convention = FieldConvention::divide);

/// Phi(r) = A e^{-B r} + (Z - 1 - A) e^{-C r}.
double screening(const AtomSpec& atom, double r);
double screening_derivative(const AtomSpec& atom, double r);

/// Ip = Ip0 + (alpha_N - alpha_I) E0^2 / 2.
double stark_ip(const AtomSpec& atom, double E0);

/// Which ionisation potential enters the sqrt(2 Ip) / (4 eta) separation term.
enum class SeparationIp { stark_shifted, field_free };

/// Atom in a static field E0: the one-dimensional equation along the
/// parabolic coordinate eta with energy -Ip/4.
class EffectiveModel {
public:
  EffectiveModel(const AtomSpec& atom, double E0,
                 SeparationIp separation = SeparationIp::stark_shifted);
  /// Checks that Ip is the Stark-shifted value for E0 (InvalidArgument if not).
  EffectiveModel(const AtomSpec& atom, double E0, double Ip,
                 SeparationIp separation = SeparationIp::stark_shifted);

  const AtomSpec& atom() const noexcept { return atom_; }
  double E0() const noexcept { return E0_; }
  double Ip() const noexcept { return Ip_; }
  /// Energy of the eta motion, -Ip/4.
  double energy() const noexcept { return -0.25 * Ip_; }
  SeparationIp separation() const noexcept { return separation_; }
  double separation_ip() const noexcept;

private:
  AtomSpec atom_;
  double E0_;
  double Ip_;
  SeparationIp separation_;
};

EffectiveModel make_model(Atom atom, const LaserSpec& laser,
                          FieldConvention convention = FieldConvention::divide,
                          SeparationIp separation = SeparationIp::stark_shifted);

/// V_eff(eta) = -1/(8 eta^2) - 1/(2 eta) - Phi(eta/2)/(2 eta) + alpha_I E0/eta^2
///              - E0 eta / 8 + sqrt(2 Ip)/(4 eta)
double v_eff(const EffectiveModel& model, double eta);

/// Analytic dV_eff/deta.
double v_eff_prime(const EffectiveModel& model, double eta);

} // namespace qtt::atom
