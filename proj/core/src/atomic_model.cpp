#include "qtt/atomic_model.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "qtt/error.hpp"
#include "qtt/units.hpp"

namespace qtt::atom {

namespace {

// Z, A, B, C, Ip0 (a.u.), alpha_N, alpha_I
constexpr std::array<AtomSpec, 3> kTable{{
    {Atom::He, 2, 0.0, 0.0, 2.134, 0.903, 1.38, 0.28},
    {Atom::Ar, 18, 5.4, 1.0, 3.682, 0.580, 11.1, 7.20},
    {Atom::Kr, 36, 6.42, 0.905, 4.2, 0.515, 16.7, 9.25},
}};

constexpr std::array<Atom, 3> kAtoms{Atom::He, Atom::Ar, Atom::Kr};

} // namespace

std::string_view to_string(Atom atom) noexcept {
  switch (atom) {
  case Atom::He: return "He";
  case Atom::Ar: return "Ar";
  case Atom::Kr: return "Kr";
  }
  return "?";
}

std::optional<Atom> parse_atom(std::string_view name) noexcept {
  for (Atom a : kAtoms) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

const AtomSpec& atom_spec(Atom atom) noexcept { return kTable[static_cast<std::size_t>(atom)]; }

std::span<const Atom> supported_atoms() noexcept { return kAtoms; }

double peak_field(const LaserSpec& laser, FieldConvention convention) {
  if (!(laser.intensity_W_cm2 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "laser intensity must be positive");
  }
  const double intensity = intensity_to_atomic(laser.intensity_W_cm2);
  const double factor = 1.0 + laser.ellipticity * laser.ellipticity;
  return convention == FieldConvention::divide ? std::sqrt(intensity / factor)
                                               : std::sqrt(intensity * factor);
}

double screening(const AtomSpec& atom, double r) {
  return atom.A * std::exp(-atom.B * r) + (atom.Z - 1 - atom.A) * std::exp(-atom.C * r);
}

double screening_derivative(const AtomSpec& atom, double r) {
  return -atom.A * atom.B * std::exp(-atom.B * r) -
         (atom.Z - 1 - atom.A) * atom.C * std::exp(-atom.C * r);
}

double stark_ip(const AtomSpec& atom, double E0) {
  return atom.Ip0 + 0.5 * (atom.alpha_N - atom.alpha_I) * E0 * E0;
}

EffectiveModel::EffectiveModel(const AtomSpec& atom, double E0, SeparationIp separation)
    : EffectiveModel(atom, E0, stark_ip(atom, E0), separation) {}

EffectiveModel::EffectiveModel(const AtomSpec& atom, double E0, double Ip,
                               SeparationIp separation)
    : atom_(atom), E0_(E0), Ip_(Ip), separation_(separation) {
  if (!(E0 >= 0.0) || !std::isfinite(E0)) {
    throw Error(ErrorCode::InvalidArgument, "peak field must be finite and non-negative");
  }
  const double expected = stark_ip(atom, E0);
  if (std::abs(Ip - expected) > 1e-12 * std::abs(expected)) {
    std::ostringstream msg;
    msg << "Ip = " << Ip << " is not the Stark-shifted value " << expected;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

double EffectiveModel::separation_ip() const noexcept {
  return separation_ == SeparationIp::stark_shifted ? Ip_ : atom_.Ip0;
}

EffectiveModel make_model(Atom atom, const LaserSpec& laser, FieldConvention convention,
                          SeparationIp separation) {
  return EffectiveModel(atom_spec(atom), peak_field(laser, convention), separation);
}

double v_eff(const EffectiveModel& model, double eta) {
  const AtomSpec& a = model.atom();
  const double E0 = model.E0();
  const double inv = 1.0 / eta;
  return -0.125 * inv * inv - 0.5 * inv - 0.5 * screening(a, 0.5 * eta) * inv +
         a.alpha_I * E0 * inv * inv - 0.125 * E0 * eta +
         0.25 * std::sqrt(2.0 * model.separation_ip()) * inv;
}

double v_eff_prime(const EffectiveModel& model, double eta) {
  const AtomSpec& a = model.atom();
  const double E0 = model.E0();
  const double inv = 1.0 / eta;
  const double inv2 = inv * inv;
  const double r = 0.5 * eta;
  return 0.25 * inv2 * inv + 0.5 * inv2 + 0.5 * screening(a, r) * inv2 -
         0.25 * screening_derivative(a, r) * inv - 2.0 * a.alpha_I * E0 * inv2 * inv -
         0.125 * E0 - 0.25 * std::sqrt(2.0 * model.separation_ip()) * inv2;
}

} // namespace qtt::atom
