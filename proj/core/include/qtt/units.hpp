#pragma once

#include <optional>
#include <string_view>

namespace qtt {

// All physics runs in atomic units (hbar = m_e = e = 1). Conversions happen
// only where numbers enter or leave the program.
enum class Unit {
  atomic_time,
  attosecond,
  femtosecond,
  atomic_field,
  W_per_cm2,
  atomic_intensity,
  atomic_energy,
  atomic_length,
  dimensionless,
};

std::string_view to_string(Unit unit) noexcept;
std::optional<Unit> parse_unit(std::string_view text) noexcept;

struct Quantity {
  double value = 0.0;
  Unit unit = Unit::dimensionless;
};

namespace constants {

/// hbar / E_h in attoseconds (CODATA 2018).
inline constexpr double attoseconds_per_atomic_time = 24.188843265857;
inline constexpr double attoseconds_per_femtosecond = 1000.0;
/// Atomic unit of intensity, eps0 c E_h^2 / (2 e^2 a0^2), in W/cm^2.
inline constexpr double W_per_cm2_per_atomic_intensity = 3.50944758e16;

inline constexpr double pi = 3.141592653589793238462643383279502884;

} // namespace constants

/// Throws Error(IncompatibleUnits) when the two units measure different things.
Quantity convert(Quantity q, Unit target);

inline double atomic_time_to_as(double t) {
  return t * constants::attoseconds_per_atomic_time;
}

inline double as_to_atomic_time(double t) {
  return t / constants::attoseconds_per_atomic_time;
}

inline double intensity_to_atomic(double w_per_cm2) {
  return w_per_cm2 / constants::W_per_cm2_per_atomic_intensity;
}

} // namespace qtt
