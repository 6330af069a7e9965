#include "qtt/units.hpp"

#include <string>

#include "qtt/error.hpp"

namespace qtt {

namespace {

enum class Dimension { time, field, intensity, energy, length, none };

struct UnitInfo {
  Dimension dimension;
  double scale; // size of one unit expressed in the dimension's reference unit
};

// Reference units: attosecond, atomic field, W/cm^2, Hartree, bohr.
UnitInfo info(Unit unit) {
  switch (unit) {
  case Unit::atomic_time: return {Dimension::time, constants::attoseconds_per_atomic_time};
  case Unit::attosecond: return {Dimension::time, 1.0};
  case Unit::femtosecond: return {Dimension::time, constants::attoseconds_per_femtosecond};
  case Unit::atomic_field: return {Dimension::field, 1.0};
  case Unit::W_per_cm2: return {Dimension::intensity, 1.0};
  case Unit::atomic_intensity: return {Dimension::intensity, constants::W_per_cm2_per_atomic_intensity};
  case Unit::atomic_energy: return {Dimension::energy, 1.0};
  case Unit::atomic_length: return {Dimension::length, 1.0};
  case Unit::dimensionless: return {Dimension::none, 1.0};
  }
  return {Dimension::none, 1.0};
}

} // namespace

std::string_view to_string(Unit unit) noexcept {
  switch (unit) {
  case Unit::atomic_time: return "au_time";
  case Unit::attosecond: return "as";
  case Unit::femtosecond: return "fs";
  case Unit::atomic_field: return "au_field";
  case Unit::W_per_cm2: return "W/cm2";
  case Unit::atomic_intensity: return "au_intensity";
  case Unit::atomic_energy: return "au_energy";
  case Unit::atomic_length: return "au_length";
  case Unit::dimensionless: return "1";
  }
  return "?";
}

std::optional<Unit> parse_unit(std::string_view text) noexcept {
  for (Unit u : {Unit::atomic_time, Unit::attosecond, Unit::femtosecond, Unit::atomic_field,
                 Unit::W_per_cm2, Unit::atomic_intensity, Unit::atomic_energy, Unit::atomic_length,
                 Unit::dimensionless}) {
    if (to_string(u) == text) return u;
  }
  return std::nullopt;
}

Quantity convert(Quantity q, Unit target) {
  const UnitInfo from = info(q.unit);
  const UnitInfo to = info(target);
  if (from.dimension != to.dimension) {
    throw Error(ErrorCode::IncompatibleUnits,
                "cannot convert " + std::string(to_string(q.unit)) + " to " +
                    std::string(to_string(target)));
  }
  if (q.unit == target) return q;
  return {q.value * from.scale / to.scale, target};
}

} // namespace qtt
