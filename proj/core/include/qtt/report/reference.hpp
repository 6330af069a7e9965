#pragma once

#include <array>

#include "qtt/atomic_model.hpp"

namespace qtt::report::reference {

struct TurningPoints {
  atom::Atom atom;
  double intensity_W_cm2;
  double eta_L;
  double eta_I;
  double eta_R;
};

/// Published turning points and barrier maxima at zeta = 0.85.
inline constexpr std::array<TurningPoints, 6> kTurningPoints{{
    {atom::Atom::He, 1.08e14, 1.5358, 6.2307, 42.0210},
    {atom::Atom::Ar, 1.08e14, 4.2036, 8.5492, 25.9824},
    {atom::Atom::Kr, 1.08e14, 5.0274, 9.1864, 22.7422},
    {atom::Atom::He, 6.12e14, 1.5477, 4.3271, 17.2830},
    {atom::Atom::Ar, 6.12e14, 4.2493, 6.3563, 10.5383},
    {atom::Atom::Kr, 6.12e14, 5.2817, 6.8643, 9.2879},
}};

struct KrTime {
  double intensity_W_cm2;
  double qtt_as;        ///< published travel time
  double phase_time_as; ///< literature phase time, carried for comparison only
};

inline constexpr std::array<KrTime, 3> kKrTimes{{
    {1.08e14, 133.0, 138.0},
    {1.7e14, 116.0, 126.0},
    {6.12e14, 68.0, 64.0},
}};

} // namespace qtt::report::reference
