#pragma once

#include <numbers>

namespace nanomass::constants {

// SI / CODATA 2018.
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_B = 1.380649e-23;           // J / K
inline constexpr double c = 2.99792458e8;             // m / s
inline constexpr double electron_mass = 9.1093837015e-31;  // kg, one EMU
inline constexpr double dalton = 1.66053906660e-27;   // kg, one Da

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace nanomass::constants

namespace nanomass {

inline constexpr double to_electron_masses(double kg) { return kg / constants::electron_mass; }
inline constexpr double to_daltons(double kg) { return kg / constants::dalton; }

}  // namespace nanomass
