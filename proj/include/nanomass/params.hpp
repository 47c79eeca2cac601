#pragma once

#include <cmath>
#include <string>

#include "nanomass/constants.hpp"
#include "nanomass/error.hpp"

namespace nanomass {

/// Free driven cantilever. All fields SI: mass in kg, omega0 in rad/s,
/// bandwidth in Hz (ordinary frequency), drive_energy in J.
struct FreeSensorParams {
  double mass = 0.0;
  double omega0 = 0.0;
  double q_factor = 0.0;
  double bandwidth = 0.0;
  double drive_energy = 0.0;

  // Populated by validate_free_params.
  double mechanical_damping = 0.0;  // gamma_c = omega0 / Q
  bool narrow_band = false;         // 2 pi bandwidth < 0.01 omega0 / Q

  friend bool operator==(const FreeSensorParams&, const FreeSensorParams&) = default;
};

enum class DetuningMode {
  effective,  // detuning is the effective cavity detuning Delta
  bare,       // detuning is the bare laser-cavity detuning delta
};

struct CavityParams {
  FreeSensorParams base;
  double cavity_length = 0.0;   // m
  double wavelength = 0.0;      // m
  double finesse = 0.0;
  double input_power = 0.0;     // W
  double detuning = 0.0;        // rad/s
  DetuningMode detuning_mode = DetuningMode::effective;

  friend bool operator==(const CavityParams&, const CavityParams&) = default;
};

struct CavityDerived {
  double omega_laser = 0.0;  // 2 pi c / lambda
  double linewidth = 0.0;    // gamma = pi c / (L F), FWHM energy decay rate
  double coupling = 0.0;     // g = (omega_l / L) sqrt(hbar / (M omega0))
  double input_flux = 0.0;   // |alpha_in|^2 = P / (hbar omega_l), photons per second
};

namespace detail {

inline void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(ErrorKind::non_positive_parameter, std::string(field) + " must be positive and finite", field);
}

}  // namespace detail

inline FreeSensorParams validate_free_params(FreeSensorParams p) {
  detail::require_positive(p.mass, "M");
  detail::require_positive(p.omega0, "omega0");
  detail::require_positive(p.q_factor, "Q");
  detail::require_positive(p.bandwidth, "delta_f");
  detail::require_positive(p.drive_energy, "E_d");
  if (!(p.q_factor > 1.0)) throw Error(ErrorKind::q_too_small, "Q must exceed 1 (high-Q analysis)", "Q");

  p.mechanical_damping = p.omega0 / p.q_factor;
  p.narrow_band = constants::two_pi * p.bandwidth < 0.01 * p.omega0 / p.q_factor;
  return p;
}

inline CavityParams validate_cavity_params(CavityParams p) {
  p.base = validate_free_params(p.base);
  detail::require_positive(p.cavity_length, "L");
  detail::require_positive(p.wavelength, "lambda_laser");
  detail::require_positive(p.finesse, "finesse");
  if (!(p.input_power >= 0.0) || !std::isfinite(p.input_power))
    throw Error(ErrorKind::non_positive_parameter, "P_in must be non-negative and finite", "P_in");
  if (!std::isfinite(p.detuning)) throw Error(ErrorKind::validation_error, "detuning must be finite", "Delta_eff");
  return p;
}

inline CavityDerived derive_cavity_quantities(const CavityParams& p) {
  CavityDerived d;
  d.omega_laser = constants::two_pi * constants::c / p.wavelength;
  d.linewidth = constants::pi * constants::c / (p.cavity_length * p.finesse);
  d.coupling = (d.omega_laser / p.cavity_length) * std::sqrt(constants::hbar / (p.base.mass * p.base.omega0));
  d.input_flux = p.input_power / (constants::hbar * d.omega_laser);
  return d;
}

}  // namespace nanomass
