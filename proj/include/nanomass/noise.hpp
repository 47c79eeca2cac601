#pragma once

#include <cmath>
#include <string_view>

#include "nanomass/constants.hpp"
#include "nanomass/error.hpp"
#include "nanomass/numerics/quadrature.hpp"
#include "nanomass/params.hpp"

namespace nanomass {

struct ThermalState {
  double n_bar = 0.0;     // mean phonon number
  double E_noise = 0.0;   // J
};

/// How the band-limited frequency-noise integral is evaluated.
enum class BandIntegralMethod {
  quadrature,               // adaptive numeric integration, the reference
  lorentzian_closed_form,   // exact integral of the Q >> 1 Lorentzian
  narrow_band,              // band much narrower than the linewidth
};

constexpr std::string_view to_string(BandIntegralMethod m) {
  switch (m) {
    case BandIntegralMethod::quadrature: return "quadrature";
    case BandIntegralMethod::lorentzian_closed_form: return "lorentzian";
    case BandIntegralMethod::narrow_band: return "narrowband";
  }
  return "unknown";
}

inline double bose_occupation(double omega0, double temperature) {
  if (temperature < 0.0 || std::isnan(temperature))
    throw Error(ErrorKind::negative_temperature, "temperature must be non-negative", "T");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega0 / (constants::k_B * temperature);
  return 1.0 / std::expm1(x);
}

/// Thermal plus zero-point energy hbar omega0 (n + 1/2).
inline ThermalState noise_energy(double omega0, double temperature) {
  const double n = bose_occupation(omega0, temperature);
  return {n, constants::hbar * omega0 * (n + 0.5)};
}

/// One-sided displacement spectral density of the thermally driven
/// oscillator, m^2 s / rad.
inline double displacement_psd(double omega, const FreeSensorParams& p, double E_noise) {
  const double w0 = p.omega0;
  const double Q = p.q_factor;
  const double detune = (omega - w0) * (omega + w0);
  const double den = detune * detune + omega * omega * w0 * w0 / (Q * Q);
  return (2.0 * w0 / (p.mass * Q)) * E_noise / den;
}

/// Mean squared drive amplitude <q_d^2> = 2 E_d / (M omega0^2).
inline double drive_amplitude_sq(const FreeSensorParams& p) {
  return 2.0 * p.drive_energy / (p.mass * p.omega0 * p.omega0);
}

/// S_phi = (2 pi)^2 S_q / <q_d^2>.
inline double phase_noise_psd(double S_q, double q_drive_sq) {
  return constants::two_pi * constants::two_pi * S_q / q_drive_sq;
}

/// S_omega = omega0^2 S_phi / ((2 pi)^2 Q^2).
inline double frequency_noise_psd(double S_phi, const FreeSensorParams& p) {
  const double Q = p.q_factor;
  return p.omega0 * p.omega0 * S_phi / (constants::two_pi * constants::two_pi * Q * Q);
}

namespace detail {

// Integrand of the band integral in the relative offset u = (omega - omega0)/omega0,
// without the omega0 Jacobian. Avoids the cancellation in omega^2 - omega0^2.
inline double frequency_noise_integrand_offset(double u, double omega0, double Q, double E_ratio) {
  const double split = u * (2.0 + u);
  const double den = split * split + (1.0 + u) * (1.0 + u) / (Q * Q);
  return omega0 * E_ratio / (Q * Q * Q * den);
}

}  // namespace detail

/// Frequency-fluctuation spectral density in units of the drive energy:
/// (omega0^5 / Q^3) E_ratio / [(omega^2 - omega0^2)^2 + omega^2 omega0^2 / Q^2].
inline double frequency_noise_integrand(double omega, const FreeSensorParams& p, double E_ratio) {
  return detail::frequency_noise_integrand_offset((omega - p.omega0) / p.omega0, p.omega0, p.q_factor, E_ratio);
}

/// Integral of the frequency-noise density over [omega0 - pi df, omega0 + pi df]
/// by adaptive quadrature (rad^2/s^2).
inline numerics::QuadratureResult band_noise_integral(const FreeSensorParams& p, double E_ratio,
                                                      double rel_tol = 1e-9) {
  const double half_band = constants::pi * p.bandwidth / p.omega0;
  const double half_width = 0.5 / p.q_factor;
  numerics::QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  opts.breakpoints = {0.0};
  for (double k : {1.0, 10.0, 100.0}) {
    opts.breakpoints.push_back(-k * half_width);
    opts.breakpoints.push_back(k * half_width);
  }
  const double w0 = p.omega0;
  const double Q = p.q_factor;
  auto f = [w0, Q, E_ratio](double u) { return w0 * detail::frequency_noise_integrand_offset(u, w0, Q, E_ratio); };
  return numerics::integrate_adaptive(f, -half_band, half_band, opts);
}

/// Smallest detectable frequency shift: square root of the frequency-noise
/// power inside the ideal band-pass [omega0 - pi df, omega0 + pi df].
inline double band_frequency_noise(const FreeSensorParams& p, double E_ratio, BandIntegralMethod method) {
  if (!(p.omega0 > constants::pi * p.bandwidth))
    throw Error(ErrorKind::band_exceeds_domain, "band omega0 +/- pi*delta_f extends below zero frequency",
                "delta_f");
  if (!(E_ratio >= 0.0)) throw Error(ErrorKind::validation_error, "noise/drive energy ratio must be >= 0");

  const double w0 = p.omega0;
  const double Q = p.q_factor;
  switch (method) {
    case BandIntegralMethod::quadrature:
      return std::sqrt(band_noise_integral(p, E_ratio).value);
    case BandIntegralMethod::lorentzian_closed_form:
      return w0 / Q * std::sqrt(E_ratio * std::atan(constants::two_pi * Q * p.bandwidth / w0));
    case BandIntegralMethod::narrow_band:
      return std::sqrt(constants::two_pi * w0 * p.bandwidth * E_ratio / Q);
  }
  return 0.0;
}

}  // namespace nanomass
