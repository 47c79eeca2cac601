#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nanomass/constants.hpp"
#include "nanomass/detail/parallel.hpp"
#include "nanomass/error.hpp"
#include "nanomass/noise.hpp"
#include "nanomass/params.hpp"

namespace nanomass {

enum class Regime { quantum, crossover, classical };

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::quantum: return "quantum";
    case Regime::crossover: return "crossover";
    case Regime::classical: return "classical";
  }
  return "unknown";
}

inline Regime classify_regime(double n_bar) {
  if (n_bar < 0.1) return Regime::quantum;
  if (n_bar > 10.0) return Regime::classical;
  return Regime::crossover;
}

struct MassSensitivityResult {
  double delta_mass = 0.0;   // kg, magnitude
  double delta_omega = 0.0;  // rad/s
  double n_bar = 0.0;
  double E_noise = 0.0;      // J
  BandIntegralMethod method = BandIntegralMethod::lorentzian_closed_form;
  Regime regime = Regime::quantum;
  std::string warning;       // set when an approximation is used outside its validity range
};

/// dM/domega0 = -2M/omega0. Accreted mass lowers the resonance, hence the sign.
inline double mass_responsivity(const FreeSensorParams& p) { return -2.0 * p.mass / p.omega0; }

namespace detail {

inline MassSensitivityResult mass_from_noise_energy(const FreeSensorParams& p, double n_bar, double E_noise,
                                                    BandIntegralMethod method) {
  MassSensitivityResult r;
  r.n_bar = n_bar;
  r.E_noise = E_noise;
  r.method = method;
  r.regime = classify_regime(n_bar);
  r.delta_omega = band_frequency_noise(p, E_noise / p.drive_energy, method);
  r.delta_mass = std::abs(mass_responsivity(p)) * r.delta_omega;
  if (method == BandIntegralMethod::narrow_band && !p.narrow_band)
    r.warning = "narrow-band approximation used with 2*pi*delta_f >= 0.01*omega0/Q";
  return r;
}

}  // namespace detail

/// Minimum detectable mass at SNR = 1 for the quantum oscillator at bath
/// temperature T. Expects params already passed through validate_free_params.
inline MassSensitivityResult min_detectable_mass(const FreeSensorParams& p, double temperature,
                                                 BandIntegralMethod method = BandIntegralMethod::lorentzian_closed_form) {
  const ThermalState th = noise_energy(p.omega0, temperature);
  return detail::mass_from_noise_energy(p, th.n_bar, th.E_noise, method);
}

/// Same pipeline with the classical equipartition energy k_B T, which
/// vanishes as T -> 0.
inline MassSensitivityResult min_detectable_mass_classical(
    const FreeSensorParams& p, double temperature,
    BandIntegralMethod method = BandIntegralMethod::lorentzian_closed_form) {
  if (temperature < 0.0 || std::isnan(temperature))
    throw Error(ErrorKind::negative_temperature, "temperature must be non-negative", "T");
  if (temperature == 0.0)
    throw Error(ErrorKind::zero_temperature_classical, "classical noise energy vanishes at T = 0", "T");
  return detail::mass_from_noise_energy(p, bose_occupation(p.omega0, temperature), constants::k_B * temperature,
                                        method);
}

inline std::vector<MassSensitivityResult> sweep_temperature(
    const FreeSensorParams& p, std::span<const double> temperatures,
    BandIntegralMethod method = BandIntegralMethod::lorentzian_closed_form, unsigned jobs = 1) {
  if (temperatures.empty()) throw Error(ErrorKind::validation_error, "temperature grid is empty", "grid");
  for (double t : temperatures)
    if (t < 0.0 || std::isnan(t)) throw Error(ErrorKind::negative_temperature, "negative temperature in grid", "T");

  std::vector<MassSensitivityResult> out(temperatures.size());
  nanomass::detail::parallel_for(temperatures.size(), jobs,
                                 [&](std::size_t i) { out[i] = min_detectable_mass(p, temperatures[i], method); });
  return out;
}

}  // namespace nanomass
