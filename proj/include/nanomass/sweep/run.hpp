#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nanomass/cavity_sensor.hpp"
#include "nanomass/constants.hpp"
#include "nanomass/detail/parallel.hpp"
#include "nanomass/error.hpp"
#include "nanomass/free_sensor.hpp"
#include "nanomass/sweep/config.hpp"

namespace nanomass::sweep {

/// One emitted result line. Failed points keep their axis value and carry
/// the error kind in `status`; their numeric fields are NaN.
struct SweepRow {
  double axis_value = 0.0;
  std::string curve;          // quantum | classical | cavity
  double delta_M_kg = std::numeric_limits<double>::quiet_NaN();
  double delta_M_display = std::numeric_limits<double>::quiet_NaN();
  std::string display_unit;   // EMU | Da
  double n_bar = std::numeric_limits<double>::quiet_NaN();
  double E_noise_J = std::numeric_limits<double>::quiet_NaN();
  double C11 = std::numeric_limits<double>::quiet_NaN();
  bool stable = false;
  BandIntegralMethod method = BandIntegralMethod::lorentzian_closed_form;
  std::string status = "ok";
  std::string message;

  bool ok() const { return status == "ok"; }
};

struct PointSetup {
  CavityParams params;
  double temperature = 0.0;
};

/// Applies one grid value to the configured parameters and revalidates.
inline PointSetup point_setup(const SweepConfig& cfg, double axis_value) {
  PointSetup s{cfg.params, cfg.temperature};
  switch (cfg.axis) {
    case SweepAxis::temperature: s.temperature = axis_value; break;
    case SweepAxis::power: s.params.input_power = axis_value; break;
    case SweepAxis::finesse: s.params.finesse = axis_value; break;
    case SweepAxis::omega0:
      s.params.base.omega0 = axis_value;
      if (cfg.detuning_ratio) s.params.detuning = *cfg.detuning_ratio * axis_value;
      break;
  }
  if (cfg.sensor == SensorKind::cavity) s.params = validate_cavity_params(s.params);
  else s.params.base = validate_free_params(s.params.base);
  return s;
}

namespace detail {

inline SweepRow error_row(double axis_value, std::string curve, BandIntegralMethod method, const Error& e) {
  SweepRow r;
  r.axis_value = axis_value;
  r.curve = std::move(curve);
  r.method = method;
  r.status = std::string(to_string(e.kind()));
  r.message = e.what();
  return r;
}

inline SweepRow free_row(double axis_value, const char* curve, const FreeSensorParams& p,
                         const MassSensitivityResult& m) {
  SweepRow r;
  r.axis_value = axis_value;
  r.curve = curve;
  r.delta_M_kg = m.delta_mass;
  r.delta_M_display = to_electron_masses(m.delta_mass);
  r.display_unit = "EMU";
  r.n_bar = m.n_bar;
  r.E_noise_J = m.E_noise;
  r.C11 = m.E_noise / (constants::hbar * p.omega0);
  r.stable = true;
  r.method = m.method;
  return r;
}

// Rows for a single grid value, in emission order.
inline std::vector<SweepRow> evaluate_point(const SweepConfig& cfg, double axis_value) {
  std::vector<SweepRow> rows;
  const bool free = cfg.sensor == SensorKind::free;
  const char* primary = free ? "quantum" : "cavity";

  PointSetup setup;
  try {
    setup = point_setup(cfg, axis_value);
  } catch (const Error& e) {
    rows.push_back(error_row(axis_value, primary, cfg.method, e));
    if (free && cfg.include_classical) rows.push_back(error_row(axis_value, "classical", cfg.method, e));
    return rows;
  }

  if (free) {
    const auto& p = setup.params.base;
    try {
      rows.push_back(free_row(axis_value, "quantum", p, min_detectable_mass(p, setup.temperature, cfg.method)));
    } catch (const Error& e) {
      rows.push_back(error_row(axis_value, "quantum", cfg.method, e));
    }
    if (cfg.include_classical) {
      try {
        rows.push_back(
            free_row(axis_value, "classical", p, min_detectable_mass_classical(p, setup.temperature, cfg.method)));
      } catch (const Error& e) {
        rows.push_back(error_row(axis_value, "classical", cfg.method, e));
      }
    }
    return rows;
  }

  try {
    const auto res = cavity_min_mass(setup.params, setup.temperature, cfg.method);
    SweepRow r;
    r.axis_value = axis_value;
    r.curve = "cavity";
    r.delta_M_kg = res.sensitivity.delta_mass;
    r.delta_M_display = to_daltons(res.sensitivity.delta_mass);
    r.display_unit = "Da";
    r.n_bar = res.sensitivity.n_bar;
    r.E_noise_J = res.sensitivity.E_noise;
    r.C11 = res.correlations.q_variance;
    r.stable = true;
    r.method = cfg.method;
    rows.push_back(std::move(r));
  } catch (const Error& e) {
    rows.push_back(error_row(axis_value, "cavity", cfg.method, e));
  }
  return rows;
}

}  // namespace detail

/// Evaluates every grid point. Output order follows the grid regardless of
/// `jobs`; physics failures become error rows.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned jobs = 1) {
  if (cfg.grid.empty()) throw Error(ErrorKind::validation_error, "grid is empty", "grid");
  std::vector<std::vector<SweepRow>> per_point(cfg.grid.size());
  nanomass::detail::parallel_for(cfg.grid.size(), jobs,
                                 [&](std::size_t i) { per_point[i] = detail::evaluate_point(cfg, cfg.grid[i]); });
  std::vector<SweepRow> rows;
  for (auto& block : per_point)
    for (auto& r : block) rows.push_back(std::move(r));
  return rows;
}

}  // namespace nanomass::sweep
