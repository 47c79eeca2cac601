#pragma once

// Sweep configuration: a flat `key = value` text format.
//
//   # comment
//   sensor        = free | cavity
//   M             = 1e-19          # kg
//   omega0        = 6.283e9        # rad/s   (or freq0 in Hz)
//   Q             = 1e7
//   delta_f       = 1e3            # Hz
//   E_d           = 1.6e-15        # J
//   L             = 1e-3           # m, cavity only
//   lambda_laser  = 810e-9         # m, cavity only
//   finesse       = 5              # cavity only
//   P_in          = 1e-3           # W, cavity only
//   Delta_eff     = 6.283e9        # rad/s, cavity only; or Delta_over_omega0 / bare_detuning
//   sweep_axis    = temperature | power | finesse | omega0
//   grid          = 0, 0.001, 0.01 # explicit values, or grid_min/grid_max/grid_points/grid_spacing
//   temperature   = 0              # K, fixed bath temperature when the axis is not temperature
//   method        = lorentzian | quadrature | narrowband
//   include_classical = false      # free sensor only
//   output_path   = free_1ghz.csv
//   output_format = csv | json

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nanomass/constants.hpp"
#include "nanomass/error.hpp"
#include "nanomass/noise.hpp"
#include "nanomass/params.hpp"

namespace nanomass::sweep {

enum class SensorKind { free, cavity };
enum class SweepAxis { temperature, power, finesse, omega0 };
enum class OutputFormat { csv, json };

constexpr std::string_view to_string(SensorKind s) { return s == SensorKind::free ? "free" : "cavity"; }

constexpr std::string_view to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::temperature: return "temperature";
    case SweepAxis::power: return "power";
    case SweepAxis::finesse: return "finesse";
    case SweepAxis::omega0: return "omega0";
  }
  return "unknown";
}

constexpr std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

struct SweepConfig {
  SensorKind sensor = SensorKind::free;
  CavityParams params;                    // only params.base is meaningful for the free sensor
  std::optional<double> detuning_ratio;   // Delta / omega0 when given that way; tracks omega0 sweeps
  SweepAxis axis = SweepAxis::temperature;
  std::vector<double> grid;
  double temperature = 0.0;
  BandIntegralMethod method = BandIntegralMethod::lorentzian_closed_form;
  bool include_classical = false;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

inline constexpr std::size_t default_temperature_points = 50;
inline constexpr double default_temperature_min = 1e-3;
inline constexpr double default_temperature_max = 25.0;

/// Logarithmic grid of `count` points over [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.back() = hi;
  return g;
}

inline std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return g;
}

/// Temperature grid: T = 0 followed by count - 1 log-spaced points.
inline std::vector<double> temperature_grid(double lo, double hi, std::size_t count) {
  std::vector<double> g{0.0};
  if (count > 1) {
    auto rest = log_grid(lo, hi, count - 1);
    g.insert(g.end(), rest.begin(), rest.end());
  }
  return g;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Entry {
  std::string value;
  int line = 0;
};

inline Error parse_error(int line, const std::string& key, const std::string& what) {
  return Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + what, key);
}

inline double parse_number(const Entry& e, const std::string& key) {
  std::string_view v = trim(e.value);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw parse_error(e.line, key, "'" + key + "' expects a number, got '" + std::string(v) + "'");
  return out;
}

inline std::vector<double> parse_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    out.push_back(parse_number(Entry{token, e.line}, key));
    token.clear();
  };
  for (char ch : e.value) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) flush();
    else token.push_back(ch);
  }
  flush();
  if (out.empty()) throw parse_error(e.line, key, "'" + key + "' is an empty list");
  return out;
}

inline bool parse_bool(const Entry& e, const std::string& key) {
  const auto v = trim(e.value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw parse_error(e.line, key, "'" + key + "' expects true or false");
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "sensor", "M", "omega0", "freq0", "Q", "delta_f", "E_d", "L", "lambda_laser", "finesse", "P_in",
      "Delta_eff", "Delta_over_omega0", "bare_detuning", "sweep_axis", "grid", "grid_min", "grid_max",
      "grid_points", "grid_spacing", "temperature", "method", "include_classical", "output_path",
      "output_format"};
  return keys;
}

}  // namespace detail

inline BandIntegralMethod parse_method(std::string_view v) {
  if (v == "quadrature") return BandIntegralMethod::quadrature;
  if (v == "lorentzian") return BandIntegralMethod::lorentzian_closed_form;
  if (v == "narrowband") return BandIntegralMethod::narrow_band;
  throw Error(ErrorKind::parse_error, "unknown method '" + std::string(v) + "' (quadrature|lorentzian|narrowband)",
              "method");
}

inline OutputFormat parse_format(std::string_view v) {
  if (v == "csv") return OutputFormat::csv;
  if (v == "json") return OutputFormat::json;
  throw Error(ErrorKind::parse_error, "unknown output format '" + std::string(v) + "' (csv|json)", "output_format");
}

/// Parses and validates a sweep configuration. `expected` fixes the sensor
/// kind when the caller (a CLI subcommand) already knows it.
inline SweepConfig parse_config(std::string_view text, std::optional<SensorKind> expected = std::nullopt) {
  using detail::Entry;
  std::map<std::string, Entry> entries;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw detail::parse_error(line_no, "", "expected 'key = value', got '" + std::string(line) + "'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (!detail::known_keys().contains(key)) throw detail::parse_error(line_no, key, "unknown key '" + key + "'");
    if (value.empty()) throw detail::parse_error(line_no, key, "missing value for '" + key + "'");
    if (entries.contains(key)) throw detail::parse_error(line_no, key, "duplicate key '" + key + "'");
    entries.emplace(key, Entry{value, line_no});
  }

  auto has = [&](const char* k) { return entries.contains(k); };
  auto number = [&](const char* k) { return detail::parse_number(entries.at(k), k); };
  auto text_of = [&](const char* k) { return std::string(detail::trim(entries.at(k).value)); };
  auto require = [&](const char* k) {
    if (!has(k)) throw Error(ErrorKind::parse_error, "missing required key '" + std::string(k) + "'", k);
  };

  SweepConfig cfg;

  if (has("sensor")) {
    const auto s = text_of("sensor");
    if (s == "free") cfg.sensor = SensorKind::free;
    else if (s == "cavity") cfg.sensor = SensorKind::cavity;
    else throw detail::parse_error(entries.at("sensor").line, "sensor", "sensor must be free or cavity");
    if (expected && *expected != cfg.sensor)
      throw Error(ErrorKind::validation_error,
                  "config describes a " + s + " sensor but a " + std::string(to_string(*expected)) +
                      " sensor was requested",
                  "sensor");
  } else if (expected) {
    cfg.sensor = *expected;
  } else {
    throw Error(ErrorKind::parse_error, "missing required key 'sensor'", "sensor");
  }
  const bool cavity = cfg.sensor == SensorKind::cavity;

  for (const char* k : {"L", "lambda_laser", "finesse", "P_in", "Delta_eff", "Delta_over_omega0", "bare_detuning"})
    if (!cavity && has(k))
      throw detail::parse_error(entries.at(k).line, k, "'" + std::string(k) + "' applies only to the cavity sensor");
  if (cavity && has("include_classical"))
    throw detail::parse_error(entries.at("include_classical").line, "include_classical",
                              "'include_classical' applies only to the free sensor");

  for (const char* k : {"M", "Q", "delta_f", "E_d"}) require(k);
  if (has("omega0") == has("freq0"))
    throw Error(ErrorKind::parse_error, "exactly one of 'omega0' (rad/s) or 'freq0' (Hz) is required", "omega0");

  auto& base = cfg.params.base;
  base.mass = number("M");
  base.omega0 = has("omega0") ? number("omega0") : constants::two_pi * number("freq0");
  base.q_factor = number("Q");
  base.bandwidth = number("delta_f");
  base.drive_energy = number("E_d");

  if (cavity) {
    for (const char* k : {"L", "lambda_laser", "finesse", "P_in"}) require(k);
    cfg.params.cavity_length = number("L");
    cfg.params.wavelength = number("lambda_laser");
    cfg.params.finesse = number("finesse");
    cfg.params.input_power = number("P_in");
    const int detuning_keys = has("Delta_eff") + has("Delta_over_omega0") + has("bare_detuning");
    if (detuning_keys != 1)
      throw Error(ErrorKind::parse_error,
                  "exactly one of 'Delta_eff', 'Delta_over_omega0' or 'bare_detuning' is required", "Delta_eff");
    if (has("Delta_eff")) {
      cfg.params.detuning = number("Delta_eff");
    } else if (has("Delta_over_omega0")) {
      cfg.detuning_ratio = number("Delta_over_omega0");
      cfg.params.detuning = *cfg.detuning_ratio * base.omega0;
    } else {
      cfg.params.detuning = number("bare_detuning");
      cfg.params.detuning_mode = DetuningMode::bare;
    }
  }

  try {
    if (cavity) cfg.params = validate_cavity_params(cfg.params);
    else cfg.params.base = validate_free_params(cfg.params.base);
  } catch (const Error& e) {
    throw Error(ErrorKind::validation_error, e.what(), e.field());
  }

  if (has("sweep_axis")) {
    const auto a = text_of("sweep_axis");
    if (a == "temperature") cfg.axis = SweepAxis::temperature;
    else if (a == "power") cfg.axis = SweepAxis::power;
    else if (a == "finesse") cfg.axis = SweepAxis::finesse;
    else if (a == "omega0") cfg.axis = SweepAxis::omega0;
    else throw detail::parse_error(entries.at("sweep_axis").line, "sweep_axis", "unknown sweep axis '" + a + "'");
  }
  if (!cavity && (cfg.axis == SweepAxis::power || cfg.axis == SweepAxis::finesse))
    throw Error(ErrorKind::validation_error, "free sensor sweeps support only temperature and omega0", "sweep_axis");

  const bool range_keys = has("grid_min") || has("grid_max") || has("grid_points") || has("grid_spacing");
  if (has("grid") && range_keys)
    throw Error(ErrorKind::parse_error, "give either 'grid' or the grid_min/grid_max/grid_points range", "grid");
  if (has("grid")) {
    cfg.grid = detail::parse_list(entries.at("grid"), "grid");
  } else if (range_keys) {
    for (const char* k : {"grid_min", "grid_max", "grid_points"}) require(k);
    const double lo = number("grid_min");
    const double hi = number("grid_max");
    const double n = number("grid_points");
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e6)
      throw Error(ErrorKind::validation_error, "grid_points must be a positive integer", "grid_points");
    const auto count = static_cast<std::size_t>(n);
    const std::string spacing = has("grid_spacing") ? text_of("grid_spacing") : "log";
    if (spacing != "log" && spacing != "linear")
      throw Error(ErrorKind::parse_error, "grid_spacing must be log or linear", "grid_spacing");
    if (!(lo > 0.0) || !(hi > lo))
      throw Error(ErrorKind::validation_error, "grid range needs 0 < grid_min < grid_max", "grid_min");
    if (spacing == "linear") cfg.grid = linear_grid(lo, hi, count);
    else if (cfg.axis == SweepAxis::temperature) cfg.grid = temperature_grid(lo, hi, count);
    else cfg.grid = log_grid(lo, hi, count);
  } else if (cfg.axis == SweepAxis::temperature) {
    cfg.grid = temperature_grid(default_temperature_min, default_temperature_max, default_temperature_points);
  } else {
    throw Error(ErrorKind::parse_error, "a grid is required for the " + std::string(to_string(cfg.axis)) + " axis",
                "grid");
  }

  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    const double v = cfg.grid[i];
    const bool ok = cfg.axis == SweepAxis::temperature || cfg.axis == SweepAxis::power ? v >= 0.0 : v > 0.0;
    if (!ok) throw Error(ErrorKind::validation_error, "grid value out of range for this axis", "grid");
    if (i > 0 && !(v > cfg.grid[i - 1]))
      throw Error(ErrorKind::validation_error, "grid must be strictly increasing", "grid");
  }

  if (has("temperature")) {
    cfg.temperature = number("temperature");
    if (!(cfg.temperature >= 0.0))
      throw Error(ErrorKind::validation_error, "temperature must be non-negative", "temperature");
  }
  if (has("method")) cfg.method = parse_method(text_of("method"));
  if (has("include_classical")) cfg.include_classical = detail::parse_bool(entries.at("include_classical"), "include_classical");
  if (has("output_path")) cfg.output_path = text_of("output_path");
  if (has("output_format")) cfg.format = parse_format(text_of("output_format"));
  return cfg;
}

/// Writes a config back in the same format; parse_config of the result
/// reproduces `cfg`. Grids are always written out explicitly.
inline std::string format_config(const SweepConfig& cfg) {
  using detail::format_double;
  std::string out;
  auto put = [&](std::string_view key, const std::string& value) {
    out.append(key).append(" = ").append(value).push_back('\n');
  };
  const auto& b = cfg.params.base;
  put("sensor", std::string(to_string(cfg.sensor)));
  put("M", format_double(b.mass));
  put("omega0", format_double(b.omega0));
  put("Q", format_double(b.q_factor));
  put("delta_f", format_double(b.bandwidth));
  put("E_d", format_double(b.drive_energy));
  if (cfg.sensor == SensorKind::cavity) {
    put("L", format_double(cfg.params.cavity_length));
    put("lambda_laser", format_double(cfg.params.wavelength));
    put("finesse", format_double(cfg.params.finesse));
    put("P_in", format_double(cfg.params.input_power));
    if (cfg.detuning_ratio) put("Delta_over_omega0", format_double(*cfg.detuning_ratio));
    else if (cfg.params.detuning_mode == DetuningMode::bare) put("bare_detuning", format_double(cfg.params.detuning));
    else put("Delta_eff", format_double(cfg.params.detuning));
  }
  put("sweep_axis", std::string(to_string(cfg.axis)));
  std::string grid;
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    if (i) grid += ", ";
    grid += format_double(cfg.grid[i]);
  }
  put("grid", grid);
  put("temperature", format_double(cfg.temperature));
  put("method", std::string(to_string(cfg.method)));
  if (cfg.sensor == SensorKind::free) put("include_classical", cfg.include_classical ? "true" : "false");
  if (!cfg.output_path.empty()) put("output_path", cfg.output_path);
  put("output_format", std::string(to_string(cfg.format)));
  return out;
}

}  // namespace nanomass::sweep
