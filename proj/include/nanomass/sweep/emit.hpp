#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nanomass/error.hpp"
#include "nanomass/sweep/config.hpp"
#include "nanomass/sweep/run.hpp"
#include "nanomass/version.hpp"

namespace nanomass::sweep {

inline constexpr std::array<const char*, 12> csv_columns = {
    "axis", "axis_value", "curve", "delta_M_kg", "delta_M_display", "display_unit",
    "n_bar", "E_noise_J", "C11", "stable", "method", "status"};

namespace detail {

// Nine significant digits, scientific; empty for NaN.
inline std::string sci9(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

inline nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  return std::stod(sci9(v));
}

}  // namespace detail

inline std::string format_csv(std::span<const SweepRow> rows, SweepAxis axis) {
  std::string out;
  for (std::size_t i = 0; i < csv_columns.size(); ++i) {
    if (i) out += ',';
    out += csv_columns[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    out += to_string(axis);
    out += ',' + detail::sci9(r.axis_value);
    out += ',' + r.curve;
    out += ',' + detail::sci9(r.delta_M_kg);
    out += ',' + detail::sci9(r.delta_M_display);
    out += ',' + r.display_unit;
    out += ',' + detail::sci9(r.n_bar);
    out += ',' + detail::sci9(r.E_noise_J);
    out += ',' + detail::sci9(r.C11);
    out += r.stable ? ",true" : ",false";
    out += ',';
    out += to_string(r.method);
    out += ',' + r.status;
    out += '\n';
  }
  return out;
}

inline std::string format_json(std::span<const SweepRow> rows, SweepAxis axis) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o;
    o["axis"] = std::string(to_string(axis));
    o["axis_value"] = detail::json_number(r.axis_value);
    o["curve"] = r.curve;
    o["delta_M_kg"] = detail::json_number(r.delta_M_kg);
    o["delta_M_display"] = detail::json_number(r.delta_M_display);
    o["display_unit"] = r.display_unit;
    o["n_bar"] = detail::json_number(r.n_bar);
    o["E_noise_J"] = detail::json_number(r.E_noise_J);
    o["C11"] = detail::json_number(r.C11);
    o["stable"] = r.stable;
    o["method"] = std::string(to_string(r.method));
    o["status"] = r.status;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

/// Sidecar contents: version and timestamp as comments, then the full
/// configuration in parse_config format.
inline std::string format_metadata(const SweepConfig& cfg, std::chrono::system_clock::time_point when) {
  const std::time_t t = std::chrono::system_clock::to_time_t(when);
  std::tm utc{};
  gmtime_r(&t, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string("# nanomass ") + version + "\n# generated " + stamp + "\n" + format_config(cfg);
}

inline std::string metadata_path(const std::string& output_path) { return output_path + ".meta"; }

inline void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::io_error, "cannot open '" + path + "' for writing", path);
  f << contents;
  f.close();
  if (!f) throw Error(ErrorKind::io_error, "failed writing '" + path + "'", path);
}

/// Writes the data file at cfg.output_path in cfg.format plus the
/// metadata sidecar next to it.
inline void emit(std::span<const SweepRow> rows, const SweepConfig& cfg) {
  if (rows.empty()) throw Error(ErrorKind::validation_error, "no rows to emit");
  if (cfg.output_path.empty()) throw Error(ErrorKind::io_error, "no output path given", "output_path");
  write_text_file(cfg.output_path,
                  cfg.format == OutputFormat::csv ? format_csv(rows, cfg.axis) : format_json(rows, cfg.axis));
  write_text_file(metadata_path(cfg.output_path), format_metadata(cfg, std::chrono::system_clock::now()));
}

}  // namespace nanomass::sweep
