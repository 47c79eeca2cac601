#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nanomass/nanomass.hpp"

using namespace nanomass;
using namespace nanomass::sweep;

namespace {

const char* const minimal_free = R"(
sensor = free
M = 1e-19
freq0 = 1e9
Q = 1e7
delta_f = 1e3
E_d = 1.6e-15
)";

const char* const cavity_text = R"(
sensor = cavity
M = 5e-17
freq0 = 1e9
Q = 1e7
delta_f = 1e3
E_d = 1.6e-15
L = 1e-3
lambda_laser = 810e-9
finesse = 5
P_in = 1e-3
Delta_over_omega0 = 1
grid = 0, 1, 25
)";

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::io_error;
}

std::string read(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(ParseConfig, MinimalFreeUsesDefaults) {
  const auto cfg = parse_config(minimal_free);
  EXPECT_EQ(cfg.sensor, SensorKind::free);
  EXPECT_EQ(cfg.axis, SweepAxis::temperature);
  EXPECT_EQ(cfg.method, BandIntegralMethod::lorentzian_closed_form);
  EXPECT_EQ(cfg.format, OutputFormat::csv);
  EXPECT_FALSE(cfg.include_classical);
  ASSERT_EQ(cfg.grid.size(), 50u);
  EXPECT_EQ(cfg.grid.front(), 0.0);
  EXPECT_DOUBLE_EQ(cfg.grid[1], 1e-3);
  EXPECT_EQ(cfg.grid.back(), 25.0);
  EXPECT_NEAR(cfg.params.base.omega0, constants::two_pi * 1e9, 1e-6);
  EXPECT_NEAR(cfg.params.base.mechanical_damping, constants::two_pi * 100.0, 1e-9);
}

TEST(ParseConfig, ValidationErrorNamesField) {
  std::string text = minimal_free;
  text.replace(text.find("M = 1e-19"), 9, "M = -1");
  try {
    parse_config(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation_error);
    EXPECT_EQ(e.field(), "M");
    EXPECT_TRUE(e.is_config_error());
  }
}

TEST(ParseConfig, MisspelledKeyIsParseError) {
  std::string text = cavity_text;
  text.replace(text.find("finesse"), 7, "finessse");
  try {
    parse_config(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    EXPECT_NE(std::string(e.what()).find("finessse"), std::string::npos);
  }
}

TEST(ParseConfig, RejectsMalformedInput) {
  const std::string base = minimal_free;
  EXPECT_EQ(kind_of([&] { parse_config(base + "Q = 1e6\n"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([&] { parse_config(base + "this line has no equals\n"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([&] { parse_config(base + "L = 1e-3\n"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([&] { parse_config(base + "method = simpson\n"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([&] { parse_config(base + "Q = \n"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([&] { parse_config(base + "grid = 0, 2, 1\n"); }), ErrorKind::validation_error);
  EXPECT_EQ(kind_of([&] { parse_config(base + "grid = -1, 2\n"); }), ErrorKind::validation_error);
  EXPECT_EQ(kind_of([&] { parse_config(base + "sweep_axis = power\ngrid = 1, 2\n"); }),
            ErrorKind::validation_error);
  EXPECT_EQ(kind_of([&] { parse_config(base + "omega0 = 1e9\n"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([&] { parse_config(std::string(cavity_text) + "include_classical = true\n"); }),
            ErrorKind::parse_error);
  EXPECT_EQ(kind_of([&] { parse_config(minimal_free, SensorKind::cavity); }), ErrorKind::validation_error);
}

TEST(ParseConfig, CommentsAndWhitespace) {
  const auto a = parse_config(minimal_free);
  const auto b = parse_config(std::string("# header\n\n") + minimal_free + "   # trailing\n");
  EXPECT_EQ(a, b);
}

TEST(ParseConfig, DetuningRatioTracksOmega0Axis) {
  std::string text = cavity_text;
  text.replace(text.find("grid = 0, 1, 25"), 15, "sweep_axis = omega0\ngrid = 1e9, 2e9");
  const auto cfg = parse_config(text);
  ASSERT_TRUE(cfg.detuning_ratio);
  EXPECT_EQ(point_setup(cfg, 2e9).params.detuning, 2e9);
}

TEST(FormatConfig, RoundTrip) {
  for (const char* text : {minimal_free, cavity_text}) {
    auto cfg = parse_config(text);
    cfg.output_path = "out.csv";
    cfg.format = OutputFormat::json;
    const auto back = parse_config(format_config(cfg));
    EXPECT_EQ(back, cfg);
  }
}

TEST(Metadata, ParsesBackToConfig) {
  const auto cfg = parse_config(cavity_text);
  const auto meta = format_metadata(cfg, std::chrono::system_clock::time_point{});
  EXPECT_EQ(meta.rfind("# nanomass ", 0), 0u);
  EXPECT_NE(meta.find("# generated 1970-01-01T00:00:00Z"), std::string::npos);
  EXPECT_EQ(parse_config(meta), cfg);
}

TEST(RunSweep, CsvShapeAndValues) {
  const auto cfg = parse_config(cavity_text);
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 3u);
  const auto csv = format_csv(rows, cfg.axis);
  EXPECT_EQ(count_lines(csv), 4u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "axis,axis_value,curve,delta_M_kg,delta_M_display,display_unit,n_bar,E_noise_J,C11,stable,method,status");
  for (const auto& r : rows) {
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.delta_M_kg, 0.0);
    EXPECT_EQ(r.display_unit, "Da");
    EXPECT_GE(r.C11, 0.5);
  }
  EXPECT_NEAR(rows[0].C11, 2.983390204999411, 3e-6);
  EXPECT_EQ(rows[0].delta_M_kg, cavity_min_mass(cfg.params, 0.0).sensitivity.delta_mass);
}

TEST(RunSweep, JsonShape) {
  const auto cfg = parse_config(cavity_text);
  const auto json = nlohmann::json::parse(format_json(run_sweep(cfg), cfg.axis));
  ASSERT_TRUE(json.is_array());
  ASSERT_EQ(json.size(), 3u);
  for (const auto& o : json) {
    EXPECT_EQ(o.size(), csv_columns.size());
    EXPECT_EQ(o.at("curve"), "cavity");
    EXPECT_GT(o.at("delta_M_kg").get<double>(), 0.0);
  }
}

TEST(RunSweep, FreeSensorWithClassicalCurve) {
  auto cfg = parse_config(std::string(minimal_free) + "include_classical = true\ngrid = 0, 25\n");
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].curve, "quantum");
  EXPECT_EQ(rows[1].curve, "classical");
  EXPECT_EQ(rows[1].status, "zero_temperature_classical");
  EXPECT_TRUE(std::isnan(rows[1].delta_M_kg));
  EXPECT_TRUE(rows[2].ok());
  EXPECT_TRUE(rows[3].ok());
  EXPECT_EQ(rows[0].display_unit, "EMU");
  EXPECT_NEAR(rows[0].C11, 0.5, 1e-15);
  const auto csv = format_csv(rows, cfg.axis);
  EXPECT_NE(csv.find(",classical,,,,,,,"), std::string::npos);
}

TEST(RunSweep, DeterministicAndJobIndependent) {
  const auto cfg = parse_config(minimal_free);
  const auto a = format_csv(run_sweep(cfg), cfg.axis);
  const auto b = format_csv(run_sweep(cfg), cfg.axis);
  const auto c = format_csv(run_sweep(cfg, 8), cfg.axis);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(RunSweep, SinglePointEqualsDirectCall) {
  const auto cfg = parse_config(std::string(minimal_free) + "grid = 4.2\n");
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].delta_M_kg, min_detectable_mass(cfg.params.base, 4.2).delta_mass);
}

TEST(RunSweep, BistablePointsBecomeErrorRows) {
  auto cfg = parse_config(cavity_text);
  const double gamma = derive_cavity_quantities(cfg.params).linewidth;
  cfg.detuning_ratio.reset();
  cfg.params.detuning_mode = DetuningMode::bare;
  cfg.params.detuning = 3.0 * gamma;
  cfg.axis = SweepAxis::power;
  cfg.temperature = 0.0;
  cfg.grid = log_grid(1.0, 1e9, 31);
  const auto rows = run_sweep(cfg, 4);
  ASSERT_EQ(rows.size(), cfg.grid.size());
  int bistable = 0, ok = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].axis_value, cfg.grid[i]);
    if (rows[i].status == "bistable_regime") ++bistable;
    if (rows[i].ok()) ++ok;
  }
  EXPECT_GT(bistable, 0);
  EXPECT_GT(ok, 0);
}

TEST(Emit, WritesDataAndSidecar) {
  const auto dir = std::filesystem::temp_directory_path() / "nanomass_emit_test";
  std::filesystem::create_directories(dir);
  auto cfg = parse_config(cavity_text);
  cfg.output_path = (dir / "out.json").string();
  cfg.format = OutputFormat::json;
  const auto rows = run_sweep(cfg);
  emit(rows, cfg);
  EXPECT_EQ(nlohmann::json::parse(read(cfg.output_path)).size(), 3u);
  EXPECT_EQ(parse_config(read(metadata_path(cfg.output_path))), cfg);
  std::filesystem::remove_all(dir);
}

TEST(Emit, UnwritablePathIsIoError) {
  auto cfg = parse_config(cavity_text);
  cfg.output_path = "/nonexistent-dir/for/sure/out.csv";
  const auto rows = run_sweep(cfg);
  EXPECT_EQ(kind_of([&] { emit(rows, cfg); }), ErrorKind::io_error);
}
