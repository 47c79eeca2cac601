// nanomass command-line driver.
//
//   nanomass free-sweep   --config free_1ghz.cfg [--output out.csv] [--format csv|json] [--method ...] [--jobs N]
//   nanomass cavity-sweep --config cavity.cfg ...
//   nanomass point        --config any.cfg [--temperature T]
//   nanomass stability    --config cavity.cfg
//
// Exit codes: 0 success, 2 config error, 3 physics error on every grid
// point (or an unstable drift matrix for `stability`), 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nanomass/nanomass.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_physics = 3;
constexpr int exit_io = 4;

struct Options {
  std::string config_path;
  std::string output;
  std::string format;
  std::string method;
  unsigned jobs = 1;
  std::optional<double> temperature;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw nanomass::Error(nanomass::ErrorKind::io_error, "cannot read config '" + path + "'", path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nanomass::sweep::SweepConfig load_config(const Options& opt, std::optional<nanomass::sweep::SensorKind> kind) {
  using namespace nanomass::sweep;
  auto cfg = parse_config(read_file(opt.config_path), kind);
  if (!opt.output.empty()) cfg.output_path = opt.output;
  if (!opt.format.empty()) cfg.format = parse_format(opt.format);
  if (!opt.method.empty()) cfg.method = parse_method(opt.method);
  return cfg;
}

int run_sweep_command(const Options& opt, nanomass::sweep::SensorKind kind) {
  using namespace nanomass::sweep;
  const auto cfg = load_config(opt, kind);
  if (cfg.output_path.empty())
    throw nanomass::Error(nanomass::ErrorKind::parse_error, "no output path: set output_path or pass --output",
                          "output_path");
  const auto rows = run_sweep(cfg, opt.jobs);
  emit(rows, cfg);

  std::size_t failed = 0;
  for (const auto& r : rows)
    if (!r.ok()) {
      ++failed;
      std::fprintf(stderr, "warning: %s=%g (%s): %s\n", std::string(to_string(cfg.axis)).c_str(), r.axis_value,
                   r.curve.c_str(), r.message.c_str());
    }
  std::fprintf(stderr, "wrote %zu rows to %s (%zu failed)\n", rows.size(), cfg.output_path.c_str(), failed);
  return failed == rows.size() ? exit_physics : exit_ok;
}

int run_point_command(const Options& opt) {
  using namespace nanomass::sweep;
  auto cfg = load_config(opt, std::nullopt);
  cfg.axis = SweepAxis::temperature;
  cfg.grid = {opt.temperature.value_or(cfg.temperature)};
  cfg.temperature = cfg.grid.front();
  if (cfg.grid.front() < 0.0)
    throw nanomass::Error(nanomass::ErrorKind::validation_error, "temperature must be non-negative", "temperature");

  const auto rows = run_sweep(cfg);
  if (!opt.output.empty()) emit(rows, cfg);
  else std::cout << (cfg.format == OutputFormat::csv ? format_csv(rows, cfg.axis) : format_json(rows, cfg.axis));

  bool any_ok = false;
  for (const auto& r : rows) {
    if (r.ok()) any_ok = true;
    else std::fprintf(stderr, "error (%s): %s\n", r.curve.c_str(), r.message.c_str());
  }
  return any_ok ? exit_ok : exit_physics;
}

int run_stability_command(const Options& opt) {
  using namespace nanomass;
  const auto cfg = load_config(opt, sweep::SensorKind::cavity);
  const auto derived = derive_cavity_quantities(cfg.params);
  const auto ss = solve_steady_state(cfg.params);
  const auto drift = build_drift_matrix(cfg.params, ss);
  const auto report = stability_check(drift);

  std::printf("cavity linewidth gamma   = %.9e rad/s\n", derived.linewidth);
  std::printf("coupling g               = %.9e rad/s\n", derived.coupling);
  std::printf("photon number alpha_s^2  = %.9e\n", ss.photon_number);
  std::printf("q_s (dimensionless)      = %.9e\n", ss.q_tilde);
  std::printf("effective detuning Delta = %.9e rad/s\n", ss.effective_detuning);
  std::printf("bare detuning delta      = %.9e rad/s\n", ss.bare_detuning);
  std::printf("fixed points at delta    = %d\n", ss.branch_count);
  std::printf("intracavity power        = %.9e W\n", intracavity_power(cfg.params, ss));
  std::printf("G                        = %.9e rad/s\n", drift.coupling);
  std::printf("drift matrix A:\n");
  for (std::size_t i = 0; i < 4; ++i)
    std::printf("  % .9e % .9e % .9e % .9e\n", drift.a(i, 0), drift.a(i, 1), drift.a(i, 2), drift.a(i, 3));
  std::printf("characteristic polynomial (s^4..s^0):");
  for (double c : report.characteristic) std::printf(" %.9e", c);
  std::printf("\nhurwitz det2 = %.9e\nhurwitz det3 = %.9e\n", report.hurwitz.det2, report.hurwitz.det3);
  std::printf("classification: %s\n", report.stable ? "stable" : "unstable");
  std::printf("first failed condition: %s\n", std::string(numerics::to_string(report.hurwitz.first_failed)).c_str());
  return report.stable ? exit_ok : exit_physics;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum limits to nanomechanical mass sensing"};
  app.set_version_flag("--version", std::string(nanomass::version));
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Sweep configuration file")->required();
    sub->add_option("--output", opt.output, "Output data file (overrides output_path)");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--method", opt.method, "Band integral evaluation")
        ->check(CLI::IsMember({"quadrature", "lorentzian", "narrowband"}));
  };

  auto* free_cmd = app.add_subcommand("free-sweep", "Free cantilever sensitivity sweep");
  auto* cavity_cmd = app.add_subcommand("cavity-sweep", "Cavity mass sensor sensitivity sweep");
  auto* point_cmd = app.add_subcommand("point", "Single evaluation at one temperature");
  auto* stability_cmd = app.add_subcommand("stability", "Drift matrix Routh-Hurwitz report");
  for (auto* sub : {free_cmd, cavity_cmd, point_cmd, stability_cmd}) add_common(sub);
  for (auto* sub : {free_cmd, cavity_cmd})
    sub->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  point_cmd->add_option("--temperature", opt.temperature, "Bath temperature in K (default: config temperature)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (*free_cmd) return run_sweep_command(opt, nanomass::sweep::SensorKind::free);
    if (*cavity_cmd) return run_sweep_command(opt, nanomass::sweep::SensorKind::cavity);
    if (*point_cmd) return run_point_command(opt);
    if (*stability_cmd) return run_stability_command(opt);
  } catch (const nanomass::Error& e) {
    std::fprintf(stderr, "error [%s]%s%s: %s\n", std::string(nanomass::to_string(e.kind())).c_str(),
                 e.field().empty() ? "" : " ", e.field().c_str(), e.what());
    if (e.is_config_error()) return exit_config;
    if (e.kind() == nanomass::ErrorKind::io_error) return exit_io;
    return exit_physics;
  }
  return exit_config;
}
