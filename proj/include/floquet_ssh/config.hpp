#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floquet_ssh/analysis.hpp"
#include "floquet_ssh/model.hpp"
#include "floquet_ssh/solver.hpp"
#include "json.hpp"

namespace fssh {

// Real literal with an optional "pi" suffix: "0.8pi", "-pi", "pi", "1.5".
double parse_real_literal(std::string_view text);

// "start:stop:count", inclusive on both ends; count = 1 gives {start}.
std::vector<double> parse_grid(std::string_view text);

nlohmann::json to_json(const ModelParams& params);
// Reads the flat key set of ModelParams on top of base. Unknown keys are rejected.
ModelParams params_from_json(const nlohmann::json& object, const ModelParams& base = {});

enum class OutputFormat { Csv, Json };

struct RunConfig {
  ModelParams params;
  // Drive amplitude kappa*omega. Setting kappa directly clears it.
  std::optional<double> kappa_omega;
  SolverOptions solver;
  // false until a preset, config file or flag picks the method
  bool method_explicit = false;
  AnalysisOptions analysis;
  std::string output;  // "" selects the subcommand default, "-" is standard output
  OutputFormat format = OutputFormat::Csv;
  bool plot = false;
  int threads = 0;
  bool per_point_convergence = false;
  std::string phi_grid = "0:2pi:201";
  std::string gamma_grid = "0:0.4:9";
  std::string omega_grid = "0.2pi:45pi:9";
  double gamma_max = 1.0;
  double tol_gamma = 1e-4;
};

// Keys accepted by apply_setting, in the order they are documented.
const std::vector<std::string>& config_keys();

// Sets one key. Numbers may be JSON numbers or strings with an optional "pi" suffix.
// Throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, const nlohmann::json& value);

// Applies a flat JSON object. When both kappa and kappa_omega are present, kappa wins.
void apply_config_json(RunConfig& config, const nlohmann::json& object);
void apply_config_file(RunConfig& config, const std::string& path);

nlohmann::json to_json(const RunConfig& config);

// fig1-static, fig1-lowfreq, fig1-midfreq, fig1-highfreq, fig1-highfreq-alt.
const std::vector<std::string>& preset_names();
RunConfig preset(std::string_view name);

// The configured method, or when none was picked: Static without a drive,
// ExtendedMatrix with one.
SolverOptions resolved_solver(const RunConfig& config, const ModelParams& params);

// Model parameters with kappa derived from kappa_omega when present; validated.
ModelParams resolved_params(const RunConfig& config);

}  // namespace fssh
