#include "floquet_ssh/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "floquet_ssh/errors.hpp"

namespace fssh {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

double parse_plain(const std::string& s, std::string_view original) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ConfigError("invalid number '" + std::string(original) + "'");
  }
  return v;
}

double number_of(const nlohmann::json& value, std::string_view key) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_real_literal(value.get<std::string>());
  throw ConfigError("'" + std::string(key) + "' must be a number");
}

int integer_of(const nlohmann::json& value, std::string_view key) {
  const double v = number_of(value, key);
  if (v != std::round(v) || std::abs(v) > 1e9) {
    throw ConfigError("'" + std::string(key) + "' must be an integer");
  }
  return static_cast<int>(v);
}

bool bool_of(const nlohmann::json& value, std::string_view key) {
  if (value.is_boolean()) return value.get<bool>();
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
  }
  throw ConfigError("'" + std::string(key) + "' must be a boolean");
}

std::string string_of(const nlohmann::json& value, std::string_view key) {
  if (value.is_string()) return value.get<std::string>();
  throw ConfigError("'" + std::string(key) + "' must be a string");
}

const std::vector<std::string>& model_keys() {
  static const std::vector<std::string> keys = {"n_sites", "tunneling",     "lambda", "phi_dim",
                                                "gamma",   "impurity_site", "kappa",  "omega",
                                                "phase0",  "n0_rule"};
  return keys;
}

bool set_model_key(ModelParams& p, std::string_view key, const nlohmann::json& value) {
  if (key == "n_sites") p.n_sites = integer_of(value, key);
  else if (key == "tunneling") p.tunneling = number_of(value, key);
  else if (key == "lambda") p.lambda = number_of(value, key);
  else if (key == "phi_dim" || key == "phi") p.phi_dim = number_of(value, key);
  else if (key == "gamma") p.gamma = number_of(value, key);
  else if (key == "impurity_site") p.impurity_site = integer_of(value, key);
  else if (key == "kappa") p.kappa = number_of(value, key);
  else if (key == "omega") p.omega = number_of(value, key);
  else if (key == "phase0") p.phase0 = number_of(value, key);
  else if (key == "n0_rule") p.n0_rule = parse_n0_rule(string_of(value, key));
  else return false;
  return true;
}

}  // namespace

double parse_real_literal(std::string_view text) {
  std::string s = trim(text);
  constexpr std::string_view kPi = "pi";
  if (s.size() >= kPi.size() && s.compare(s.size() - kPi.size(), kPi.size(), kPi) == 0) {
    std::string coeff = s.substr(0, s.size() - kPi.size());
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    double factor = 1.0;
    if (coeff.empty() || coeff == "+") factor = 1.0;
    else if (coeff == "-") factor = -1.0;
    else factor = parse_plain(coeff, text);
    return factor * std::numbers::pi;
  }
  return parse_plain(s, text);
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  if (parts.size() != 3) throw ConfigError("grid '" + std::string(text) + "' is not start:stop:count");
  const double start = parse_real_literal(parts[0]);
  const double stop = parse_real_literal(parts[1]);
  const std::string count_text = trim(parts[2]);
  char* end = nullptr;
  const long count = std::strtol(count_text.c_str(), &end, 10);
  if (count_text.empty() || end != count_text.c_str() + count_text.size() || count < 1 ||
      count > 10'000'000) {
    throw ConfigError("grid '" + std::string(text) + "' needs a positive integer count");
  }
  std::vector<double> values(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    values[static_cast<std::size_t>(i)] =
        count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  if (count > 1) values.back() = stop;
  return values;
}

nlohmann::json to_json(const ModelParams& p) {
  return {{"n_sites", p.n_sites},   {"tunneling", p.tunneling},
          {"lambda", p.lambda},     {"phi_dim", p.phi_dim},
          {"gamma", p.gamma},       {"impurity_site", p.impurity_site},
          {"kappa", p.kappa},       {"omega", p.omega},
          {"phase0", p.phase0},     {"n0_rule", std::string(to_string(p.n0_rule))}};
}

ModelParams params_from_json(const nlohmann::json& object, const ModelParams& base) {
  if (!object.is_object()) throw ConfigError("model parameters must be a JSON object");
  ModelParams p = base;
  for (const auto& [key, value] : object.items()) {
    if (key == "phi" || !set_model_key(p, key, value)) {
      throw ConfigError("unknown model parameter '" + key + "'");
    }
  }
  return p;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = model_keys();
    for (const char* extra :
         {"phi", "kappa_omega", "method", "n_floquet", "nf_tol", "n_steps",
          "enforce_step_convergence", "step_tol", "dim_cap", "tol_im", "zero_tol",
          "edge_fraction", "output", "format", "plot", "threads", "per_point_convergence",
          "phi_grid", "gamma_grid", "omega_grid", "gamma_max", "tol_gamma"}) {
      k.emplace_back(extra);
    }
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& c, std::string_view key, const nlohmann::json& value) {
  if (key == "kappa") {
    c.params.kappa = number_of(value, key);
    c.kappa_omega.reset();
  } else if (key == "kappa_omega") {
    c.kappa_omega = number_of(value, key);
  } else if (set_model_key(c.params, key, value)) {
  } else if (key == "method") {
    c.solver.method = parse_method(string_of(value, key));
    c.method_explicit = true;
  } else if (key == "n_floquet") {
    c.solver.n_floquet = integer_of(value, key);
    if (c.solver.n_floquet < 0) throw ConfigError("n_floquet must be >= 0");
  } else if (key == "nf_tol") {
    c.solver.nf_tol = number_of(value, key);
  } else if (key == "n_steps") {
    c.solver.n_steps = integer_of(value, key);
    if (c.solver.n_steps < 0) throw ConfigError("n_steps must be >= 0");
  } else if (key == "enforce_step_convergence") {
    c.solver.enforce_step_convergence = bool_of(value, key);
  } else if (key == "step_tol") {
    c.solver.step_tol = number_of(value, key);
  } else if (key == "dim_cap") {
    const int cap = integer_of(value, key);
    if (cap < 1) throw ConfigError("dim_cap must be positive");
    c.solver.dim_cap = static_cast<std::size_t>(cap);
  } else if (key == "tol_im") {
    c.analysis.tol_im = number_of(value, key);
  } else if (key == "zero_tol") {
    c.analysis.zero_tol = number_of(value, key);
  } else if (key == "edge_fraction") {
    c.analysis.edge_fraction = number_of(value, key);
  } else if (key == "output") {
    c.output = string_of(value, key);
  } else if (key == "format") {
    const auto f = string_of(value, key);
    if (f == "csv") c.format = OutputFormat::Csv;
    else if (f == "json") c.format = OutputFormat::Json;
    else throw ConfigError("format must be csv or json");
  } else if (key == "plot") {
    c.plot = bool_of(value, key);
  } else if (key == "threads") {
    c.threads = integer_of(value, key);
    if (c.threads < 0) throw ConfigError("threads must be >= 0");
  } else if (key == "per_point_convergence") {
    c.per_point_convergence = bool_of(value, key);
  } else if (key == "phi_grid") {
    c.phi_grid = string_of(value, key);
    parse_grid(c.phi_grid);
  } else if (key == "gamma_grid") {
    c.gamma_grid = string_of(value, key);
    parse_grid(c.gamma_grid);
  } else if (key == "omega_grid") {
    c.omega_grid = string_of(value, key);
    parse_grid(c.omega_grid);
  } else if (key == "gamma_max") {
    c.gamma_max = number_of(value, key);
  } else if (key == "tol_gamma") {
    c.tol_gamma = number_of(value, key);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_json(RunConfig& config, const nlohmann::json& object) {
  if (!object.is_object()) throw ConfigError("config must be a JSON object");
  // kappa_omega first so that a direct kappa in the same file takes precedence
  if (object.contains("kappa_omega")) apply_setting(config, "kappa_omega", object["kappa_omega"]);
  for (const auto& [key, value] : object.items()) {
    if (key != "kappa_omega") apply_setting(config, key, value);
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json object;
  try {
    object = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  apply_config_json(config, object);
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j = to_json(c.params);
  if (c.kappa_omega) {
    j.erase("kappa");
    j["kappa_omega"] = *c.kappa_omega;
  }
  j["method"] = std::string(to_string(c.solver.method));
  j["n_floquet"] = c.solver.n_floquet;
  j["nf_tol"] = c.solver.nf_tol;
  j["n_steps"] = c.solver.n_steps;
  j["enforce_step_convergence"] = c.solver.enforce_step_convergence;
  j["step_tol"] = c.solver.step_tol;
  j["dim_cap"] = c.solver.dim_cap;
  j["tol_im"] = c.analysis.tol_im;
  j["zero_tol"] = c.analysis.zero_tol;
  j["edge_fraction"] = c.analysis.edge_fraction;
  j["output"] = c.output;
  j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  j["plot"] = c.plot;
  j["threads"] = c.threads;
  j["per_point_convergence"] = c.per_point_convergence;
  j["phi_grid"] = c.phi_grid;
  j["gamma_grid"] = c.gamma_grid;
  j["omega_grid"] = c.omega_grid;
  j["gamma_max"] = c.gamma_max;
  j["tol_gamma"] = c.tol_gamma;
  return j;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1-static", "fig1-lowfreq", "fig1-midfreq",
                                                 "fig1-highfreq", "fig1-highfreq-alt"};
  return names;
}

RunConfig preset(std::string_view name) {
  RunConfig c;
  c.params.n_sites = 40;
  c.params.tunneling = 1.0;
  c.params.lambda = 0.4;
  c.params.gamma = 0.2;
  c.params.impurity_site = 2;
  c.params.phase0 = 0.0;
  c.kappa_omega = 0.05;
  c.method_explicit = true;
  const double pi = std::numbers::pi;
  if (name == "fig1-static") {
    c.kappa_omega.reset();
    c.params.kappa = 0.0;
    c.params.omega = 0.0;
    c.solver.method = Method::Static;
  } else if (name == "fig1-lowfreq") {
    c.params.omega = 0.2 * pi;
    c.solver.method = Method::Propagator;
  } else if (name == "fig1-midfreq") {
    c.params.omega = 0.8 * pi;
    c.solver.method = Method::Propagator;
  } else if (name == "fig1-highfreq") {
    c.params.omega = 45.0 * pi;
    c.solver.method = Method::ExtendedMatrix;
  } else if (name == "fig1-highfreq-alt") {
    c.params.omega = 4.0 * pi;
    c.solver.method = Method::ExtendedMatrix;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return c;
}

SolverOptions resolved_solver(const RunConfig& config, const ModelParams& params) {
  SolverOptions solver = config.solver;
  if (!config.method_explicit) {
    solver.method = params.kappa == 0.0 ? Method::Static : Method::ExtendedMatrix;
  }
  return solver;
}

ModelParams resolved_params(const RunConfig& config) {
  ModelParams p = config.params;
  if (config.kappa_omega) {
    if (*config.kappa_omega == 0.0) {
      p.kappa = 0.0;
    } else {
      if (!(p.omega > 0.0)) throw ConfigError("kappa_omega needs omega > 0");
      p.kappa = *config.kappa_omega / p.omega;
    }
  }
  // without gain/loss the impurity site does not enter H, so an out-of-range default is moot
  if (p.gamma == 0.0 && p.n_sites >= 2 && p.impurity_site > (p.n_sites + 1) / 2) {
    p.impurity_site = (p.n_sites + 1) / 2;
  }
  validate(p);
  return p;
}

}  // namespace fssh
