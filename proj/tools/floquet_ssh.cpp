// floquet-ssh: spectra, sweeps and PT analysis of the driven gain/loss SSH chain.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "floquet_ssh/analysis.hpp"
#include "floquet_ssh/config.hpp"
#include "floquet_ssh/effective.hpp"
#include "floquet_ssh/errors.hpp"
#include "floquet_ssh/io.hpp"
#include "floquet_ssh/sweep.hpp"

using namespace fssh;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitConfig = 2;

// Values of the flags of one subcommand, keyed by config key.
struct FlagSet {
  std::string preset;
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, bool> switches;
  std::map<std::string, CLI::Option*> switch_options;
};

void add_value(CLI::App* sub, FlagSet& flags, const std::string& flag, const std::string& key,
               const std::string& help) {
  flags.options[key] = sub->add_option(flag, flags.values[key], help);
}

void add_switch(CLI::App* sub, FlagSet& flags, const std::string& flag, const std::string& key,
                const std::string& help) {
  flags.switch_options[key] = sub->add_flag(flag, flags.switches[key], help);
}

void add_model_flags(CLI::App* sub, FlagSet& flags, bool scalar_gamma_omega) {
  sub->add_option("--preset", flags.preset, "fig1-static, fig1-lowfreq, fig1-midfreq, "
                                            "fig1-highfreq or fig1-highfreq-alt");
  sub->add_option("--config", flags.config_file, "JSON config file (flags override it)");
  add_value(sub, flags, "--n-sites", "n_sites", "number of lattice sites N");
  add_value(sub, flags, "--tunneling", "tunneling", "hopping T");
  add_value(sub, flags, "--lambda", "lambda", "dimerization strength");
  add_value(sub, flags, "--phi", "phi", "dimerization phase (accepts e.g. 0.5pi)");
  if (scalar_gamma_omega) {
    add_value(sub, flags, "--gamma", "gamma", "gain/loss strength");
    add_value(sub, flags, "--omega", "omega", "drive frequency (accepts e.g. 0.8pi)");
  }
  add_value(sub, flags, "--impurity-site", "impurity_site", "gain site j (loss on N-j+1)");
  const auto kappa = sub->add_option("--kappa", flags.values["kappa"], "drive strength kappa");
  const auto amplitude = sub->add_option("--kappa-omega", flags.values["kappa_omega"],
                                         "drive amplitude kappa*omega");
  kappa->excludes(amplitude);
  flags.options["kappa"] = kappa;
  flags.options["kappa_omega"] = amplitude;
  add_value(sub, flags, "--phase0", "phase0", "initial drive phase (accepts e.g. 0.5pi)");
  add_value(sub, flags, "--n0-rule", "n0_rule", "paper, paper_even, paper_odd or centered");
  add_value(sub, flags, "--method", "method", "extended, propagator, static_effective or static");
  add_value(sub, flags, "--n-floquet", "n_floquet", "harmonics per side (0: converge)");
  add_value(sub, flags, "--nf-tol", "nf_tol", "N_F convergence tolerance");
  add_value(sub, flags, "--n-steps", "n_steps", "propagator steps per period (0: automatic)");
  add_switch(sub, flags, "--converge-steps", "enforce_step_convergence",
             "double propagator steps until stable at --step-tol");
  add_value(sub, flags, "--step-tol", "step_tol", "propagator step convergence tolerance");
  add_value(sub, flags, "--dim-cap", "dim_cap", "largest extended matrix dimension");
  add_value(sub, flags, "--tol-im", "tol_im", "largest |Im eps| counted as real");
  add_value(sub, flags, "--zero-tol", "zero_tol", "zero mode tolerance in units of |T|");
  add_value(sub, flags, "--edge-fraction", "edge_fraction", "edge region per side, fraction of N");
  add_value(sub, flags, "--output,-o", "output", "output path, - for standard output");
  add_value(sub, flags, "--format", "format", "csv or json");
  add_value(sub, flags, "--threads", "threads", "worker threads (0: FLOQUET_SSH_THREADS or all)");
}

RunConfig build_config(const FlagSet& flags) {
  RunConfig config;
  if (!flags.preset.empty()) config = preset(flags.preset);
  if (!flags.config_file.empty()) apply_config_file(config, flags.config_file);
  // kappa_omega before kappa; the two are mutually exclusive on the command line anyway
  if (flags.options.at("kappa_omega")->count() > 0)
    apply_setting(config, "kappa_omega", flags.values.at("kappa_omega"));
  for (const auto& [key, option] : flags.options) {
    if (key == "kappa_omega" || option->count() == 0) continue;
    apply_setting(config, key, flags.values.at(key));
  }
  for (const auto& [key, option] : flags.switch_options) {
    if (option->count() > 0) apply_setting(config, key, flags.switches.at(key));
  }
  return config;
}

std::string output_path(const RunConfig& config, const std::string& stem) {
  if (!config.output.empty()) return config.output;
  return stem + (config.format == OutputFormat::Json ? ".json" : ".csv");
}

std::ostream& summary_stream(const std::string& path) {
  return path == "-" ? std::cerr : std::cout;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

std::string svg_path(const std::string& data_path, const std::string& stem) {
  if (data_path == "-") return stem + ".svg";
  const auto dot = data_path.find_last_of('.');
  const auto slash = data_path.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return data_path.substr(0, dot) + ".svg";
  return data_path + ".svg";
}

SweepSpec base_spec(const RunConfig& config, const ModelParams& params,
                    const SolverOptions& solver) {
  SweepSpec spec;
  spec.base = params;
  spec.kappa_omega = config.kappa_omega;
  spec.solver = solver;
  spec.analysis = config.analysis;
  spec.per_point_convergence = config.per_point_convergence;
  spec.threads = config.threads;
  return spec;
}

std::string serialize(const RunConfig& config, const std::vector<SweepRow>& rows) {
  return config.format == OutputFormat::Json ? sweep_json(rows).dump(2) + "\n" : sweep_csv(rows);
}

std::string serialize(const RunConfig& config, const std::vector<PhaseRow>& rows) {
  return config.format == OutputFormat::Json ? phase_json(rows).dump(2) + "\n" : phase_csv(rows);
}

bool is_zero_mode(const SweepRow& row, const RunConfig& config, const ModelParams& params) {
  return !row.failure && std::abs(row.re_eps) < config.analysis.zero_tol * std::abs(params.tunneling) &&
         row.edge_weight > 0.5;
}

int cmd_spectrum(const FlagSet& flags) {
  const RunConfig config = build_config(flags);
  const ModelParams params = resolved_params(config);
  SweepSpec spec = base_spec(config, params, resolved_solver(config, params));
  spec.axes = {{"phi", {params.phi_dim}}};
  const std::string path = output_path(config, "spectrum");
  const SweepResult result = run_sweep_serial(spec);

  write_text(path, serialize(config, result.rows));
  std::ostream& out = summary_stream(path);
  double max_im = 0.0;
  std::vector<const SweepRow*> zero_modes;
  for (const auto& row : result.rows) {
    max_im = std::max(max_im, std::abs(row.im_eps));
    if (is_zero_mode(row, config, params)) zero_modes.push_back(&row);
  }
  const SweepRow& first = result.rows.front();
  out << "method " << to_string(first.method);
  if (first.n_floquet > 0) out << " (n_floquet " << first.n_floquet << ")";
  out << "\nphase " << phase_label(first.phase, first.failure) << " (max |Im eps| "
      << format_double(max_im) << ")\n";
  out << "zero modes " << zero_modes.size() << '\n';
  for (const auto* row : zero_modes) {
    out << "  mode " << row->mode << "  eps " << format_double(row->re_eps)
        << (row->im_eps < 0 ? " - " : " + ") << format_double(std::abs(row->im_eps))
        << "i  edge_weight " << format_double(row->edge_weight) << '\n';
  }
  if (path != "-") out << "wrote " << path << '\n';
  return kExitOk;
}

int report_failures(std::size_t failed, std::size_t total) {
  if (failed == 0) return kExitOk;
  std::cerr << "warning: " << failed << " of " << total << " grid points failed\n";
  return kExitSolver;
}

int cmd_sweep_phi(const FlagSet& flags) {
  const RunConfig config = build_config(flags);
  const ModelParams params = resolved_params(config);
  SweepSpec spec = base_spec(config, params, resolved_solver(config, params));
  spec.axes = {{"phi", parse_grid(config.phi_grid)}};
  const std::string path = output_path(config, "sweep_phi");
  const SweepResult result = run_sweep(spec);

  write_text(path, serialize(config, result.rows));
  std::ostream& out = summary_stream(path);
  std::size_t broken = 0;
  double max_im = 0.0;
  std::map<std::size_t, bool> point_broken;
  for (const auto& row : result.rows) {
    if (row.failure) continue;
    point_broken[row.grid_index] = row.phase == Phase::Broken;
    max_im = std::max(max_im, std::abs(row.im_eps));
  }
  for (const auto& [index, b] : point_broken) broken += b;
  out << "grid points " << spec.axes[0].values.size() << ", broken " << broken << ", failed "
      << result.failed_points << ", max |Im eps| " << format_double(max_im) << ", "
      << result.wall_seconds << " s\n";
  if (path != "-") out << "wrote " << path << '\n';
  if (config.plot) {
    const std::string plot = svg_path(path, "sweep_phi");
    write_text(plot, render_phi_sweep_svg(result, config.analysis.zero_tol *
                                                      std::abs(params.tunneling)));
    out << "wrote " << plot << '\n';
  }
  return report_failures(result.failed_points, spec.axes[0].values.size());
}

int cmd_phase_diagram(const FlagSet& flags) {
  RunConfig config = build_config(flags);
  const ModelParams params = resolved_params(config);
  SolverOptions solver = config.solver;
  if (!config.method_explicit) solver.method = Method::Propagator;
  SweepSpec spec = base_spec(config, params, solver);
  spec.axes = {{"gamma", parse_grid(config.gamma_grid)}, {"omega", parse_grid(config.omega_grid)}};
  const std::string path = output_path(config, "phase_diagram");
  const PhaseDiagramResult result = run_phase_diagram(spec);

  write_text(path, serialize(config, result.rows));
  std::ostream& out = summary_stream(path);
  std::size_t broken = 0;
  for (const auto& row : result.rows) broken += !row.failure && row.phase == Phase::Broken;
  out << "grid " << result.grid_shape[0] << " x " << result.grid_shape[1] << ", broken " << broken
      << ", failed " << result.failed_points << ", " << result.wall_seconds << " s\n";
  if (path != "-") out << "wrote " << path << '\n';
  if (config.plot) {
    const std::string plot = svg_path(path, "phase_diagram");
    write_text(plot, render_phase_diagram_svg(result));
    out << "wrote " << plot << '\n';
  }
  return report_failures(result.failed_points, result.rows.size());
}

int cmd_effective_compare(const FlagSet& flags) {
  const RunConfig config = build_config(flags);
  const ModelParams params = resolved_params(config);
  const EffectiveComparison cmp = compare_floquet_effective(params, config.solver.n_floquet);
  std::cout << "omega " << format_double(cmp.omega) << "\nkappa " << format_double(params.kappa)
            << "\nt_eff " << format_double(cmp.t_eff) << "\nn_floquet " << cmp.floquet.n_floquet
            << "\nmax_deviation " << format_double(cmp.max_quasi_energy_deviation) << '\n';
  for (const auto& d : cmp.floquet.diagnostics) std::cerr << "note: " << d << '\n';
  if (!config.output.empty()) {
    nlohmann::json j = {{"params", to_json(params)},
                        {"t_eff", cmp.t_eff},
                        {"n_floquet", cmp.floquet.n_floquet},
                        {"max_deviation", cmp.max_quasi_energy_deviation},
                        {"per_mode_deviation", cmp.per_mode_deviation}};
    nlohmann::json modes = nlohmann::json::array();
    for (std::size_t k = 0; k < cmp.floquet.size(); ++k) {
      modes.push_back({{"re_eps", cmp.floquet.quasi_energies[k].real()},
                       {"im_eps", cmp.floquet.quasi_energies[k].imag()}});
    }
    j["floquet"] = modes;
    nlohmann::json eff = nlohmann::json::array();
    for (const auto& e : cmp.effective_eigenvalues) eff.push_back({{"re", e.real()}, {"im", e.imag()}});
    j["effective"] = eff;
    write_text(config.output, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_pt_threshold(const FlagSet& flags) {
  const RunConfig config = build_config(flags);
  const ModelParams params = resolved_params(config);
  const ThresholdResult r = gamma_pt_threshold(params, config.gamma_max, config.tol_gamma,
                                               resolved_solver(config, params), config.analysis);
  std::cout << "gamma_pt " << format_double(r.gamma_pt) << "\nflag " << to_string(r.flag)
            << "\nmonotone " << (r.monotone ? "true" : "false") << "\nevaluations "
            << r.evaluations << '\n';
  if (!r.monotone) std::cerr << "warning: PT-broken region is not monotone in gamma\n";
  if (!config.output.empty()) {
    nlohmann::json prescan = nlohmann::json::array();
    for (const auto& [g, im] : r.prescan) prescan.push_back({{"gamma", g}, {"max_im", im}});
    const nlohmann::json j = {{"params", to_json(params)},  {"gamma_pt", r.gamma_pt},
                              {"flag", to_string(r.flag)}, {"monotone", r.monotone},
                              {"evaluations", r.evaluations}, {"prescan", prescan}};
    write_text(config.output, j.dump(2) + "\n");
  }
  return kExitOk;
}

int validate_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string original = buffer.str();
  const std::string again = reserialize_csv(original);
  if (again != original) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(original.size(), again.size()); ++i) {
      if (original[i] != again[i]) break;
      line += original[i] == '\n';
    }
    std::cerr << path << ": round trip differs at line " << line << '\n';
    return kExitConfig;
  }
  std::size_t rows = 0;
  for (char c : original) rows += c == '\n';
  std::cout << path << ": ok, " << (rows > 0 ? rows - 1 : 0) << " rows\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet spectra and PT phases of the driven gain/loss SSH chain"};
  app.require_subcommand(0, 1);
  std::string from_csv;
  app.add_option("--from-csv", from_csv, "re-parse a CSV written by this tool and check it");

  FlagSet spectrum, sweep_phi, phase_diagram, effective, threshold;
  auto* s1 = app.add_subcommand("spectrum", "one spectrum, CSV or JSON");
  add_model_flags(s1, spectrum, true);
  auto* s2 = app.add_subcommand("sweep-phi", "spectra over a grid of Phi");
  add_model_flags(s2, sweep_phi, true);
  add_value(s2, sweep_phi, "--phi-grid", "phi_grid", "start:stop:count (default 0:2pi:201)");
  add_switch(s2, sweep_phi, "--plot", "plot", "also write an SVG of Re eps against Phi");
  auto* s3 = app.add_subcommand("phase-diagram", "PT phase over a gamma x omega grid");
  add_model_flags(s3, phase_diagram, false);
  add_value(s3, phase_diagram, "--gamma", "gamma_grid", "start:stop:count (default 0:0.4:9)");
  add_value(s3, phase_diagram, "--omega", "omega_grid",
            "start:stop:count (default 0.2pi:45pi:9)");
  add_switch(s3, phase_diagram, "--plot", "plot", "also write an SVG of the phase grid");
  auto* s4 = app.add_subcommand("effective-compare",
                                "extended-matrix quasi-energies against the effective Hamiltonian");
  add_model_flags(s4, effective, true);
  auto* s5 = app.add_subcommand("pt-threshold", "bisection for the PT-breaking gain/loss");
  add_model_flags(s5, threshold, true);
  add_value(s5, threshold, "--gamma-max", "gamma_max", "upper end of the search (default 1)");
  add_value(s5, threshold, "--tol-gamma", "tol_gamma", "bisection tolerance (default 1e-4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (!from_csv.empty()) return validate_csv(from_csv);
    if (s1->parsed()) return cmd_spectrum(spectrum);
    if (s2->parsed()) return cmd_sweep_phi(sweep_phi);
    if (s3->parsed()) return cmd_phase_diagram(phase_diagram);
    if (s4->parsed()) return cmd_effective_compare(effective);
    if (s5->parsed()) return cmd_pt_threshold(threshold);
    std::cerr << app.help();
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "solver failure (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
