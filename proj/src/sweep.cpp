#include "floquet_ssh/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>

namespace fssh {

namespace {

const std::vector<std::string>& axis_names() {
  static const std::vector<std::string> names = {
      "phi",       "phi_dim", "gamma",  "omega",         "kappa",  "kappa_omega",
      "tunneling", "lambda",  "phase0", "impurity_site", "n_sites"};
  return names;
}

int integral_value(const std::string& name, double value) {
  if (value != std::round(value)) throw ConfigError("axis '" + name + "' needs integer values");
  return static_cast<int>(value);
}

struct GridPoint {
  std::size_t index = 0;
  std::vector<double> axis_values;
};

std::vector<GridPoint> enumerate_grid(const SweepSpec& spec) {
  std::vector<GridPoint> points;
  if (spec.axes.size() == 1) {
    for (std::size_t i = 0; i < spec.axes[0].values.size(); ++i)
      points.push_back({points.size(), {spec.axes[0].values[i]}});
  } else {
    for (double a : spec.axes[0].values)
      for (double b : spec.axes[1].values) points.push_back({points.size(), {a, b}});
  }
  return points;
}

struct PointOutcome {
  ModelParams params;
  std::optional<FloquetSpectrum> spectrum;
  PhasePoint phase;
  std::optional<FailureCode> failure;
};

PointOutcome evaluate_point(const SweepSpec& spec, const SolverOptions& solver,
                            const GridPoint& point) {
  PointOutcome out;
  try {
    out.params = point_params(spec, point.axis_values);
    out.spectrum = compute_spectrum(out.params, solver);
    out.phase = classify_pt(*out.spectrum, spec.analysis);
  } catch (const Error& e) {
    out.failure = e.code();
    out.spectrum.reset();
  } catch (const std::exception&) {
    out.failure = FailureCode::NonConvergence;
    out.spectrum.reset();
  }
  return out;
}

// Fixes N_F for the whole grid when it is requested automatically.
SolverOptions prepare_solver(const SweepSpec& spec, const std::vector<GridPoint>& points) {
  SolverOptions solver = spec.solver;
  if (solver.method != Method::ExtendedMatrix || solver.n_floquet > 0 ||
      spec.per_point_convergence) {
    return solver;
  }
  const GridPoint* worst = nullptr;
  double worst_omega = 0.0;
  for (const auto& point : points) {
    ModelParams p;
    try {
      p = point_params(spec, point.axis_values);
    } catch (const Error&) {
      continue;
    }
    if (worst == nullptr || p.omega < worst_omega) {
      worst = &point;
      worst_omega = p.omega;
    }
  }
  if (worst == nullptr) throw ConfigError("no valid grid point");
  solver.n_floquet = converge_nf(point_params(spec, worst->axis_values), solver.nf_tol,
                                 solver.dim_cap);
  return solver;
}

std::vector<PointOutcome> evaluate_grid(const SweepSpec& spec,
                                        const std::vector<GridPoint>& points, bool parallel) {
  const SolverOptions solver = prepare_solver(spec, points);
  std::vector<PointOutcome> outcomes(points.size());
  const auto count = static_cast<std::ptrdiff_t>(points.size());
  if (parallel) {
    const int threads = resolve_thread_count(spec.threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      outcomes[static_cast<std::size_t>(i)] =
          evaluate_point(spec, solver, points[static_cast<std::size_t>(i)]);
    }
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      outcomes[static_cast<std::size_t>(i)] =
          evaluate_point(spec, solver, points[static_cast<std::size_t>(i)]);
    }
  }
  std::size_t failed = 0;
  for (const auto& o : outcomes) failed += o.failure.has_value();
  if (!outcomes.empty() && failed == outcomes.size()) {
    const FailureCode code = *outcomes.front().failure;
    throw SolverError(code, "all " + std::to_string(failed) +
                                " sweep points failed (first failure: " +
                                std::string(to_string(code)) + ")");
  }
  return outcomes;
}

std::vector<std::size_t> grid_shape(const SweepSpec& spec) {
  std::vector<std::size_t> shape;
  for (const auto& axis : spec.axes) shape.push_back(axis.values.size());
  return shape;
}

template <typename Row>
void fill_point_columns(Row& row, const GridPoint& point, const SweepSpec& spec,
                        const PointOutcome& o) {
  row.grid_index = point.index;
  const ModelParams& p = o.failure ? spec.base : o.params;
  row.phi = p.phi_dim;
  row.gamma = p.gamma;
  row.omega = p.omega;
  row.kappa = p.kappa;
  if (o.failure) {
    // best effort echo of the requested coordinates
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      const auto& name = spec.axes[a].name;
      const double v = point.axis_values[a];
      if (name == "phi" || name == "phi_dim") row.phi = v;
      if (name == "gamma") row.gamma = v;
      if (name == "omega") row.omega = v;
      if (name == "kappa") row.kappa = v;
    }
  }
}

SweepResult assemble_sweep(const SweepSpec& spec, const std::vector<GridPoint>& points,
                           const std::vector<PointOutcome>& outcomes) {
  SweepResult result;
  result.base = spec.base;
  result.grid_shape = grid_shape(spec);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& o = outcomes[i];
    SweepRow base_row;
    fill_point_columns(base_row, points[i], spec, o);
    base_row.method = spec.solver.method;
    if (o.failure) {
      ++result.failed_points;
      base_row.mode = -1;
      base_row.re_eps = base_row.im_eps = base_row.edge_weight = std::nan("");
      base_row.phase = Phase::Broken;
      base_row.failure = o.failure;
      result.rows.push_back(base_row);
      continue;
    }
    const FloquetSpectrum& s = *o.spectrum;
    base_row.n_floquet = s.n_floquet;
    base_row.phase = o.phase.phase;
    for (std::size_t k = 0; k < s.size(); ++k) {
      SweepRow row = base_row;
      row.mode = static_cast<int>(k);
      row.re_eps = s.quasi_energies[k].real();
      row.im_eps = s.quasi_energies[k].imag();
      row.edge_weight = edge_weight(s.mode_weights[k], spec.analysis.edge_fraction);
      result.rows.push_back(row);
    }
  }
  return result;
}

PhaseDiagramResult assemble_phase(const SweepSpec& spec, const std::vector<GridPoint>& points,
                                  const std::vector<PointOutcome>& outcomes) {
  PhaseDiagramResult result;
  result.base = spec.base;
  result.grid_shape = grid_shape(spec);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& o = outcomes[i];
    PhaseRow row;
    fill_point_columns(row, points[i], spec, o);
    row.method = spec.solver.method;
    if (o.failure) {
      ++result.failed_points;
      row.max_im = std::nan("");
      row.phase = Phase::Broken;
      row.zero_modes = 0;
      row.failure = o.failure;
    } else {
      row.max_im = o.phase.max_im;
      row.phase = o.phase.phase;
      row.zero_modes = static_cast<int>(o.phase.zero_modes.size());
      row.n_floquet = o.spectrum->n_floquet;
    }
    result.rows.push_back(row);
  }
  return result;
}

void validate_phase_spec(const SweepSpec& spec) {
  validate(spec);
  if (spec.axes.size() != 2) throw ConfigError("phase diagram needs exactly two axes");
  const bool ok = (spec.axes[0].name == "gamma" && spec.axes[1].name == "omega") ||
                  (spec.axes[0].name == "omega" && spec.axes[1].name == "gamma");
  if (!ok) throw ConfigError("phase diagram axes must be gamma and omega");
}

template <typename Result, typename Assemble>
Result timed_run(const SweepSpec& spec, bool parallel, Assemble assemble) {
  const auto start = std::chrono::steady_clock::now();
  const auto points = enumerate_grid(spec);
  const auto outcomes = evaluate_grid(spec, points, parallel);
  Result result = assemble(spec, points, outcomes);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

ModelParams point_params(const SweepSpec& spec, std::span<const double> axis_values) {
  ModelParams p = spec.base;
  bool has_amplitude = spec.kappa_omega.has_value();
  double amplitude = spec.kappa_omega.value_or(0.0);
  for (std::size_t a = 0; a < spec.axes.size(); ++a) {
    const std::string& name = spec.axes[a].name;
    const double v = axis_values[a];
    if (name == "phi" || name == "phi_dim") p.phi_dim = v;
    else if (name == "gamma") p.gamma = v;
    else if (name == "omega") p.omega = v;
    else if (name == "kappa") {
      p.kappa = v;
      has_amplitude = false;
    } else if (name == "kappa_omega") {
      has_amplitude = true;
      amplitude = v;
    }
    else if (name == "tunneling") p.tunneling = v;
    else if (name == "lambda") p.lambda = v;
    else if (name == "phase0") p.phase0 = v;
    else if (name == "impurity_site") p.impurity_site = integral_value(name, v);
    else if (name == "n_sites") p.n_sites = integral_value(name, v);
    else throw ConfigError("unknown sweep axis '" + name + "'");
  }
  if (has_amplitude) {
    if (amplitude == 0.0) {
      p.kappa = 0.0;
    } else {
      if (!(p.omega > 0.0)) throw ConfigError("kappa_omega needs omega > 0");
      p.kappa = amplitude / p.omega;
    }
  }
  validate(p);
  return p;
}

void validate(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) throw ConfigError("a sweep needs 1 or 2 axes");
  for (const auto& axis : spec.axes) {
    if (std::find(axis_names().begin(), axis_names().end(), axis.name) == axis_names().end()) {
      throw ConfigError("unknown sweep axis '" + axis.name + "'");
    }
    if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.name + "' is empty");
    for (double v : axis.values)
      if (!std::isfinite(v)) throw ConfigError("sweep axis '" + axis.name + "' is not finite");
  }
  if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name) {
    throw ConfigError("sweep axes must differ");
  }
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FLOQUET_SSH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1, omp_get_max_threads());
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  return timed_run<SweepResult>(spec, true, assemble_sweep);
}

SweepResult run_sweep_serial(const SweepSpec& spec) {
  validate(spec);
  return timed_run<SweepResult>(spec, false, assemble_sweep);
}

PhaseDiagramResult run_phase_diagram(const SweepSpec& spec) {
  validate_phase_spec(spec);
  return timed_run<PhaseDiagramResult>(spec, true, assemble_phase);
}

PhaseDiagramResult run_phase_diagram_serial(const SweepSpec& spec) {
  validate_phase_spec(spec);
  return timed_run<PhaseDiagramResult>(spec, false, assemble_phase);
}

}  // namespace fssh
