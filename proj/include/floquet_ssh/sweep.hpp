#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "floquet_ssh/analysis.hpp"
#include "floquet_ssh/errors.hpp"
#include "floquet_ssh/floquet.hpp"
#include "floquet_ssh/model.hpp"
#include "floquet_ssh/solver.hpp"

namespace fssh {

// Axis names: phi (alias phi_dim), gamma, omega, kappa, kappa_omega, lambda, tunneling,
// phase0, impurity_site, n_sites.
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

struct SweepSpec {
  ModelParams base;
  // Drive amplitude kappa*omega. When set, kappa = kappa_omega / omega at every grid point.
  std::optional<double> kappa_omega;
  std::vector<SweepAxis> axes;  // one or two; the first axis varies slowest
  SolverOptions solver;
  AnalysisOptions analysis;
  // With solver.n_floquet == 0: false runs converge_nf once at the smallest-omega grid point
  // and reuses it, true converges at every point.
  bool per_point_convergence = false;
  int threads = 0;  // 0: FLOQUET_SSH_THREADS, else the OpenMP default
};

// One (grid point, mode) row. Failed points produce a single row with mode = -1.
struct SweepRow {
  std::size_t grid_index = 0;
  double phi = 0.0;
  double omega = 0.0;
  double gamma = 0.0;
  double kappa = 0.0;
  int mode = 0;
  double re_eps = 0.0;
  double im_eps = 0.0;
  double edge_weight = 0.0;
  Phase phase = Phase::Unbroken;
  Method method = Method::Static;
  int n_floquet = 0;
  std::optional<FailureCode> failure;
};

struct PhaseRow {
  std::size_t grid_index = 0;
  double phi = 0.0;
  double gamma = 0.0;
  double omega = 0.0;
  double kappa = 0.0;
  double max_im = 0.0;
  Phase phase = Phase::Unbroken;
  int zero_modes = 0;
  Method method = Method::Static;
  int n_floquet = 0;
  std::optional<FailureCode> failure;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  ModelParams base;
  std::vector<std::size_t> grid_shape;
  std::size_t failed_points = 0;
  double wall_seconds = 0.0;
};

struct PhaseDiagramResult {
  std::vector<PhaseRow> rows;
  ModelParams base;
  std::vector<std::size_t> grid_shape;
  std::size_t failed_points = 0;
  double wall_seconds = 0.0;
};

// Parameters of one grid point (axis values applied, kappa derived from kappa_omega).
ModelParams point_params(const SweepSpec& spec, std::span<const double> axis_values);

void validate(const SweepSpec& spec);

// Grid points run on an OpenMP worker pool; rows come back in grid order.
SweepResult run_sweep(const SweepSpec& spec);
// Single-threaded reference with identical output.
SweepResult run_sweep_serial(const SweepSpec& spec);

// Two axes, gamma and omega. One row per grid point.
PhaseDiagramResult run_phase_diagram(const SweepSpec& spec);
PhaseDiagramResult run_phase_diagram_serial(const SweepSpec& spec);

int resolve_thread_count(int requested);

}  // namespace fssh
