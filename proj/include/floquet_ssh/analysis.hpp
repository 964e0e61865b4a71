#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "floquet_ssh/floquet.hpp"
#include "floquet_ssh/model.hpp"
#include "floquet_ssh/solver.hpp"

namespace fssh {

enum class Phase { Unbroken, Broken };

std::string_view to_string(Phase phase);
Phase parse_phase(std::string_view text);

struct AnalysisOptions {
  double tol_im = 1e-8;        // absolute, energy units
  double zero_tol = 1e-3;      // in units of |T|
  double edge_fraction = 0.1;  // outer ceil(edge_fraction * N) sites on each side
};

struct ZeroMode {
  std::size_t index = 0;  // position in FloquetSpectrum::quasi_energies
  double re = 0.0;
  double im = 0.0;
  double edge_weight = 0.0;
};

struct PhasePoint {
  double max_im = 0.0;
  Phase phase = Phase::Unbroken;
  std::vector<ZeroMode> zero_modes;
  ModelParams params_echo;
};

// Share of a mode's site weight on the outer ceil(edge_fraction * N) sites of each end.
double edge_weight(std::span<const double> site_weights, double edge_fraction);

// Modes with |Re eps| < zero_tol (absolute) and edge weight above 0.5.
std::vector<ZeroMode> find_zero_modes(const FloquetSpectrum& spectrum, double zero_tol,
                                      double edge_fraction);

PhasePoint classify_pt(const FloquetSpectrum& spectrum, const AnalysisOptions& options = {});

enum class ThresholdFlag { None, BrokenAtZero, UnbrokenAtMax };

std::string_view to_string(ThresholdFlag flag);

struct ThresholdResult {
  double gamma_pt = 0.0;
  ThresholdFlag flag = ThresholdFlag::None;
  bool monotone = true;  // the 16-point pre-scan saw a single Unbroken -> Broken switch
  std::vector<std::pair<double, double>> prescan;  // (gamma, max_im)
  int evaluations = 0;
};

// Bisection on gamma in [0, gamma_max] for the Unbroken -> Broken transition, assuming
// the broken region is monotone in gamma (checked by the pre-scan).
ThresholdResult gamma_pt_threshold(const ModelParams& params, double gamma_max,
                                   double tol_gamma = 1e-4,
                                   const SolverOptions& solver = {.method = Method::Static},
                                   const AnalysisOptions& options = {});

// max_z |R(z) - tr(R(z))/N I|_F with R(z) = P conj(H(z_r - z)) P - H(z_r + z),
// P the site reversal and z_r = -phase0/omega the odd point of the drive.
double check_pt_symmetry(const ModelParams& params, int z_samples);

}  // namespace fssh
