#include "floquet_ssh/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floquet_ssh/errors.hpp"

namespace fssh {

std::string_view to_string(Phase phase) {
  return phase == Phase::Unbroken ? "unbroken" : "broken";
}

Phase parse_phase(std::string_view text) {
  if (text == "unbroken") return Phase::Unbroken;
  if (text == "broken") return Phase::Broken;
  throw ConfigError("unknown phase label '" + std::string(text) + "'");
}

std::string_view to_string(ThresholdFlag flag) {
  switch (flag) {
    case ThresholdFlag::None: return "none";
    case ThresholdFlag::BrokenAtZero: return "broken_at_zero";
    case ThresholdFlag::UnbrokenAtMax: return "unbroken_at_max";
  }
  return "none";
}

double edge_weight(std::span<const double> site_weights, double edge_fraction) {
  const std::size_t n = site_weights.size();
  if (n == 0) return 0.0;
  const auto k = static_cast<std::size_t>(std::ceil(edge_fraction * static_cast<double>(n)));
  double total = 0.0;
  if (2 * k >= n) {
    for (double w : site_weights) total += w;
  } else {
    for (std::size_t i = 0; i < k; ++i) total += site_weights[i] + site_weights[n - 1 - i];
  }
  return std::clamp(total, 0.0, 1.0);
}

std::vector<ZeroMode> find_zero_modes(const FloquetSpectrum& spectrum, double zero_tol,
                                      double edge_fraction) {
  if (!(edge_fraction > 0.0 && edge_fraction <= 0.5)) {
    throw ConfigError("edge_fraction must lie in (0, 0.5]");
  }
  std::vector<ZeroMode> modes;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const Complex eps = spectrum.quasi_energies[k];
    if (std::abs(eps.real()) >= zero_tol) continue;
    const double w = edge_weight(spectrum.mode_weights[k], edge_fraction);
    if (w > 0.5) modes.push_back({k, eps.real(), eps.imag(), w});
  }
  return modes;
}

PhasePoint classify_pt(const FloquetSpectrum& spectrum, const AnalysisOptions& options) {
  PhasePoint point;
  point.params_echo = spectrum.params;
  for (const auto& eps : spectrum.quasi_energies)
    point.max_im = std::max(point.max_im, std::abs(eps.imag()));
  point.phase = point.max_im < options.tol_im ? Phase::Unbroken : Phase::Broken;
  point.zero_modes = find_zero_modes(
      spectrum, options.zero_tol * std::abs(spectrum.params.tunneling), options.edge_fraction);
  return point;
}

ThresholdResult gamma_pt_threshold(const ModelParams& params, double gamma_max, double tol_gamma,
                                   const SolverOptions& solver, const AnalysisOptions& options) {
  if (!(gamma_max > 0.0)) throw ConfigError("gamma_max must be positive");
  if (!(tol_gamma > 0.0)) throw ConfigError("tol_gamma must be positive");

  ThresholdResult result;
  auto max_im_at = [&](double gamma) {
    ModelParams p = params;
    p.gamma = gamma;
    ++result.evaluations;
    return classify_pt(compute_spectrum(p, solver), options).max_im;
  };
  auto broken = [&](double max_im) { return !(max_im < options.tol_im); };

  if (broken(max_im_at(0.0))) {
    throw ConfigError("spectrum is already broken at gamma = 0");
  }
  const double probe = std::min(tol_gamma, gamma_max);
  if (broken(max_im_at(probe))) {
    result.gamma_pt = 0.0;
    result.flag = ThresholdFlag::BrokenAtZero;
    return result;
  }

  constexpr int kPrescan = 16;
  int first_broken = -1;
  for (int k = 1; k <= kPrescan; ++k) {
    const double g = gamma_max * k / kPrescan;
    const double im = max_im_at(g);
    result.prescan.emplace_back(g, im);
    if (broken(im)) {
      if (first_broken < 0) first_broken = k;
    } else if (first_broken > 0) {
      result.monotone = false;
    }
  }
  if (first_broken < 0) {
    result.gamma_pt = gamma_max;
    result.flag = ThresholdFlag::UnbrokenAtMax;
    return result;
  }

  double lo = first_broken == 1 ? probe : gamma_max * (first_broken - 1) / kPrescan;
  double hi = gamma_max * first_broken / kPrescan;
  while (hi - lo > tol_gamma) {
    const double mid = 0.5 * (lo + hi);
    if (broken(max_im_at(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.gamma_pt = 0.5 * (lo + hi);
  return result;
}

double check_pt_symmetry(const ModelParams& params, int z_samples) {
  if (z_samples < 8) throw ConfigError("z_samples must be at least 8");
  const ComplexMatrix h0 = build_static_hamiltonian(params);
  const ComplexMatrix d = drive_operator(params);
  const bool driven = params.omega > 0.0;
  const double z_odd = driven ? -params.phase0 / params.omega : 0.0;
  const double span = driven ? params.period() : 1.0;
  const auto n = h0.dim();

  double worst = 0.0;
  for (int k = 0; k < z_samples; ++k) {
    const double z = span * k / z_samples;
    ComplexMatrix r = reverse_sites(hamiltonian_at(z_odd - z, params, h0, d).conjugate());
    r -= hamiltonian_at(z_odd + z, params, h0, d);
    const Complex shift = r.trace() / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) -= shift;
    worst = std::max(worst, r.frobenius_norm());
  }
  return worst;
}

}  // namespace fssh
