#include "floquet_ssh/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "floquet_ssh/errors.hpp"
#include "floquet_ssh/linalg.hpp"
#include "floquet_ssh/matching.hpp"

namespace fssh {

namespace {

// Below this the extended-precision series loses < 1e-13 to cancellation; above it the
// asymptotic expansion is accurate to ~exp(-2x).
constexpr double kSeriesLimit = 20.0;

double j0_series(double x) {
  // sum_k (-1)^k (x/2)^{2k} / (k!)^2, accumulated in extended precision
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k <= 120; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

double j0_asymptotic(double x) {
  // J0(x) ~ sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)] with
  // b_k = prod_{m<=k} (-(2m-1)^2) / (k! (8x)^k), P = sum_j (-1)^j b_2j, Q = sum_j (-1)^j b_2j+1.
  double p = 0.0;
  double q = 0.0;
  double term = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) term *= -static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag > previous) break;  // asymptotic series started diverging
    previous = mag;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (mag < 1e-17) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  const double ax = std::abs(x);
  if (ax <= kSeriesLimit) return j0_series(ax);
  return j0_asymptotic(ax);
}

ComplexMatrix effective_hamiltonian(const ModelParams& params) {
  ModelParams scaled = params;
  scaled.tunneling = params.tunneling * bessel_j0(params.kappa);
  return build_static_hamiltonian(scaled);
}

EffectiveComparison compare_floquet_effective(const ModelParams& params, int n_floquet) {
  validate(params);
  EffectiveComparison out;
  out.t_eff = params.tunneling * bessel_j0(params.kappa);
  out.omega = params.omega;
  out.effective_eigenvalues = eigenvalues_dense(effective_hamiltonian(params));

  double max_re = 0.0;
  for (const auto& e : out.effective_eigenvalues) max_re = std::max(max_re, std::abs(e.real()));
  if (!(0.5 * params.omega > max_re)) {
    throw ConfigError("omega/2 = " + std::to_string(0.5 * params.omega) +
                          " does not exceed the effective bandwidth " + std::to_string(max_re) +
                          "; folded quasi-energies would alias",
                      FailureCode::Aliasing);
  }

  const int nf = n_floquet > 0 ? n_floquet : converge_nf(params, 1e-8);
  out.floquet = quasi_energies_extended(params, nf);
  out.per_mode_deviation =
      matched_deviations(out.floquet.quasi_energies, out.effective_eigenvalues, params.omega);
  out.max_quasi_energy_deviation =
      out.per_mode_deviation.empty()
          ? 0.0
          : *std::max_element(out.per_mode_deviation.begin(), out.per_mode_deviation.end());
  return out;
}

}  // namespace fssh
