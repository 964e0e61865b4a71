#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "floquet_ssh/complex_matrix.hpp"
#include "floquet_ssh/model.hpp"

namespace fssh {

enum class Method { ExtendedMatrix, Propagator, StaticEffective, Static };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

// N physical (quasi-)energies of the chain, sorted with spectral_less after folding.
struct FloquetSpectrum {
  ModelParams params;
  std::vector<Complex> quasi_energies;
  // mode_weights[k][site]: |amplitude|^2 of mode k on each lattice site, summing to 1.
  std::vector<std::vector<double>> mode_weights;
  Method method = Method::Static;
  int n_floquet = 0;  // harmonics kept on each side; 0 for non-extended methods
  int n_steps = 0;    // propagator steps; 0 for other methods
  double omega = 0.0;  // folding modulus; 0 means the real parts are not folded
  std::vector<std::string> diagnostics;

  std::size_t size() const { return quasi_energies.size(); }
};

inline constexpr std::size_t kDefaultDimensionCap = 8192;
inline constexpr int kMaxFloquetHarmonics = 512;

// Fourier components of f(z) = kappa*omega*sin(omega z + phase0):
// f(z) = c_plus e^{i omega z} + c_minus e^{-i omega z}.
Complex drive_fourier_plus(const ModelParams& params);
Complex drive_fourier_minus(const ModelParams& params);

// Truncated extended-zone matrix of dimension N(2 n_floquet + 1). Block (m, m') holds
// H_static + m*omega*I on the diagonal and c_plus*D / c_minus*D for m - m' = +1 / -1.
// Harmonic m occupies rows [(m + n_floquet) N, (m + n_floquet + 1) N).
ComplexMatrix build_floquet_matrix(const ModelParams& params, int n_floquet,
                                   std::size_t dim_cap = kDefaultDimensionCap);

FloquetSpectrum quasi_energies_extended(const ModelParams& params, int n_floquet,
                                        std::size_t dim_cap = kDefaultDimensionCap);

// max(1024, ceil(64 |H|_1 Z_p)).
int default_propagator_steps(const ModelParams& params);

// Midpoint exponential product over one period, then eps = (i/Z_p) log(mu).
FloquetSpectrum quasi_energies_propagator(const ModelParams& params, int n_steps);

// Doubles n_steps from start_steps until no quasi-energy moves by tol or more.
// Throws SolverError(StepNonConvergence) past max_steps.
FloquetSpectrum quasi_energies_propagator_converged(const ModelParams& params, int start_steps,
                                                    double tol, int max_steps = 1 << 20);

struct NfConvergence {
  int n_floquet = 0;
  double last_delta = 0.0;  // distance between the spectra at n_floquet and n_floquet + 2
};

// Smallest N_F whose physical spectrum moves by less than tol when N_F -> N_F + 2.
// Doubling from 2, then bisection.
NfConvergence converge_nf_detailed(const ModelParams& params, double tol,
                                   std::size_t dim_cap = kDefaultDimensionCap);
int converge_nf(const ModelParams& params, double tol,
                std::size_t dim_cap = kDefaultDimensionCap);

// Unfolded spectrum of a static Hamiltonian.
FloquetSpectrum spectrum_of_hamiltonian(const ComplexMatrix& h, const ModelParams& params,
                                        Method method);

// Quasi-energy multiset distance used throughout: optimal pairing, Re folded by omega.
double spectrum_distance(const FloquetSpectrum& a, const FloquetSpectrum& b);

}  // namespace fssh
