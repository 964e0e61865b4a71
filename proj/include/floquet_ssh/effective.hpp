#pragma once

#include <vector>

#include "floquet_ssh/complex_matrix.hpp"
#include "floquet_ssh/floquet.hpp"
#include "floquet_ssh/model.hpp"

namespace fssh {

// Bessel function of the first kind, order zero. Power series for |x| <= 20
// (absolute error below 1e-13), Hankel asymptotic expansion beyond.
double bessel_j0(double x);

// Static Hamiltonian with T replaced by T * J0(kappa); no gradient term.
ComplexMatrix effective_hamiltonian(const ModelParams& params);

struct EffectiveComparison {
  double t_eff = 0.0;
  double max_quasi_energy_deviation = 0.0;
  std::vector<double> per_mode_deviation;  // aligned with floquet.quasi_energies
  double omega = 0.0;
  FloquetSpectrum floquet;
  std::vector<Complex> effective_eigenvalues;
};

// Extended-matrix quasi-energies versus eigenvalues of the effective Hamiltonian.
// n_floquet <= 0 selects N_F with converge_nf at tolerance 1e-8.
// Throws ConfigError(Aliasing) when omega/2 <= max |Re eig(H_eff)|.
EffectiveComparison compare_floquet_effective(const ModelParams& params, int n_floquet);

}  // namespace fssh
