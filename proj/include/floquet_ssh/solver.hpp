#pragma once

#include "floquet_ssh/floquet.hpp"
#include "floquet_ssh/model.hpp"

namespace fssh {

struct SolverOptions {
  Method method = Method::ExtendedMatrix;
  int n_floquet = 0;  // 0: converge_nf at nf_tol
  double nf_tol = 1e-8;
  int n_steps = 0;    // 0: default_propagator_steps
  bool enforce_step_convergence = false;
  double step_tol = 1e-8;
  std::size_t dim_cap = kDefaultDimensionCap;
};

// One spectrum of the chosen method. Static ignores the drive; StaticEffective
// diagonalizes the Bessel-rescaled Hamiltonian.
FloquetSpectrum compute_spectrum(const ModelParams& params, const SolverOptions& options);

}  // namespace fssh
