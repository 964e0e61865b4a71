#include "floquet_ssh/solver.hpp"

#include "floquet_ssh/effective.hpp"

namespace fssh {

FloquetSpectrum compute_spectrum(const ModelParams& params, const SolverOptions& options) {
  switch (options.method) {
    case Method::Static:
      return spectrum_of_hamiltonian(build_static_hamiltonian(params), params, Method::Static);
    case Method::StaticEffective:
      return spectrum_of_hamiltonian(effective_hamiltonian(params), params,
                                     Method::StaticEffective);
    case Method::Propagator: {
      const int steps =
          options.n_steps > 0 ? options.n_steps : default_propagator_steps(params);
      if (options.enforce_step_convergence) {
        return quasi_energies_propagator_converged(params, steps, options.step_tol);
      }
      return quasi_energies_propagator(params, steps);
    }
    case Method::ExtendedMatrix: {
      const int nf = options.n_floquet > 0
                         ? options.n_floquet
                         : converge_nf(params, options.nf_tol, options.dim_cap);
      return quasi_energies_extended(params, nf, options.dim_cap);
    }
  }
  return {};
}

}  // namespace fssh
