#pragma once

#include <string_view>

#include "floquet_ssh/complex_matrix.hpp"

namespace fssh {

// Zero point n0 of the linear gradient (n - n0).
//   Paper     : N/2 for even N, (N+1)/2 for odd N
//   PaperEven : N/2
//   PaperOdd  : (N+1)/2
//   Centered  : (N+1)/2, which makes the gradient exactly antisymmetric under site reversal
enum class N0Rule { Paper, PaperEven, PaperOdd, Centered };

std::string_view to_string(N0Rule rule);
N0Rule parse_n0_rule(std::string_view text);

// Physical parameters of the driven gain/loss SSH chain. Site indices are 1-based.
struct ModelParams {
  int n_sites = 40;
  double tunneling = 1.0;
  double lambda = 0.4;
  double phi_dim = 0.0;  // dimerization phase
  double gamma = 0.0;    // gain on site j, loss on site N-j+1
  int impurity_site = 2;
  double kappa = 0.0;    // dimensionless drive strength; drive amplitude is kappa*omega
  double omega = 1.0;    // drive frequency, period 2*pi/omega
  double phase0 = 0.0;   // initial drive phase
  N0Rule n0_rule = N0Rule::Paper;

  double period() const;
  double n0() const;
  int loss_site() const { return n_sites - impurity_site + 1; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Throws ConfigError on violated invariants.
void validate(const ModelParams& params);

// Hopping -T(1 + lambda cos(pi n + Phi)) on bond (n, n+1) plus the +-i*gamma impurities.
// The z-dependent gradient is not included.
ComplexMatrix build_static_hamiltonian(const ModelParams& params);

// Hopping amplitude on bond (n, n+1), n in [1, N-1].
double bond_hopping(const ModelParams& params, int n);

// diag(n - n0).
ComplexMatrix drive_operator(const ModelParams& params);

// f(z) = kappa * omega * sin(omega z + phase0).
double drive_value(double z, const ModelParams& params);

ComplexMatrix hamiltonian_at(double z, const ModelParams& params);

// Same as hamiltonian_at but reuses prebuilt static and drive parts.
ComplexMatrix hamiltonian_at(double z, const ModelParams& params, const ComplexMatrix& h_static,
                             const ComplexMatrix& drive);

}  // namespace fssh
