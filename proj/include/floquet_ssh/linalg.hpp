#pragma once

#include <vector>

#include "floquet_ssh/complex_matrix.hpp"

namespace fssh {

// Relative residual bound promised by eig_dense, scaled by the matrix 1-norm.
inline constexpr double kEigResidualTol = 1e-10;

// Eigenpairs of a dense matrix, sorted by ascending real part, then imaginary part.
struct Spectrum {
  std::vector<Complex> eigenvalues;
  ComplexMatrix eigenvectors;  // column k is the unit-norm right eigenvector of eigenvalues[k]
  double max_residual = 0.0;   // max_k |M v_k - lambda_k v_k|
  int qr_iterations = 0;
};

// Ordering used for every spectrum in the library.
bool spectral_less(const Complex& a, const Complex& b);

// Full eigendecomposition: Householder Hessenberg reduction, single-shift complex QR
// with Wilkinson shifts, then back substitution on the Schur form.
// Throws SolverError(NonConvergence) if the QR iteration stalls.
Spectrum eig_dense(const ComplexMatrix& m);

// Eigenvalues only (no Schur vectors accumulated), same ordering.
std::vector<Complex> eigenvalues_dense(const ComplexMatrix& m);

// Scaling and squaring with diagonal Pade approximants of degree 3..13.
// Throws SolverError(Overflow) for non-finite input or output.
ComplexMatrix expm(const ComplexMatrix& m);

// Solves a x = b by LU with partial pivoting. Throws SolverError on a singular a.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix inverse(const ComplexMatrix& a);

struct EigenLogs {
  std::vector<Complex> logs;  // principal logs, Im in (-pi, pi]
  Spectrum spectrum;          // eigenpairs of the input, logs[k] belongs to eigenvalues[k]
  double eigenvector_condition = 0.0;  // 1-norm condition number of the eigenvector matrix
};

// Principal logarithms of the eigenvalues of u. An imaginary part of exactly -pi is
// mapped to +pi. Throws SolverError(PropagatorCollapse) if any |mu| < 1e-14.
std::vector<Complex> logm_eig(const ComplexMatrix& u);
EigenLogs logm_eig_decomposed(const ComplexMatrix& u);

Complex principal_log(const Complex& mu);

}  // namespace fssh
