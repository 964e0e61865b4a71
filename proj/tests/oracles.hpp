// Reference implementations used only by the tests. None of them call into the
// library's numerical kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "floquet_ssh/complex_matrix.hpp"

namespace oracle {

using fssh::Complex;
using fssh::ComplexMatrix;

inline ComplexMatrix random_matrix(std::size_t n, std::uint32_t seed, double scale = 1.0) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, scale);
  ComplexMatrix m(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = {dist(gen), dist(gen)};
  return m;
}

inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

// exp(A) as a Taylor series after scaling by 2^-s, then squaring.
inline ComplexMatrix taylor_expm(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  double norm = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(a(i, j)) * n);
  int s = 0;
  while (norm > 0.25) {
    norm /= 2.0;
    ++s;
  }
  ComplexMatrix scaled = a;
  const double f = std::ldexp(1.0, -s);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= f;
  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k < 40; ++k) {
    term = naive_matmul(term, scaled);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        term(i, j) /= static_cast<double>(k);
        result(i, j) += term(i, j);
      }
  }
  for (int k = 0; k < s; ++k) result = naive_matmul(result, result);
  return result;
}

// J0 by its power series in long double.
inline long double bessel_j0_series(long double x) {
  const long double q = -x * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-30L * std::fabs(sum) && k > 10) break;
  }
  return sum;
}

// Composite trapezoid rule on a periodic integrand over [0, period).
template <typename F>
auto periodic_trapezoid(F f, double period, int samples) {
  using R = decltype(f(0.0));
  R sum{};
  const double h = period / samples;
  for (int k = 0; k < samples; ++k) sum += f(k * h);
  return sum * h;
}

// Fourth-order Runge-Kutta for i dpsi/dz = H(z) psi, integrating all basis vectors.
inline ComplexMatrix rk4_propagator(const std::function<ComplexMatrix(double)>& h, double period,
                                    int steps) {
  const std::size_t n = h(0.0).dim();
  ComplexMatrix u = ComplexMatrix::identity(n);
  const double dz = period / steps;
  const Complex mi(0.0, -1.0);
  auto rhs = [&](double z, const ComplexMatrix& y) {
    ComplexMatrix d = naive_matmul(h(z), y);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) d(i, j) *= mi;
    return d;
  };
  auto axpy = [&](const ComplexMatrix& y, const ComplexMatrix& k, double c) {
    ComplexMatrix r = y;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) r(i, j) += c * k(i, j);
    return r;
  };
  for (int s = 0; s < steps; ++s) {
    const double z = s * dz;
    const ComplexMatrix k1 = rhs(z, u);
    const ComplexMatrix k2 = rhs(z + dz / 2, axpy(u, k1, dz / 2));
    const ComplexMatrix k3 = rhs(z + dz / 2, axpy(u, k2, dz / 2));
    const ComplexMatrix k4 = rhs(z + dz, axpy(u, k3, dz));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        u(i, j) += dz / 6.0 * (k1(i, j) + 2.0 * k2(i, j) + 2.0 * k3(i, j) + k4(i, j));
  }
  return u;
}

// Eigenvalues of a 2x2 matrix from the characteristic polynomial.
inline std::vector<Complex> eig2(const ComplexMatrix& m) {
  const Complex tr = m(0, 0) + m(1, 1);
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex disc = std::sqrt(tr * tr / 4.0 - det);
  return {tr / 2.0 - disc, tr / 2.0 + disc};
}

// Companion matrix of prod_k (x - roots[k]).
inline ComplexMatrix companion(const std::vector<Complex>& roots) {
  const std::size_t n = roots.size();
  std::vector<Complex> c(n + 1, Complex{});  // c[k] coefficient of x^k
  c[0] = 1.0;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Complex> next(n + 1, Complex{});
    for (std::size_t k = 0; k <= r; ++k) {
      next[k + 1] += c[k];
      next[k] -= roots[r] * c[k];
    }
    c = next;
  }
  ComplexMatrix m(n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -c[i];
  return m;
}

// Minimum total pairwise distance over all permutations; small n only.
inline double brute_force_matching_cost(const std::vector<Complex>& a,
                                        const std::vector<Complex>& b) {
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = INFINITY;
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[perm[i]]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Random unitary from Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::uint32_t seed) {
  ComplexMatrix q = random_matrix(n, seed);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot{};
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

// Sorted copy of a multiset of complex numbers, for order-independent comparisons.
inline std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

// Tight-binding matrix built entry by entry from the model definition.
inline ComplexMatrix ssh_reference(int n, double t, double lambda, double phi, double gamma,
                                   int j) {
  ComplexMatrix h(static_cast<std::size_t>(n));
  for (int site = 1; site < n; ++site) {
    const double sign = (site % 2 == 0) ? 1.0 : -1.0;
    const double hop = -t * (1.0 + lambda * sign * std::cos(phi));
    h(site - 1, site) = hop;
    h(site, site - 1) = hop;
  }
  if (gamma != 0.0) {
    h(j - 1, j - 1) += Complex(0.0, gamma);
    h(n - j, n - j) += Complex(0.0, -gamma);
  }
  return h;
}

}  // namespace oracle
