#include "floquet_ssh/complex_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fssh {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("matrix dimension mismatch");
  }
}

// One column of a * b; shared by both matmul paths so accumulation order matches.
inline void product_column(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
                           std::size_t col) {
  const std::size_t n = a.dim();
  Complex* out = c.data() + col * n;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex bkj = b(k, col);
    if (bkj == Complex{}) continue;
    const Complex* ak = a.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) out[i] += ak[i] * bkj;
  }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t i = 0; i < dim_; ++i) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(*this);
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

double ComplexMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    double sum = 0.0;
    for (const auto& v : column(j)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& v : data_) sum += std::norm(v);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& v : data_) best = std::max(best, std::abs(v));
  return best;
}

Complex ComplexMatrix::trace() const {
  Complex sum{};
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  ComplexMatrix c(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) product_column(a, b, c, j);
  return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  const auto cols = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelMatmulThreshold)
  for (std::ptrdiff_t j = 0; j < cols; ++j) product_column(a, b, c, static_cast<std::size_t>(j));
  return c;
}

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x) {
  assert(x.size() == a.dim());
  const std::size_t n = a.dim();
  std::vector<Complex> y(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex xk = x[k];
    const Complex* ak = a.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) y[i] += ak[i] * xk;
  }
  return y;
}

ComplexMatrix reverse_sites(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = m(n - 1 - i, n - 1 - j);
  return out;
}

}  // namespace fssh
