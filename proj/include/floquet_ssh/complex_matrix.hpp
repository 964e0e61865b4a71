#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fssh {

using Complex = std::complex<double>;

// Dense square complex matrix, column-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> entries);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row + col * dim_]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row + col * dim_];
  }

  std::span<Complex> column(std::size_t col) { return {data_.data() + col * dim_, dim_}; }
  std::span<const Complex> column(std::size_t col) const {
    return {data_.data() + col * dim_, dim_};
  }

  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  // Maximum absolute column sum.
  double norm1() const;
  double frobenius_norm() const;
  double max_abs() const;
  Complex trace() const;
  bool all_finite() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);

// Matrix product. Columns of the result are distributed over OpenMP threads
// once the dimension reaches kParallelMatmulThreshold; every entry is
// accumulated in the same order as matmul_serial, so both give identical bits.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul_serial(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr std::size_t kParallelMatmulThreshold = 96;

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x);

// Site reversal n <-> N+1-n applied as P * m * P.
ComplexMatrix reverse_sites(const ComplexMatrix& m);

}  // namespace fssh
