// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qshadow {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const double> values);
  /// |a><b|
  static CMatrix outer(std::span<const Complex> a, std::span<const Complex> b);
  static CMatrix projector(std::span<const Complex> v) { return outer(v, v); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<Complex> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Complex> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  CVector column(std::size_t c) const;

  CMatrix adjoint() const;
  CMatrix conjugate() const;
  CMatrix transpose() const;
  Complex trace() const;
  double max_abs() const noexcept;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s) noexcept;

  /// this += s * |v><v|
  void add_projector(std::span<const Complex> v, double s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CVector operator*(const CMatrix& m, std::span<const Complex> v);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);
/// <v|M|v>, real part only; M is assumed Hermitian.
double expectation(const CMatrix& m, std::span<const Complex> v);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(std::span<const Complex> a, std::span<const Complex> b);
/// v ⊗ v ⊗ ... (t factors)
CVector tensor_power(std::span<const Complex> v, int t);

/// Tr_B of an operator on C^{dim_a} ⊗ C^{dim_b}.
CMatrix partial_trace_second(const CMatrix& m, std::size_t dim_a, std::size_t dim_b);

double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius_norm(const CMatrix& m);

/// Entrywise Hermiticity with tolerance `rel_tol * max(1, max|M_ij|)`.
bool is_hermitian(const CMatrix& m, double rel_tol = 1e-10);
/// Throws Error{NonHermitian} (or DimMismatch for non-square input).
void require_hermitian(const CMatrix& m, double rel_tol = 1e-10);

struct HermitianEigen {
  std::vector<double> values;  ///< descending
  CMatrix vectors;             ///< column j belongs to values[j]
};

/// Householder tridiagonalisation followed by implicit-shift QL.
/// The input is symmetrised as (M + M^†)/2 after the Hermiticity check.
HermitianEigen hermitian_eig(const CMatrix& m);
/// Same reduction without accumulating eigenvectors.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

double trace_norm(const CMatrix& m);
double operator_norm(const CMatrix& m);

}  // namespace qshadow
