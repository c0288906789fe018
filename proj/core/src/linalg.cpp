// SPDX-License-Identifier: Apache-2.0
#include "qshadow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qshadow/error.hpp"

namespace qshadow {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::LengthMismatch,
                "matrix entries " + std::to_string(data_.size()) + " != " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  CMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

CMatrix CMatrix::conjugate() const {
  CMatrix m = *this;
  for (auto& x : m.data_) x = std::conj(x);
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  const std::size_t n = std::min(rows_, cols_);
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorKind::DimMismatch, "matrix addition shape mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorKind::DimMismatch, "matrix subtraction shape mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) noexcept {
  for (auto& x : data_) x *= s;
  return *this;
}

void CMatrix::add_projector(std::span<const Complex> v, double s) {
  if (rows_ != v.size() || cols_ != v.size()) {
    throw Error(ErrorKind::DimMismatch, "projector dimension mismatch");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    const Complex vi = s * v[i];
    if (vi == Complex{}) continue;
    Complex* out = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += vi * std::conj(v[j]);
  }
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimMismatch, "matrix product shape mismatch");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

CVector operator*(const CMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw Error(ErrorKind::DimMismatch, "matrix-vector shape mismatch");
  CVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc = 0.0;
    auto r = m.row(i);
    for (std::size_t j = 0; j < v.size(); ++j) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimMismatch, "inner product length mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

double expectation(const CMatrix& m, std::span<const Complex> v) {
  if (m.rows() != v.size() || m.cols() != v.size()) {
    throw Error(ErrorKind::DimMismatch, "expectation dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Complex row_dot = 0.0;
    auto r = m.row(i);
    for (std::size_t j = 0; j < v.size(); ++j) row_dot += r[j] * v[j];
    acc += (std::conj(v[i]) * row_dot).real();
  }
  return acc;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

CVector kron(std::span<const Complex> a, std::span<const Complex> b) {
  CVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  }
  return out;
}

CVector tensor_power(std::span<const Complex> v, int t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "tensor power requires t >= 1");
  CVector out(v.begin(), v.end());
  for (int k = 1; k < t; ++k) out = kron(out, v);
  return out;
}

CMatrix partial_trace_second(const CMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw Error(ErrorKind::DimMismatch, "partial trace dimension mismatch");
  }
  CMatrix out(dim_a, dim_a);
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t j = 0; j < dim_a; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < dim_b; ++k) acc += m(i * dim_b + k, j * dim_b + k);
      out(i, j) = acc;
    }
  }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimMismatch, "max_abs_diff shape mismatch");
  }
  double d = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) d = std::max(d, std::abs(ea[i] - eb[i]));
  return d;
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.entries()) s += std::norm(x);
  return std::sqrt(s);
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (!m.square()) return false;
  const double tol = rel_tol * std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

void require_hermitian(const CMatrix& m, double rel_tol) {
  if (!m.square()) {
    throw Error(ErrorKind::DimMismatch, "expected a square matrix, got " +
                                            std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()));
  }
  if (!is_hermitian(m, rel_tol)) throw Error(ErrorKind::NonHermitian, "matrix is not Hermitian");
}

double trace_norm(const CMatrix& m) {
  double s = 0.0;
  for (double x : hermitian_eigenvalues(m)) s += std::abs(x);
  return s;
}

double operator_norm(const CMatrix& m) {
  const auto values = hermitian_eigenvalues(m);
  if (values.empty()) return 0.0;
  return std::max(std::abs(values.front()), std::abs(values.back()));
}

}  // namespace qshadow
