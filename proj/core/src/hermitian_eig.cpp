// SPDX-License-Identifier: Apache-2.0
//
// Complex Hermitian eigensolver:
//   1. Householder reduction A = Q T Q^† with T Hermitian tridiagonal.
//   2. Diagonal phase rotation D so that D^† T D is real symmetric.
//   3. Implicit-shift QL on the real tridiagonal (the EISPACK tql2 scheme),
//      with the plane rotations applied directly to Z = Q D.
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qshadow/error.hpp"
#include "qshadow/linalg.hpp"

namespace qshadow {

namespace {

constexpr int kMaxSweepsPerEigenvalue = 60;

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1; off[n-1] == 0
  CMatrix basis;            // Z, empty when vectors are not requested
};

CMatrix symmetrised(const CMatrix& m) {
  require_hermitian(m);
  const std::size_t n = m.rows();
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  return a;
}

Tridiagonal householder_reduce(CMatrix a, bool want_vectors) {
  const std::size_t n = a.rows();
  CMatrix q = want_vectors ? CMatrix::identity(n) : CMatrix();
  std::vector<Complex> sub(n, 0.0);  // sub[k] = T(k+1, k)
  CVector v(n), p(n), qv(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // length of the reflected block
    double xnorm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) xnorm2 += std::norm(a(k + 1 + i, k));
    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = a(k + 1, k);
    if (xnorm == 0.0) {
      sub[k] = 0.0;
      continue;
    }
    const double ax0 = std::abs(x0);
    const Complex phase = ax0 > 0.0 ? x0 / ax0 : Complex(1.0, 0.0);
    const Complex alpha = -phase * xnorm;

    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    const double vnorm = std::sqrt(2.0 * xnorm * (xnorm + ax0));
    if (vnorm == 0.0) {
      sub[k] = x0;
      continue;
    }
    for (std::size_t i = 0; i < m; ++i) v[i] /= vnorm;

    // Trailing block S <- H S H with H = I - 2 v v^†, as a rank-2 update
    // S - v w^† - w v^†, w = 2 S v - 2 (v^† S v) v.
    double kappa = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += a(k + 1 + i, k + 1 + j) * v[j];
      p[i] = acc;
      kappa += (std::conj(v[i]) * acc).real();
    }
    for (std::size_t i = 0; i < m; ++i) p[i] = 2.0 * p[i] - 2.0 * kappa * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      const Complex vi = v[i];
      const Complex pi = p[i];
      for (std::size_t j = 0; j < m; ++j) {
        a(k + 1 + i, k + 1 + j) -= vi * std::conj(p[j]) + pi * std::conj(v[j]);
      }
    }
    sub[k] = alpha;
    for (std::size_t i = 1; i < m; ++i) {
      a(k + 1 + i, k) = 0.0;
      a(k, k + 1 + i) = 0.0;
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);

    if (want_vectors) {
      // Q <- Q H on columns k+1..n-1.
      for (std::size_t r = 0; r < n; ++r) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += q(r, k + 1 + j) * v[j];
        qv[r] = 2.0 * acc;
      }
      for (std::size_t r = 0; r < n; ++r) {
        const Complex s = qv[r];
        if (s == Complex{}) continue;
        for (std::size_t j = 0; j < m; ++j) q(r, k + 1 + j) -= s * std::conj(v[j]);
      }
    }
  }
  if (n >= 2) sub[n - 2] = a(n - 1, n - 2);

  Tridiagonal out;
  out.diag.resize(n);
  out.off.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = a(i, i).real();

  // Phase rotation: d_0 = 1, d_{k+1} = d_k * sub_k / |sub_k|.
  std::vector<Complex> phases(n, 1.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double mag = std::abs(sub[k]);
    out.off[k] = mag;
    phases[k + 1] = mag > 0.0 ? phases[k] * (sub[k] / mag) : phases[k];
  }
  if (want_vectors) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) q(r, c) *= phases[c];
    }
    out.basis = std::move(q);
  }
  return out;
}

void implicit_ql(std::vector<double>& d, std::vector<double>& e, CMatrix* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  const double eps = std::numeric_limits<double>::epsilon();
  double shift_total = 0.0;
  double tst1 = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweepsPerEigenvalue) {
          throw Error(ErrorKind::NoConvergence,
                      "implicit QL did not converge for eigenvalue " + std::to_string(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (z != nullptr) {
            for (std::size_t k = 0; k < n; ++k) {
              const Complex zh = (*z)(k, ii + 1);
              const Complex zi = (*z)(k, ii);
              (*z)(k, ii + 1) = s * zi + c * zh;
              (*z)(k, ii) = c * zi - s * zh;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }
}

}  // namespace

HermitianEigen hermitian_eig(const CMatrix& m) {
  auto tri = householder_reduce(symmetrised(m), true);
  implicit_ql(tri.diag, tri.off, &tri.basis);

  const std::size_t n = tri.diag.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tri.diag[a] > tri.diag[b]; });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = tri.diag[order[j]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = tri.basis(r, order[j]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  auto tri = householder_reduce(symmetrised(m), false);
  implicit_ql(tri.diag, tri.off, nullptr);
  std::sort(tri.diag.begin(), tri.diag.end(), std::greater<>());
  return tri.diag;
}

}  // namespace qshadow
