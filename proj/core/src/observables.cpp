// SPDX-License-Identifier: Apache-2.0
#include "qshadow/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qshadow/error.hpp"

namespace qshadow {

namespace {

// Eigenvalues closer than this (relative to ‖O‖∞) share a projector.
constexpr double kGroupingTolerance = 1e-8;

CMatrix pauli_matrix(char label) {
  CMatrix m(2, 2);
  switch (label) {
    case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = Complex(0.0, -1.0); m(1, 0) = Complex(0.0, 1.0); break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default:
      throw Error(ErrorKind::InvalidArgument, std::string("unknown Pauli label '") + label + "'");
  }
  return m;
}

}  // namespace

Observable::Observable(int qubits, CMatrix matrix) : qubits_(qubits), matrix_(std::move(matrix)) {
  require_qubits(qubits);
  if (matrix_.rows() != basis_dim(qubits) || matrix_.cols() != basis_dim(qubits)) {
    throw Error(ErrorKind::DimMismatch, "observable must be 2^n x 2^n");
  }
  auto eig = hermitian_eig(matrix_);
  eigenvectors_ = std::move(eig.vectors);
  const auto& values = eig.values;

  op_norm_ = std::max(std::abs(values.front()), std::abs(values.back()));
  const double tol = kGroupingTolerance * std::max(op_norm_, 1e-300);
  // values are descending; a new level starts when the gap to the level's
  // first eigenvalue exceeds the tolerance.
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (levels_.empty() || std::abs(values[levels_.back().first] - values[j]) > tol) {
      levels_.push_back({values[j], j, 1});
    } else {
      ++levels_.back().multiplicity;
    }
  }
  for (auto& level : levels_) {
    double mean = 0.0;
    for (std::size_t j = level.first; j < level.first + level.multiplicity; ++j) mean += values[j];
    level.value = mean / static_cast<double>(level.multiplicity);
  }

  trace_ = matrix_.trace().real();
  double tr_sq = 0.0;
  for (const auto& x : matrix_.entries()) tr_sq += std::norm(x);
  traceless_sq_ = tr_sq - trace_ * trace_ / static_cast<double>(dim());
}

Observable Observable::pauli(std::string_view label) {
  if (label.empty()) throw Error(ErrorKind::InvalidArgument, "empty Pauli label");
  CMatrix m = pauli_matrix(label.front());
  for (std::size_t i = 1; i < label.size(); ++i) m = kron(m, pauli_matrix(label[i]));
  return Observable(static_cast<int>(label.size()), std::move(m));
}

Observable Observable::gue(int qubits, Stream& rng) {
  require_qubits(qubits);
  const std::size_t dim = basis_dim(qubits);
  CMatrix g(dim, dim);
  for (auto& x : g.entries()) x = rng.complex_normal();
  CMatrix h = g + g.adjoint();
  h *= 0.5;
  return Observable(qubits, std::move(h));
}

Observable Observable::random_projector(int qubits, int rank, Stream& rng) {
  require_qubits(qubits);
  const std::size_t dim = basis_dim(qubits);
  if (rank < 1 || static_cast<std::size_t>(rank) > dim) {
    throw Error(ErrorKind::InvalidArgument, "projector rank out of range");
  }
  // Gram-Schmidt over Haar vectors.
  std::vector<CVector> basis;
  while (basis.size() < static_cast<std::size_t>(rank)) {
    CVector v = haar_sample(qubits, rng).vector();
    for (const auto& b : basis) {
      const Complex c = inner(b, v);
      for (std::size_t i = 0; i < dim; ++i) v[i] -= c * b[i];
    }
    const double nrm = norm(v);
    if (nrm < 1e-8) continue;
    for (auto& x : v) x /= nrm;
    basis.push_back(std::move(v));
  }
  CMatrix p(dim, dim);
  for (const auto& b : basis) p.add_projector(b, 1.0);
  return Observable(qubits, std::move(p));
}

CMatrix Observable::level_projector(std::size_t level) const {
  const auto& lv = levels_.at(level);
  CMatrix p(dim(), dim());
  for (std::size_t j = lv.first; j < lv.first + lv.multiplicity; ++j) {
    p.add_projector(eigenvectors_.column(j), 1.0);
  }
  return p;
}

bool Observable::is_positive() const noexcept {
  return min_eigenvalue() >= -1e-10 * std::max(1.0, op_norm_);
}

double Observable::expectation(std::span<const Complex> psi) const {
  return qshadow::expectation(matrix_, psi);
}

double Observable::expectation(const DensityMatrix& rho) const {
  if (rho.dim() != dim()) throw Error(ErrorKind::DimMismatch, "state/observable dimension");
  double acc = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) acc += (matrix_(i, j) * rho.matrix()(j, i)).real();
  }
  return acc;
}

Observable traceless_part(const Observable& o) {
  CMatrix m = o.matrix();
  const double shift = o.trace() / static_cast<double>(o.dim());
  for (std::size_t i = 0; i < o.dim(); ++i) m(i, i) -= shift;
  return Observable(o.qubits(), std::move(m));
}

Observable conjugate_observable(const Observable& o) {
  return Observable(o.qubits(), o.matrix().conjugate());
}

std::vector<double> level_probabilities(const Observable& o, std::span<const Complex> s) {
  if (s.size() != o.dim()) throw Error(ErrorKind::DimMismatch, "state/observable dimension");
  const auto& vecs = o.eigenvectors();
  std::vector<double> probs;
  probs.reserve(o.levels().size());
  for (const auto& level : o.levels()) {
    double p = 0.0;
    for (std::size_t j = level.first; j < level.first + level.multiplicity; ++j) {
      Complex amp = 0.0;
      for (std::size_t r = 0; r < o.dim(); ++r) amp += std::conj(vecs(r, j)) * s[r];
      p += std::norm(amp);
    }
    probs.push_back(p);
  }
  return probs;
}

double measure(const Observable& o, std::span<const Complex> s, Stream& rng) {
  const auto probs = level_probabilities(o, s);
  double total = 0.0;
  for (double p : probs) total += p;
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    u -= probs[i];
    if (u < 0.0) return o.levels()[i].value;
  }
  // u can survive the loop only through round-off; take the last level
  // with non-zero weight.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return o.levels()[i].value;
  }
  return o.levels().back().value;
}

double measure(const Observable& o, const PureState& s, Stream& rng) {
  return measure(o, s.amplitudes(), rng);
}

double shadow_estimate(const Observable& o, std::span<const Complex> zeta, const PauliMask& mask,
                       std::span<Complex> scratch) {
  if (zeta.size() != o.dim() || mask.qubits != o.qubits() || scratch.size() != o.dim()) {
    throw Error(ErrorKind::DimMismatch, "snapshot/observable dimension");
  }
  // v = X^x Z^z conj(ζ)
  const std::size_t dim = zeta.size();
  for (std::size_t b = 0; b < dim; ++b) {
    const bool flip = (std::popcount(static_cast<std::uint64_t>(b) & mask.z) & 1) != 0;
    const Complex c = std::conj(zeta[b]);
    scratch[b ^ mask.x] = flip ? -c : c;
  }
  const double scale = static_cast<double>(dim) + 1.0;
  return scale * qshadow::expectation(o.matrix(), scratch) - o.trace();
}

double shadow_estimate(const Observable& o, const PureState& zeta, const PauliMask& mask) {
  CVector scratch(o.dim());
  return shadow_estimate(o, zeta.amplitudes(), mask, scratch);
}

}  // namespace qshadow
