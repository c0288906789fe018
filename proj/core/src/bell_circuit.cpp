// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <string>

#include "qshadow/error.hpp"
#include "qshadow/shadows.hpp"

namespace qshadow {

StateSource StateSource::pure(const PureState& psi) {
  StateSource s(psi.qubits(), DensityMatrix::from_pure(psi));
  s.components_.push_back(psi.vector());
  s.cumulative_.push_back(1.0);
  return s;
}

StateSource StateSource::mixed(const DensityMatrix& rho) {
  StateSource s(rho.qubits(), rho);
  const auto eig = hermitian_eig(rho.matrix());
  double acc = 0.0;
  for (std::size_t j = 0; j < eig.values.size(); ++j) {
    // Eigenvalues are descending, so once they reach zero the rest do too.
    if (eig.values[j] <= 0.0) break;
    acc += eig.values[j];
    s.components_.push_back(eig.vectors.column(j));
    s.cumulative_.push_back(acc);
  }
  if (s.components_.empty()) throw Error(ErrorKind::InvalidArgument, "density matrix is zero");
  return s;
}

std::span<const Complex> StateSource::draw(Stream& rng) const {
  if (components_.size() == 1) return components_.front();
  const double u = rng.uniform() * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                       components_.size() - 1);
  return components_[j];
}

std::vector<double> outcome_distribution(const DensityMatrix& rho, const PureState& zeta) {
  const int n = zeta.qubits();
  if (rho.qubits() != n) throw Error(ErrorKind::DimMismatch, "ρ and ζ qubit counts differ");
  if (n > kMaxTableQubits) {
    throw Error(ErrorKind::SizeLimit, "outcome table limited to " +
                                          std::to_string(kMaxTableQubits) + " qubits");
  }
  const std::size_t dim = zeta.dim();
  const auto zeta_conj = conjugate(zeta);
  std::vector<double> table(dim * dim);
  CVector v(dim);
  const double scale = 1.0 / static_cast<double>(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      apply_pauli(zeta_conj.amplitudes(), x, z, v);
      table[x * dim + z] = scale * expectation(rho.matrix(), v);
    }
  }
  return table;
}

namespace {

void apply_cnot(std::span<Complex> state, std::uint64_t control, std::uint64_t target) {
  for (std::uint64_t j = 0; j < state.size(); ++j) {
    if ((j & control) && !(j & target)) std::swap(state[j], state[j | target]);
  }
}

void apply_hadamard(std::span<Complex> state, std::uint64_t bit) {
  const double h = 1.0 / std::sqrt(2.0);
  for (std::uint64_t j = 0; j < state.size(); ++j) {
    if (j & bit) continue;
    const Complex a = state[j];
    const Complex b = state[j | bit];
    state[j] = h * (a + b);
    state[j | bit] = h * (a - b);
  }
}

}  // namespace

PauliMask bell_measure_circuit(int qubits, std::span<const Complex> psi,
                               std::span<const Complex> zeta, Stream& rng,
                               std::span<Complex> joint) {
  if (qubits > kMaxCircuitQubits) {
    throw Error(ErrorKind::SizeLimit, "circuit simulation limited to " +
                                          std::to_string(kMaxCircuitQubits) + " qubits");
  }
  const std::size_t dim = basis_dim(qubits);
  if (psi.size() != dim || zeta.size() != dim || joint.size() != dim * dim) {
    throw Error(ErrorKind::DimMismatch, "circuit register sizes");
  }
  // First register (ψ) occupies the high n bits of the joint index.
  for (std::size_t r1 = 0; r1 < dim; ++r1) {
    for (std::size_t r2 = 0; r2 < dim; ++r2) joint[r1 * dim + r2] = psi[r1] * zeta[r2];
  }
  for (int q = 0; q < qubits; ++q) {
    const std::uint64_t second = qubit_bit(qubits, q);
    apply_cnot(joint, second << qubits, second);
  }
  for (int q = 0; q < qubits; ++q) apply_hadamard(joint, qubit_bit(qubits, q) << qubits);

  double total = 0.0;
  for (const auto& a : joint) total += std::norm(a);
  double u = rng.uniform() * total;
  std::size_t outcome = joint.size() - 1;
  for (std::size_t j = 0; j < joint.size(); ++j) {
    const double p = std::norm(joint[j]);
    u -= p;
    if (u < 0.0 && p > 0.0) {
      outcome = j;
      break;
    }
  }
  // Round-off can exhaust u; fall back to the last outcome with weight.
  if (u >= 0.0) {
    while (outcome > 0 && std::norm(joint[outcome]) == 0.0) --outcome;
  }
  return PauliMask{qubits, outcome & (dim - 1), outcome >> qubits};
}

PauliMask bell_measure_circuit(const PureState& psi, const PureState& zeta, Stream& rng) {
  if (psi.qubits() != zeta.qubits()) {
    throw Error(ErrorKind::DimMismatch, "ψ and ζ qubit counts differ");
  }
  CVector joint(psi.dim() * zeta.dim());
  return bell_measure_circuit(psi.qubits(), psi.amplitudes(), zeta.amplitudes(), rng, joint);
}

}  // namespace qshadow
