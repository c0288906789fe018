// SPDX-License-Identifier: Apache-2.0
#include "qshadow/oracles/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qshadow/error.hpp"

namespace qshadow::oracles {

namespace {

CMatrix single(char which) {
  CMatrix m(2, 2);
  const double h = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 'H': m(0, 0) = h; m(0, 1) = h; m(1, 0) = h; m(1, 1) = -h; break;
    case '0': m(0, 0) = 1.0; break;  // |0⟩⟨0|
    case '1': m(1, 1) = 1.0; break;  // |1⟩⟨1|
    default: throw Error(ErrorKind::InvalidArgument, "unknown gate factor");
  }
  return m;
}

// ⊗ over qubits 0..count-1 (qubit 0 leftmost) of the listed factors.
CMatrix tensor(const std::string& factors) {
  CMatrix m = single(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) m = kron(m, single(factors[i]));
  return m;
}

CMatrix cnot(int total, int control, int target) {
  std::string off(static_cast<std::size_t>(total), 'I');
  std::string on(static_cast<std::size_t>(total), 'I');
  off[static_cast<std::size_t>(control)] = '0';
  on[static_cast<std::size_t>(control)] = '1';
  on[static_cast<std::size_t>(target)] = 'X';
  return tensor(off) + tensor(on);
}

}  // namespace

CMatrix bell_circuit_unitary(int qubits) {
  const int total = 2 * qubits;
  CMatrix u = CMatrix::identity(std::size_t{1} << total);
  for (int q = 0; q < qubits; ++q) u = cnot(total, q, qubits + q) * u;
  for (int q = 0; q < qubits; ++q) {
    std::string h(static_cast<std::size_t>(total), 'I');
    h[static_cast<std::size_t>(q)] = 'H';
    u = tensor(h) * u;
  }
  return u;
}

std::vector<double> circuit_outcome_table(const DensityMatrix& rho, const PureState& zeta) {
  return circuit_outcome_table(bell_circuit_unitary(zeta.qubits()), rho, zeta);
}

std::vector<double> circuit_outcome_table(const CMatrix& u, const DensityMatrix& rho,
                                          const PureState& zeta) {
  if (u.rows() != zeta.dim() * zeta.dim()) {
    throw Error(ErrorKind::DimMismatch, "circuit unitary does not match the register");
  }
  const CMatrix joint = kron(rho.matrix(), zeta.projector());
  const CMatrix out = u * joint * u.adjoint();
  const std::size_t dim = zeta.dim();
  std::vector<double> table(dim * dim);
  for (std::size_t z = 0; z < dim; ++z) {
    for (std::size_t x = 0; x < dim; ++x) table[x * dim + z] = out(z * dim + x, z * dim + x).real();
  }
  return table;
}

double power_iteration_norm(const CMatrix& m, Stream& rng, int iterations) {
  const CMatrix sq = m * m;
  CVector v(m.rows());
  for (auto& a : v) a = rng.complex_normal();
  const double start = norm(v);
  for (auto& a : v) a /= start;
  for (int it = 0; it < iterations; ++it) {
    CVector w = sq * v;
    const double nrm = norm(w);
    if (nrm == 0.0) return 0.0;
    for (auto& a : w) a /= nrm;
    v = std::move(w);
  }
  // Rayleigh quotient of M² on the converged vector.
  return std::sqrt(std::max(expectation(sq, v), 0.0));
}

double snapshot_matrix_estimate(const Observable& o, const PureState& zeta,
                                const PauliMask& mask) {
  const PureState v = apply_pauli(conjugate(zeta), mask);
  CMatrix rho_hat = v.projector() * Complex(static_cast<double>(v.dim()) + 1.0);
  rho_hat -= CMatrix::identity(v.dim());
  return (o.matrix() * rho_hat).trace().real();
}

CMatrix haar_second_moment_partial_trace(const CMatrix& a, const CMatrix& b) {
  const double d = static_cast<double>(a.rows());
  CMatrix out = a * b.trace() + b * a;
  out *= 1.0 / (d * (d + 1.0));
  return out;
}

Complex haar_second_moment_trace(const CMatrix& a, const CMatrix& b) {
  const double d = static_cast<double>(a.rows());
  return (a.trace() * b.trace() + (a * b).trace()) / (d * (d + 1.0));
}

double haar_expectation_acceptance(const Observable& o, const DensityMatrix& rho) {
  const double d = static_cast<double>(o.dim());
  return 0.5 + (o.trace() + o.expectation(rho)) / (2.0 * o.op_norm() * (d + 1.0));
}

std::uint64_t stabilizer_count_formula(int qubits) {
  std::uint64_t count = std::uint64_t{1} << qubits;
  for (int k = 1; k <= qubits; ++k) count *= (std::uint64_t{1} << k) + 1;
  return count;
}

CMatrix pauli_operator(const PauliMask& mask) {
  std::string xs(static_cast<std::size_t>(mask.qubits), 'I');
  std::string zs(static_cast<std::size_t>(mask.qubits), 'I');
  for (int q = 0; q < mask.qubits; ++q) {
    const auto bit = qubit_bit(mask.qubits, q);
    if (mask.x & bit) xs[static_cast<std::size_t>(q)] = 'X';
    if (mask.z & bit) zs[static_cast<std::size_t>(q)] = 'Z';
  }
  return tensor(xs) * tensor(zs);
}

CMatrix random_hermitian(std::size_t dim, Stream& rng) {
  CMatrix g(dim, dim);
  for (auto& a : g.entries()) a = rng.complex_normal();
  CMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

}  // namespace qshadow::oracles
