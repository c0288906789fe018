// SPDX-License-Identifier: Apache-2.0
//
// Slow, direct reference computations. Each one avoids the shortcut the
// library takes so the two can be compared.
#pragma once

#include <cstdint>
#include <vector>

#include "qshadow/linalg.hpp"
#include "qshadow/observables.hpp"
#include "qshadow/rng.hpp"
#include "qshadow/states.hpp"

namespace qshadow::oracles {

/// Full 4^n x 4^n unitary of the measurement circuit, built as a product of
/// dense gate matrices (one CNOT per qubit pair, then one H per qubit).
CMatrix bell_circuit_unitary(int qubits);

/// Outcome table from U (ρ ⊗ |ζ⟩⟨ζ|) U†, indexed x·2^n + z like
/// outcome_distribution.
std::vector<double> circuit_outcome_table(const DensityMatrix& rho, const PureState& zeta);
/// Same, reusing a prebuilt bell_circuit_unitary of matching size.
std::vector<double> circuit_outcome_table(const CMatrix& unitary, const DensityMatrix& rho,
                                          const PureState& zeta);

/// Largest |λ| by power iteration on M² (so ±λ_max do not cancel).
double power_iteration_norm(const CMatrix& m, Stream& rng, int iterations = 2000);

/// Tr(O ρ̂) with ρ̂ = (2^n+1)|ζ*_{x,z}⟩⟨ζ*_{x,z}| - I formed as a matrix.
double snapshot_matrix_estimate(const Observable& o, const PureState& zeta,
                                const PauliMask& mask);

/// (Tr(B) A + B A) / (2^n (2^n + 1)).
CMatrix haar_second_moment_partial_trace(const CMatrix& a, const CMatrix& b);

/// (Tr A Tr B + Tr(AB)) / (2^n (2^n + 1)).
Complex haar_second_moment_trace(const CMatrix& a, const CMatrix& b);

/// Haar value of the expectation test: 1/2 + (Tr O + Tr(Oρ)) / (2‖O‖(2^n+1)).
double haar_expectation_acceptance(const Observable& o, const DensityMatrix& rho);

/// 2^n Π_{k=1..n} (2^k + 1) in exact integer arithmetic.
std::uint64_t stabilizer_count_formula(int qubits);

/// Matrix of the operator X^x Z^z (Z applied first), built by kron.
CMatrix pauli_operator(const PauliMask& mask);

/// Random Hermitian matrix with i.i.d. Gaussian entries.
CMatrix random_hermitian(std::size_t dim, Stream& rng);

}  // namespace qshadow::oracles
