// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qshadow/linalg.hpp"
#include "qshadow/rng.hpp"
#include "qshadow/states.hpp"

namespace qshadow {

/// A Hermitian observable O = Σ_i α_i Π_i with its spectral data cached at
/// construction. Immutable afterwards, so it can be shared across threads.
class Observable {
 public:
  /// One distinct eigenvalue α_i; the columns [first, first + multiplicity)
  /// of eigenvectors() span the range of Π_i.
  struct Level {
    double value;
    std::size_t first;
    std::size_t multiplicity;
  };

  Observable(int qubits, CMatrix matrix);

  /// Tensor product of single-qubit Paulis, e.g. "XZ" or "IYI"; the first
  /// letter acts on qubit 0.
  static Observable pauli(std::string_view label);
  /// H = (G + G^†)/2 with G having i.i.d. standard complex Gaussian entries
  /// (E|G_ij|^2 = 1), so off-diagonal entries have E|H_ij|^2 = 1/2.
  static Observable gue(int qubits, Stream& rng);
  /// Projector onto the span of `rank` Haar vectors.
  static Observable random_projector(int qubits, int rank, Stream& rng);

  int qubits() const noexcept { return qubits_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const CMatrix& matrix() const noexcept { return matrix_; }

  std::span<const Level> levels() const noexcept { return levels_; }
  const CMatrix& eigenvectors() const noexcept { return eigenvectors_; }
  /// Π_i as a dense matrix.
  CMatrix level_projector(std::size_t level) const;

  double trace() const noexcept { return trace_; }
  double op_norm() const noexcept { return op_norm_; }
  /// Tr(O_0^2) for the traceless part O_0.
  double traceless_sq() const noexcept { return traceless_sq_; }
  double min_eigenvalue() const noexcept { return levels_.back().value; }
  /// All eigenvalues ≥ -1e-10·max(1, ‖O‖∞).
  bool is_positive() const noexcept;

  /// ⟨ψ|O|ψ⟩
  double expectation(std::span<const Complex> psi) const;
  /// Tr(O ρ)
  double expectation(const DensityMatrix& rho) const;

 private:
  int qubits_;
  CMatrix matrix_;
  CMatrix eigenvectors_;
  std::vector<Level> levels_;
  double trace_ = 0.0;
  double op_norm_ = 0.0;
  double traceless_sq_ = 0.0;
};

/// O - (Tr O / 2^n) I.
Observable traceless_part(const Observable& o);

/// Entrywise conjugate; same spectrum, conjugated projectors.
Observable conjugate_observable(const Observable& o);

/// Born-rule sample of an eigenvalue: returns α_i w.p. ⟨s|Π_i|s⟩.
double measure(const Observable& o, const PureState& s, Stream& rng);
double measure(const Observable& o, std::span<const Complex> s, Stream& rng);

/// Outcome probabilities ⟨s|Π_i|s⟩ per level.
std::vector<double> level_probabilities(const Observable& o, std::span<const Complex> s);

/// (2^n + 1)⟨v|O|v⟩ - Tr(O) for v = X^x Z^z ζ*; the snapshot matrix is never
/// formed.
double shadow_estimate(const Observable& o, const PureState& zeta, const PauliMask& mask);
/// Same as above, reusing caller-owned scratch of length 2^n.
double shadow_estimate(const Observable& o, std::span<const Complex> zeta, const PauliMask& mask,
                       std::span<Complex> scratch);

}  // namespace qshadow
