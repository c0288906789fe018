// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qshadow/linalg.hpp"
#include "qshadow/rng.hpp"

namespace qshadow {

/// Largest register the library accepts anywhere.
inline constexpr int kMaxQubits = 12;

/// Qubit 0 is the most significant bit of a computational-basis index.
inline std::size_t basis_dim(int qubits) { return std::size_t{1} << qubits; }
inline std::uint64_t qubit_bit(int qubits, int qubit) {
  return std::uint64_t{1} << (qubits - 1 - qubit);
}

void require_qubits(int qubits);

struct PauliMask;

class PureState {
 public:
  /// Validates the length (2^n) and the norm (|‖ψ‖ - 1| ≤ 1e-10).
  PureState(int qubits, CVector amplitudes);

  /// Rescales `amplitudes` to unit norm; rejects the zero vector.
  static PureState normalized(int qubits, CVector amplitudes);
  static PureState basis(int qubits, std::uint64_t index);

  int qubits() const noexcept { return qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const CVector& vector() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t i) const noexcept { return amplitudes_[i]; }

  CMatrix projector() const { return CMatrix::projector(amplitudes_); }

 private:
  struct Unchecked {};
  PureState(Unchecked, int qubits, CVector amplitudes)
      : qubits_(qubits), amplitudes_(std::move(amplitudes)) {}
  friend PureState apply_pauli(const PureState&, const PauliMask&);
  friend PureState conjugate(const PureState&);

  int qubits_;
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace (1e-10) and λ_min ≥ -1e-10.
  DensityMatrix(int qubits, CMatrix matrix);

  static DensityMatrix from_pure(const PureState& state);
  static DensityMatrix maximally_mixed(int qubits);

  int qubits() const noexcept { return qubits_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  int qubits_;
  CMatrix matrix_;
};

/// Selects the operator X^x Z^z. Bits are stored in basis-index order, so
/// bit (n-1-i) of `x` acts on qubit i.
struct PauliMask {
  int qubits = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  /// Bit strings are written qubit 0 first, e.g. "10" = X on qubit 0.
  static PauliMask from_strings(std::string_view x_bits, std::string_view z_bits);
  std::string x_string() const;
  std::string z_string() const;

  bool operator==(const PauliMask&) const = default;
};

/// X^x Z^z |s⟩: the amplitude at b picks up (-1)^{z·b}, then b -> b ⊕ x.
PureState apply_pauli(const PureState& s, const PauliMask& mask);
/// Raw-span version used on hot paths; `out` must not alias `in`.
void apply_pauli(std::span<const Complex> in, std::uint64_t x, std::uint64_t z,
                 std::span<Complex> out);

/// Entrywise complex conjugate in the computational basis.
PureState conjugate(const PureState& s);

/// |⟨a|b⟩|^2
double fidelity(const PureState& a, const PureState& b);
/// max |(|a⟩⟨a| - |b⟩⟨b|)_ij|; zero iff the states agree up to global phase.
double projector_distance(const PureState& a, const PureState& b);

/// Haar-random state: normalised vector of i.i.d. complex Gaussians.
PureState haar_sample(int qubits, Stream& rng);
/// Orthogonally invariant real state: normalised i.i.d. real Gaussians.
PureState real_haar_sample(int qubits, Stream& rng);
/// 2^{-n/2} Σ_b (-1)^{f(b)} |b⟩ for a fresh uniformly random Boolean f.
PureState binary_phase_sample(int qubits, Stream& rng);

/// Number of n-qubit stabilizer states, 2^n Π_{k=1..n} (2^k + 1).
double stabilizer_count(int qubits);
/// Uniform over all stabilizer states (affine support, quadratic phases).
PureState stabilizer_sample(int qubits, Stream& rng);
/// Every stabilizer state exactly once; qubits ≤ 3.
std::vector<PureState> stabilizer_enumerate(int qubits);

/// Convex combination of `rank` Haar states with uniform-simplex weights.
DensityMatrix random_density(int qubits, int rank, Stream& rng);

}  // namespace qshadow
