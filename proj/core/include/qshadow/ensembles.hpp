// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qshadow/linalg.hpp"
#include "qshadow/rng.hpp"
#include "qshadow/states.hpp"

namespace qshadow {

/// t-copy average E[|ψ⟩⟨ψ|^{⊗t}] over an ensemble, dimension 2^{nt}.
struct MomentOperator {
  enum class Provenance { Exact, MonteCarlo };

  int qubits = 0;
  int copies = 0;
  CMatrix matrix;
  Provenance provenance = Provenance::Exact;
  std::uint64_t samples = 0;  ///< Monte-Carlo sample count, 0 when exact

  bool exact() const noexcept { return provenance == Provenance::Exact; }
};

struct WeightedState {
  PureState state;
  double weight;
};

/// A named distribution over pure states.
///
/// Elements are addressed by 64-bit keys: draw_key() samples a key and
/// state() regenerates the element deterministically from it, so snapshots
/// only need to store the key. For finite ensembles the key is the index
/// into support().
class Ensemble {
 public:
  Ensemble(std::string name, int qubits) : name_(std::move(name)), qubits_(qubits) {}
  virtual ~Ensemble() = default;

  const std::string& name() const noexcept { return name_; }
  int qubits() const noexcept { return qubits_; }

  virtual std::uint64_t draw_key(Stream& rng) const = 0;
  virtual PureState state(std::uint64_t key) const = 0;
  PureState sample(Stream& rng) const { return state(draw_key(rng)); }
  /// Writes the amplitudes of state(key) into `out` (length 2^n) without
  /// allocating; used on the per-shot path.
  virtual void fill_state(std::uint64_t key, std::span<Complex> out) const;

  /// Finite support with weights summing to 1, when enumerable.
  virtual const std::vector<WeightedState>* support() const { return nullptr; }
  /// Closed-form t-th moment, when known without enumeration.
  virtual std::optional<MomentOperator> analytic_moment(int /*copies*/) const {
    return std::nullopt;
  }

 private:
  std::string name_;
  int qubits_;
};

using EnsemblePtr = std::shared_ptr<const Ensemble>;

EnsemblePtr haar_ensemble(int qubits);
EnsemblePtr real_haar_ensemble(int qubits);
EnsemblePtr binary_phase_ensemble(int qubits);
/// Uniform stabilizer states; enumerable (exact 3-design) for qubits ≤ 3.
EnsemblePtr stabilizer_ensemble(int qubits);
/// Normalises the weights; rejects negative weights or an empty list.
EnsemblePtr finite_ensemble(std::string name, std::vector<WeightedState> elements);
EnsemblePtr single_state_ensemble(const PureState& psi);
/// With probability ε₀/2 output ψ, otherwise a Haar state. Its t-th moment
/// is (1 - ε₀/2) H_t + (ε₀/2)|ψ⟩⟨ψ|^{⊗t}; 0 ≤ ε₀ < 1.
EnsemblePtr adversarial_mixture(double epsilon0, const PureState& psi);

}  // namespace qshadow
