// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "qshadow/ensembles.hpp"
#include "qshadow/linalg.hpp"
#include "qshadow/rng.hpp"

namespace qshadow {

/// Largest n·t for which t-copy operators are materialised (dim ≤ 4096).
inline constexpr int kMaxMomentQubits = 12;

/// dim Sym^t(C^{2^n}) = C(2^n + t - 1, t).
std::uint64_t sym_dim(int qubits, int copies);

/// (1/t!) Σ_{π ∈ S_t} P_π, with P_π permuting base-2^n digits of the
/// t-copy basis index.
CMatrix sym_projector(int qubits, int copies);

/// Orthonormal basis of the symmetric subspace: one column per multiset of
/// single-copy indices, sorted lexicographically. Every row has exactly one
/// non-zero entry.
struct SymmetricBasis {
  int qubits = 0;
  int copies = 0;
  std::vector<std::uint32_t> column_of;  ///< basis index -> column
  std::vector<double> scale;             ///< column -> 1/sqrt(orbit size)
  std::size_t dim() const noexcept { return scale.size(); }
  CMatrix isometry() const;
};
SymmetricBasis symmetric_basis(int qubits, int copies);

/// ∫ |φ⟩⟨φ|^{⊗t} dμ = Π_sym / dim Sym.
MomentOperator haar_moment(int qubits, int copies);

enum class MomentMode { Exact, MonteCarlo };

/// Exact mode sums the finite support (or uses the ensemble's closed form);
/// Monte-Carlo mode averages `samples` draws, sample i using rng.child(i).
MomentOperator ensemble_moment(const Ensemble& ensemble, int copies, MomentMode mode,
                               std::uint64_t samples, const Stream& rng);
inline MomentOperator ensemble_moment(const Ensemble& ensemble, int copies) {
  return ensemble_moment(ensemble, copies, MomentMode::Exact, 0, Stream{});
}

/// ‖M - H‖₁ against the Haar moment of the same (n, t).
double additive_epsilon(const MomentOperator& m);

/// Smallest ε with (1-ε)H ⪯ M ⪯ (1+ε)H: max |d_s λ - 1| over the spectrum
/// of M restricted to the symmetric subspace. Values above 1 are returned
/// as-is. Throws SupportLeak if M has weight > 1e-6 outside Sym.
double relative_epsilon(const MomentOperator& m);

/// Weight of M outside the symmetric subspace, ‖M - Π M Π‖_F.
double support_leak(const MomentOperator& m);

struct ConversionReport {
  int qubits = 0;
  int copies = 0;
  std::uint64_t sym_dim = 0;
  double eps_add = 0.0;
  double eps_rel = 0.0;
  /// ε_add ≤ ε_rel (a relative design is an additive one).
  bool relative_to_additive = false;
  /// ε_rel ≤ dim Sym · ε_add.
  bool additive_to_relative = false;
  /// ε_rel ≤ 2^{nt} · ε_add.
  bool additive_to_relative_coarse = false;

  bool bounds_ok() const noexcept {
    return relative_to_additive && additive_to_relative && additive_to_relative_coarse;
  }
};

/// Both distances and the conversion inequalities; exact moments only
/// (throws InvalidArgument on Monte-Carlo input).
ConversionReport conversion_report(const MomentOperator& m);

}  // namespace qshadow
