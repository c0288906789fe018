// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qshadow/ensembles.hpp"
#include "qshadow/linalg.hpp"
#include "qshadow/observables.hpp"
#include "qshadow/rng.hpp"
#include "qshadow/states.hpp"

namespace qshadow {

/// Largest register for the 4^n outcome table.
inline constexpr int kMaxTableQubits = 7;
/// Largest register for the 2n-qubit circuit simulation.
inline constexpr int kMaxCircuitQubits = 10;

/// The unknown input ρ as something that can be prepared shot by shot.
/// A mixed ρ is diagonalised once; each shot prepares one eigenvector,
/// chosen with probability equal to its eigenvalue.
class StateSource {
 public:
  static StateSource pure(const PureState& psi);
  static StateSource mixed(const DensityMatrix& rho);

  int qubits() const noexcept { return qubits_; }
  std::size_t dim() const noexcept { return std::size_t{1} << qubits_; }
  const DensityMatrix& density() const noexcept { return density_; }
  bool is_pure() const noexcept { return components_.size() == 1; }

  /// Amplitudes of the component prepared for this shot. Pure sources do
  /// not consume randomness.
  std::span<const Complex> draw(Stream& rng) const;

 private:
  StateSource(int qubits, DensityMatrix density) : qubits_(qubits), density_(std::move(density)) {}

  int qubits_;
  DensityMatrix density_;
  std::vector<CVector> components_;
  std::vector<double> cumulative_;
};

/// Pr[x, z | ζ] = 2^{-n} ⟨ζ*_{x,z}|ρ|ζ*_{x,z}⟩ for every outcome, stored at
/// index x·2^n + z. Requires n ≤ 7.
std::vector<double> outcome_distribution(const DensityMatrix& rho, const PureState& zeta);

/// Simulates the 2n-qubit measurement on ψ ⊗ ζ gate by gate: CNOT from
/// qubit i of the first register onto qubit i of the second, H on every
/// qubit of the first register, then a computational-basis measurement.
/// Returns z from the first register and x from the second.
PauliMask bell_measure_circuit(const PureState& psi, const PureState& zeta, Stream& rng);
/// Allocation-free form; `joint` must hold 4^n amplitudes.
PauliMask bell_measure_circuit(int qubits, std::span<const Complex> psi,
                               std::span<const Complex> zeta, Stream& rng,
                               std::span<Complex> joint);

/// One classical shadow: the ensemble key of ζ plus the outcome bits.
struct Snapshot {
  std::uint64_t key = 0;
  PauliMask mask;

  PureState zeta(const Ensemble& ensemble) const { return ensemble.state(key); }
};

/// Reusable per-thread buffers for the shot loop.
class ShotWorkspace {
 public:
  explicit ShotWorkspace(int qubits);
  std::span<Complex> zeta() noexcept { return zeta_; }
  std::span<Complex> joint() noexcept { return joint_; }
  std::span<Complex> scratch() noexcept { return scratch_; }

 private:
  CVector zeta_;
  CVector joint_;
  CVector scratch_;
};

Snapshot generate_snapshot(const StateSource& source, const Ensemble& ensemble, Stream& rng);
/// Leaves the amplitudes of ζ in work.zeta().
Snapshot generate_snapshot(const StateSource& source, const Ensemble& ensemble, Stream& rng,
                           ShotWorkspace& work);

/// (2^n + 1)⟨ζ*_{x,z}|O|ζ*_{x,z}⟩ - Tr O for a stored snapshot.
double shadow_estimate(const Observable& o, const Snapshot& snap, const Ensemble& ensemble);

/// Splits `values` in order into K blocks of L, averages each block and
/// returns the median of the block means (mean of the middle two for even
/// K). Throws LengthMismatch unless values.size() == K·L.
double median_of_means(std::span<const double> values, std::uint64_t k, std::uint64_t l);

enum class BoundKind { Exact, Relative, Additive, Pseudo };
std::string_view to_string(BoundKind kind) noexcept;
BoundKind parse_bound_kind(std::string_view name);

struct EstimatorConfig {
  double gamma = 0.1;
  double delta = 0.05;
  std::uint64_t k = 1;
  std::uint64_t l = 1;
  BoundKind kind = BoundKind::Exact;
  double epsilon = 0.0;
  /// Bound on |E[estimate] - Tr(Oρ)| for this kind and ε.
  double bias_bound = 0.0;
  /// Bound on the per-snapshot variance for this kind and ε.
  double variance_bound = 0.0;

  std::uint64_t total_shots() const noexcept { return k * l; }
};

/// K = ceil(2 ln(2/δ)) and L = ceil(34/γ² · variance_bound), L ≥ 1, where
///   exact:    variance 3 Tr(O₀²),                        bias 0
///   relative: variance 3 Tr(O₀²) + 10 ε Tr(O)²,          bias 2 ε Tr(O)
///   additive: variance 3 Tr(O₀²) + 3 ε ‖O‖² (2^n+1)²,    bias (2^n+1) ε ‖O‖
///   pseudo:   variance 3 Tr(O₀²) + 6 ε ‖O‖² (2^n+1)²,    bias 2 (2^n+1) ε ‖O‖
/// The relative kind requires a positive O (NonPositiveObservable).
EstimatorConfig plan(double gamma, double delta, BoundKind kind, double epsilon,
                     const Observable& o);

/// K = ceil(2 ln(2/δ)), at least 1.
std::uint64_t median_block_count(double delta);
/// L = ceil(34/γ² · variance_bound), at least 1.
std::uint64_t median_block_length(double gamma, double variance_bound);

struct ShotRecord {
  std::uint64_t shot_id = 0;
  std::uint64_t key = 0;
  PauliMask mask;
  double estimate = 0.0;
};

struct RunOptions {
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool record_shots = false;
};

struct EstimateReport {
  double estimate = 0.0;
  std::uint64_t k = 0;
  std::uint64_t l = 0;
  std::uint64_t total_shots = 0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double bias_bound = 0.0;
  double variance_bound = 0.0;
  std::uint64_t seed = 0;
  std::vector<ShotRecord> shots;  ///< filled only when requested
};

/// Runs K·L shots (shot i draws from Stream(seed).child(i)) and aggregates
/// by median of means. Results do not depend on the worker count.
EstimateReport estimate_observable(const StateSource& source, const Ensemble& ensemble,
                                   const Observable& o, const EstimatorConfig& config,
                                   const RunOptions& options);

/// Per-shot estimates only, in shot order.
std::vector<double> shot_estimates(const StateSource& source, const Ensemble& ensemble,
                                   const Observable& o, std::uint64_t shots,
                                   const RunOptions& options);

/// E_ζ Σ_{x,z} Pr[x,z|ζ] |ζ*_{x,z}⟩⟨ζ*_{x,z}|, exactly: from the finite
/// support when there is one, otherwise from the closed-form second moment.
/// Throws NotEnumerable if neither exists.
CMatrix channel_apply(const Ensemble& ensemble, const DensityMatrix& rho);
/// Monte-Carlo average over `samples` draws of ζ (sample i uses rng.child(i)).
CMatrix channel_apply(const Ensemble& ensemble, const DensityMatrix& rho, std::uint64_t samples,
                      const Stream& rng);
/// Channel output computed from a two-copy moment operator M of ζ.
CMatrix channel_apply(const MomentOperator& second_moment, const DensityMatrix& rho);

/// (2^n + 1) A - Tr(A) I.
CMatrix depolarizing_inverse(const CMatrix& a);

/// P† A P for P = X^x Z^z.
CMatrix pauli_conjugate(const CMatrix& a, const PauliMask& mask);

struct BiasVariance {
  std::uint64_t shots = 0;
  double true_value = 0.0;
  double mean = 0.0;
  double bias = 0.0;  ///< mean - Tr(Oρ)
  double variance = 0.0;
  double bias_std_error = 0.0;
  double variance_std_error = 0.0;
};

BiasVariance empirical_bias_variance(const StateSource& source, const Ensemble& ensemble,
                                     const Observable& o, std::uint64_t shots,
                                     const RunOptions& options);
/// Summary statistics of an arbitrary sample (shots ≥ 2).
BiasVariance summarize(std::span<const double> values, double true_value);

}  // namespace qshadow
