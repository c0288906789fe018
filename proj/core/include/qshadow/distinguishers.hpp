// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "qshadow/ensembles.hpp"
#include "qshadow/observables.hpp"
#include "qshadow/rng.hpp"
#include "qshadow/shadows.hpp"
#include "qshadow/states.hpp"

namespace qshadow {

/// Largest register for the explicit 4^n Pauli sums.
inline constexpr int kMaxPauliSumQubits = 5;

enum class DistinguisherKind { Expectation, Variance };
std::string_view to_string(DistinguisherKind kind) noexcept;

/// One run of the expectation test: measure (x, z) on (ρ, ζ), apply Z^z then
/// X^x to a second copy of ζ, measure O* on it to get α, and accept with
/// probability 1/2 + α/(2‖O‖). `o_conj` must be conjugate_observable(o).
bool run_expectation_distinguisher(const Ensemble& zetas, const StateSource& rho,
                                   const Observable& o, const Observable& o_conj, Stream& rng);
/// One run of the variance test: as above with two further copies of ζ,
/// each measured with O* independently; accept w.p. 1/2 + α₁α₂/(2‖O‖²).
bool run_variance_distinguisher(const Ensemble& zetas, const StateSource& rho,
                                const Observable& o, const Observable& o_conj, Stream& rng);

/// 1/2 + (1/2‖O‖) Σ_{x,z} 2^{-n} ⟨v|ρ|v⟩⟨v|O|v⟩ with v = ζ*_{x,z}; n ≤ 5.
double acceptance_prob_expectation(const PureState& zeta, const DensityMatrix& rho,
                                   const Observable& o);
/// Same quantity averaged over ζ, evaluated from the two-copy moment of ζ.
double acceptance_prob_expectation(const MomentOperator& second_moment, const DensityMatrix& rho,
                                   const Observable& o);
/// 1/2 + (1/2‖O‖²) Σ_{x,z} 2^{-n} ⟨v|ρ|v⟩⟨v|O|v⟩²; n ≤ 5.
double acceptance_prob_variance(const PureState& zeta, const DensityMatrix& rho,
                                const Observable& o);
/// Same quantity averaged over ζ, from the three-copy moment.
double acceptance_prob_variance(const MomentOperator& third_moment, const DensityMatrix& rho,
                                const Observable& o);

/// Exact acceptance probability averaged over an ensemble, through its
/// moment operator. Throws NotEnumerable if no exact moment exists.
double acceptance_prob(DistinguisherKind kind, const Ensemble& zetas, const DensityMatrix& rho,
                       const Observable& o);

struct ImpliedBounds {
  double epsilon = 0.0;        ///< max of the two advantages
  double bias_bound = 0.0;     ///< 2 (2^n+1) ε ‖O‖
  double variance_bound = 0.0; ///< 3 Tr(O₀²) + 6 ε ‖O‖² (2^n+1)²
};
ImpliedBounds advantage_to_bounds(double adv_expectation, double adv_variance,
                                  const Observable& o);

struct DistinguisherReport {
  DistinguisherKind kind = DistinguisherKind::Expectation;
  std::uint64_t shots = 0;
  std::uint64_t accepted = 0;
  double p_accept_ensemble = 0.0;  ///< sampled frequency
  double std_error = 0.0;
  std::optional<double> p_accept_ensemble_exact;
  double p_accept_haar = 0.0;  ///< exact, from the Haar moment
  double advantage = 0.0;      ///< |p_accept_ensemble - p_accept_haar|
  double implied_bias_bound = 0.0;
  double implied_variance_slack = 0.0;
};

/// Runs `shots` independent distinguisher executions (shot i uses
/// Stream(seed).child(i)) and compares against the Haar value.
DistinguisherReport run_distinguisher(DistinguisherKind kind, const Ensemble& zetas,
                                      const StateSource& rho, const Observable& o,
                                      std::uint64_t shots, const RunOptions& options);

}  // namespace qshadow
