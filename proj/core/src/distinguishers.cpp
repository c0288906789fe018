// SPDX-License-Identifier: Apache-2.0
#include "qshadow/distinguishers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qshadow/error.hpp"
#include "qshadow/moments.hpp"
#include "qshadow/parallel.hpp"

namespace qshadow {

namespace {

constexpr double kProbabilitySlack = 1e-9;

double require_norm(const Observable& o) {
  if (!(o.op_norm() > 0.0)) throw Error(ErrorKind::InvalidArgument, "observable must be non-zero");
  return o.op_norm();
}

void require_pauli_sum(int qubits) {
  if (qubits > kMaxPauliSumQubits) {
    throw Error(ErrorKind::SizeLimit, "explicit Pauli sum limited to " +
                                          std::to_string(kMaxPauliSumQubits) + " qubits");
  }
}

bool flip_coin(double p, Stream& rng) {
  if (p < -kProbabilitySlack || p > 1.0 + kProbabilitySlack) {
    throw Error(ErrorKind::InvalidArgument,
                "acceptance probability " + std::to_string(p) + " outside [0, 1]");
  }
  return rng.uniform() < std::clamp(p, 0.0, 1.0);
}

// Common front half of both tests: returns X^x Z^z ζ for the measured (x, z).
PureState twirled_copy(const Ensemble& zetas, const StateSource& rho, Stream& rng) {
  if (zetas.qubits() != rho.qubits()) {
    throw Error(ErrorKind::DimMismatch, "ensemble/state qubit counts differ");
  }
  const PureState zeta = zetas.state(zetas.draw_key(rng));
  const auto psi = rho.draw(rng);
  CVector joint(zeta.dim() * zeta.dim());
  const PauliMask mask = bell_measure_circuit(zeta.qubits(), psi, zeta.amplitudes(), rng, joint);
  return apply_pauli(zeta, mask);
}

// Σ_{x,z} 2^{-n} f(⟨v|ρ|v⟩, ⟨v|O|v⟩) over v = ζ*_{x,z}.
template <typename F>
double pauli_sum(const PureState& zeta, const DensityMatrix& rho, const Observable& o, F&& f) {
  if (rho.qubits() != zeta.qubits() || o.qubits() != zeta.qubits()) {
    throw Error(ErrorKind::DimMismatch, "ζ/ρ/O qubit counts differ");
  }
  require_pauli_sum(zeta.qubits());
  const std::size_t dim = zeta.dim();
  const PureState zc = conjugate(zeta);
  CVector v(dim);
  double acc = 0.0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      apply_pauli(zc.amplitudes(), x, z, v);
      acc += f(expectation(rho.matrix(), v), o.expectation(v));
    }
  }
  return acc / static_cast<double>(dim);
}

// Tr[K (A ⊗ B^{⊗(t-1)})] for a t-copy operator K.
double copy_trace(const CMatrix& k, int qubits, int copies, const CMatrix& a, const CMatrix& b) {
  const std::uint64_t mask = (std::uint64_t{1} << qubits) - 1;
  Complex acc = 0.0;
  for (std::size_t r = 0; r < k.rows(); ++r) {
    for (std::size_t c = 0; c < k.cols(); ++c) {
      const Complex kv = k(r, c);
      if (kv == Complex(0.0)) continue;
      Complex term = kv;
      for (int m = copies - 1; m >= 1; --m) {
        const int shift = qubits * (copies - 1 - m);
        term *= b((c >> shift) & mask, (r >> shift) & mask);
      }
      const int shift0 = qubits * (copies - 1);
      term *= a((c >> shift0) & mask, (r >> shift0) & mask);
      acc += term;
    }
  }
  return acc.real();
}

// Σ_{x,z} 2^{-n} Tr[(P⊗…⊗P) conj(M) (P⊗…⊗P)† (ρ ⊗ O ⊗ …)].
double moment_pauli_sum(const MomentOperator& m, const DensityMatrix& rho, const Observable& o) {
  if (rho.qubits() != m.qubits || o.qubits() != m.qubits) {
    throw Error(ErrorKind::DimMismatch, "moment/ρ/O qubit counts differ");
  }
  const CMatrix k = m.matrix.conjugate();
  const std::size_t dim = rho.dim();
  double acc = 0.0;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      const PauliMask p{m.qubits, x, z};
      acc += copy_trace(k, m.qubits, m.copies, pauli_conjugate(rho.matrix(), p),
                        pauli_conjugate(o.matrix(), p));
    }
  }
  return acc / static_cast<double>(dim);
}

}  // namespace

std::string_view to_string(DistinguisherKind kind) noexcept {
  return kind == DistinguisherKind::Expectation ? "expectation" : "variance";
}

bool run_expectation_distinguisher(const Ensemble& zetas, const StateSource& rho,
                                   const Observable& o, const Observable& o_conj, Stream& rng) {
  const double norm = require_norm(o);
  const PureState v = twirled_copy(zetas, rho, rng);
  const double alpha = measure(o_conj, v, rng);
  return flip_coin(0.5 + alpha / (2.0 * norm), rng);
}

bool run_variance_distinguisher(const Ensemble& zetas, const StateSource& rho,
                                const Observable& o, const Observable& o_conj, Stream& rng) {
  const double norm = require_norm(o);
  const PureState v = twirled_copy(zetas, rho, rng);
  const double alpha1 = measure(o_conj, v, rng);
  const double alpha2 = measure(o_conj, v, rng);
  return flip_coin(0.5 + alpha1 * alpha2 / (2.0 * norm * norm), rng);
}

double acceptance_prob_expectation(const PureState& zeta, const DensityMatrix& rho,
                                   const Observable& o) {
  const double norm = require_norm(o);
  return 0.5 + pauli_sum(zeta, rho, o, [](double r, double w) { return r * w; }) / (2.0 * norm);
}

double acceptance_prob_expectation(const MomentOperator& second_moment, const DensityMatrix& rho,
                                   const Observable& o) {
  if (second_moment.copies != 2) {
    throw Error(ErrorKind::InvalidArgument, "expectation test needs the two-copy moment");
  }
  const double norm = require_norm(o);
  return 0.5 + moment_pauli_sum(second_moment, rho, o) / (2.0 * norm);
}

double acceptance_prob_variance(const PureState& zeta, const DensityMatrix& rho,
                                const Observable& o) {
  const double norm = require_norm(o);
  return 0.5 +
         pauli_sum(zeta, rho, o, [](double r, double w) { return r * w * w; }) / (2.0 * norm * norm);
}

double acceptance_prob_variance(const MomentOperator& third_moment, const DensityMatrix& rho,
                                const Observable& o) {
  if (third_moment.copies != 3) {
    throw Error(ErrorKind::InvalidArgument, "variance test needs the three-copy moment");
  }
  const double norm = require_norm(o);
  return 0.5 + moment_pauli_sum(third_moment, rho, o) / (2.0 * norm * norm);
}

double acceptance_prob(DistinguisherKind kind, const Ensemble& zetas, const DensityMatrix& rho,
                       const Observable& o) {
  if (kind == DistinguisherKind::Expectation) {
    return acceptance_prob_expectation(ensemble_moment(zetas, 2), rho, o);
  }
  return acceptance_prob_variance(ensemble_moment(zetas, 3), rho, o);
}

ImpliedBounds advantage_to_bounds(double adv_expectation, double adv_variance,
                                  const Observable& o) {
  for (double adv : {adv_expectation, adv_variance}) {
    if (!(adv >= 0.0 && adv <= 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "advantages must lie in [0, 1]");
    }
  }
  ImpliedBounds b;
  b.epsilon = std::max(adv_expectation, adv_variance);
  const double d1 = static_cast<double>(o.dim()) + 1.0;
  b.bias_bound = 2.0 * d1 * b.epsilon * o.op_norm();
  b.variance_bound = 3.0 * o.traceless_sq() + 6.0 * b.epsilon * o.op_norm() * o.op_norm() * d1 * d1;
  return b;
}

DistinguisherReport run_distinguisher(DistinguisherKind kind, const Ensemble& zetas,
                                      const StateSource& rho, const Observable& o,
                                      std::uint64_t shots, const RunOptions& options) {
  if (shots == 0) throw Error(ErrorKind::InvalidArgument, "shots must be positive");
  const Observable o_conj = conjugate_observable(o);
  std::vector<unsigned char> accepted(shots, 0);
  const Stream root(options.seed);
  parallel_for(shots, options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Stream rng = root.child(i);
      const bool bit = kind == DistinguisherKind::Expectation
                           ? run_expectation_distinguisher(zetas, rho, o, o_conj, rng)
                           : run_variance_distinguisher(zetas, rho, o, o_conj, rng);
      accepted[i] = bit ? 1 : 0;
    }
  });

  DistinguisherReport r;
  r.kind = kind;
  r.shots = shots;
  for (auto a : accepted) r.accepted += a;
  r.p_accept_ensemble = static_cast<double>(r.accepted) / static_cast<double>(shots);
  r.std_error = std::sqrt(std::max(r.p_accept_ensemble * (1.0 - r.p_accept_ensemble), 1e-300) /
                          static_cast<double>(shots));
  try {
    r.p_accept_ensemble_exact = acceptance_prob(kind, zetas, rho.density(), o);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotEnumerable && e.kind() != ErrorKind::SizeLimit) throw;
  }
  r.p_accept_haar = acceptance_prob(kind, *haar_ensemble(zetas.qubits()), rho.density(), o);
  r.advantage = std::abs(r.p_accept_ensemble - r.p_accept_haar);
  const auto bounds = advantage_to_bounds(std::min(r.advantage, 1.0), std::min(r.advantage, 1.0), o);
  r.implied_bias_bound = bounds.bias_bound;
  r.implied_variance_slack = bounds.variance_bound - 3.0 * o.traceless_sq();
  return r;
}

}  // namespace qshadow
