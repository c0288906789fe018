// SPDX-License-Identifier: Apache-2.0
#include "qshadow/shadows.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qshadow/error.hpp"
#include "qshadow/parallel.hpp"

namespace qshadow {

namespace {

void require_same_qubits(int a, int b, const char* what) {
  if (a != b) throw Error(ErrorKind::DimMismatch, std::string(what) + " qubit counts differ");
}

double sign_of(std::uint64_t z, std::uint64_t b) {
  return (std::popcount(z & b) & 1) ? -1.0 : 1.0;
}

// ceil that ignores representation error just above an integer, so that
// e.g. 34·3/0.1² lands on 10200 rather than 10201.
std::uint64_t tolerant_ceil(double x) {
  return static_cast<std::uint64_t>(std::ceil(x - 1e-12 * std::max(1.0, std::abs(x))));
}

// Σ_{x,z} Pr[x,z|ζ] |ζ*_{x,z}⟩⟨ζ*_{x,z}|, accumulated into `out` with weight w.
void add_state_channel(std::span<const Complex> zeta, const DensityMatrix& rho, double w,
                       CMatrix& out) {
  const std::size_t dim = zeta.size();
  CVector zc(zeta.begin(), zeta.end());
  for (auto& a : zc) a = std::conj(a);
  CVector v(dim);
  const double scale = 1.0 / static_cast<double>(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      apply_pauli(zc, x, z, v);
      const double p = scale * expectation(rho.matrix(), v);
      out.add_projector(v, w * p);
    }
  }
}

template <typename PerShot>
void run_shots(const StateSource& source, const Ensemble& ensemble, std::uint64_t shots,
               const RunOptions& options, PerShot&& per_shot) {
  const Stream root(options.seed);
  const int n = source.qubits();
  parallel_for(shots, options.workers, [&](std::size_t begin, std::size_t end) {
    ShotWorkspace work(n);
    for (std::size_t i = begin; i < end; ++i) {
      Stream rng = root.child(i);
      const Snapshot snap = generate_snapshot(source, ensemble, rng, work);
      per_shot(i, snap, work);
    }
  });
}

}  // namespace

ShotWorkspace::ShotWorkspace(int qubits)
    : zeta_(basis_dim(qubits)), joint_(basis_dim(qubits) * basis_dim(qubits)),
      scratch_(basis_dim(qubits)) {}

Snapshot generate_snapshot(const StateSource& source, const Ensemble& ensemble, Stream& rng,
                           ShotWorkspace& work) {
  require_same_qubits(source.qubits(), ensemble.qubits(), "state/ensemble");
  Snapshot snap;
  snap.key = ensemble.draw_key(rng);
  ensemble.fill_state(snap.key, work.zeta());
  const auto psi = source.draw(rng);
  snap.mask = bell_measure_circuit(source.qubits(), psi, work.zeta(), rng, work.joint());
  return snap;
}

Snapshot generate_snapshot(const StateSource& source, const Ensemble& ensemble, Stream& rng) {
  ShotWorkspace work(source.qubits());
  return generate_snapshot(source, ensemble, rng, work);
}

double shadow_estimate(const Observable& o, const Snapshot& snap, const Ensemble& ensemble) {
  return shadow_estimate(o, snap.zeta(ensemble), snap.mask);
}

double median_of_means(std::span<const double> values, std::uint64_t k, std::uint64_t l) {
  if (k == 0 || l == 0 || values.size() != k * l) {
    throw Error(ErrorKind::LengthMismatch, "median of means needs exactly K*L = " +
                                               std::to_string(k * l) + " values, got " +
                                               std::to_string(values.size()));
  }
  std::vector<double> means(k);
  for (std::uint64_t b = 0; b < k; ++b) {
    double acc = 0.0;
    for (std::uint64_t j = 0; j < l; ++j) acc += values[b * l + j];
    means[b] = acc / static_cast<double>(l);
  }
  std::sort(means.begin(), means.end());
  return (k % 2 == 1) ? means[k / 2] : 0.5 * (means[k / 2 - 1] + means[k / 2]);
}

std::string_view to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::Exact: return "exact";
    case BoundKind::Relative: return "relative";
    case BoundKind::Additive: return "additive";
    case BoundKind::Pseudo: return "pseudo";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (auto kind : {BoundKind::Exact, BoundKind::Relative, BoundKind::Additive, BoundKind::Pseudo}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown bound kind '" + std::string(name) + "'");
}

EstimatorConfig plan(double gamma, double delta, BoundKind kind, double epsilon,
                     const Observable& o) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be finite and non-negative");
  }
  EstimatorConfig c;
  c.gamma = gamma;
  c.delta = delta;
  c.kind = kind;
  c.epsilon = kind == BoundKind::Exact ? 0.0 : epsilon;

  const double d1 = static_cast<double>(o.dim()) + 1.0;
  const double norm_sq = o.op_norm() * o.op_norm();
  double slack = 0.0;
  switch (kind) {
    case BoundKind::Exact:
      break;
    case BoundKind::Relative:
      if (!o.is_positive()) {
        throw Error(ErrorKind::NonPositiveObservable,
                    "relative-design guarantee needs a positive observable");
      }
      slack = 10.0 * c.epsilon * o.trace() * o.trace();
      c.bias_bound = 2.0 * c.epsilon * o.trace();
      break;
    case BoundKind::Additive:
      slack = 3.0 * c.epsilon * norm_sq * d1 * d1;
      c.bias_bound = d1 * c.epsilon * o.op_norm();
      break;
    case BoundKind::Pseudo:
      slack = 6.0 * c.epsilon * norm_sq * d1 * d1;
      c.bias_bound = 2.0 * d1 * c.epsilon * o.op_norm();
      break;
  }
  c.variance_bound = 3.0 * o.traceless_sq() + slack;
  c.k = median_block_count(delta);
  c.l = median_block_length(gamma, c.variance_bound);
  return c;
}

std::uint64_t median_block_count(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  }
  return std::max<std::uint64_t>(1, tolerant_ceil(2.0 * std::log(2.0 / delta)));
}

std::uint64_t median_block_length(double gamma, double variance_bound) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  }
  if (!(variance_bound >= 0.0) || !std::isfinite(variance_bound)) {
    throw Error(ErrorKind::InvalidArgument, "variance bound must be finite and non-negative");
  }
  return std::max<std::uint64_t>(1, tolerant_ceil(34.0 / (gamma * gamma) * variance_bound));
}

std::vector<double> shot_estimates(const StateSource& source, const Ensemble& ensemble,
                                   const Observable& o, std::uint64_t shots,
                                   const RunOptions& options) {
  require_same_qubits(source.qubits(), o.qubits(), "state/observable");
  std::vector<double> values(shots);
  run_shots(source, ensemble, shots, options,
            [&](std::size_t i, const Snapshot& snap, ShotWorkspace& work) {
              values[i] = shadow_estimate(o, work.zeta(), snap.mask, work.scratch());
            });
  return values;
}

EstimateReport estimate_observable(const StateSource& source, const Ensemble& ensemble,
                                   const Observable& o, const EstimatorConfig& config,
                                   const RunOptions& options) {
  require_same_qubits(source.qubits(), o.qubits(), "state/observable");
  EstimateReport r;
  r.k = config.k;
  r.l = config.l;
  r.total_shots = config.total_shots();
  r.bias_bound = config.bias_bound;
  r.variance_bound = config.variance_bound;
  r.seed = options.seed;

  std::vector<double> values(r.total_shots);
  if (options.record_shots) r.shots.resize(r.total_shots);
  run_shots(source, ensemble, r.total_shots, options,
            [&](std::size_t i, const Snapshot& snap, ShotWorkspace& work) {
              values[i] = shadow_estimate(o, work.zeta(), snap.mask, work.scratch());
              if (options.record_shots) r.shots[i] = {i, snap.key, snap.mask, values[i]};
            });

  r.estimate = median_of_means(values, r.k, r.l);
  const auto stats = summarize(values, 0.0);
  r.empirical_mean = stats.mean;
  r.empirical_variance = stats.variance;
  return r;
}

CMatrix channel_apply(const Ensemble& ensemble, const DensityMatrix& rho) {
  require_same_qubits(ensemble.qubits(), rho.qubits(), "ensemble/state");
  if (const auto* support = ensemble.support()) {
    CMatrix out(rho.dim(), rho.dim());
    for (const auto& e : *support) add_state_channel(e.state.amplitudes(), rho, e.weight, out);
    return out;
  }
  if (auto m = ensemble.analytic_moment(2)) return channel_apply(*m, rho);
  throw Error(ErrorKind::NotEnumerable,
              "ensemble '" + ensemble.name() + "' has no finite support or closed form");
}

CMatrix channel_apply(const Ensemble& ensemble, const DensityMatrix& rho, std::uint64_t samples,
                      const Stream& rng) {
  require_same_qubits(ensemble.qubits(), rho.qubits(), "ensemble/state");
  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
  CMatrix out(rho.dim(), rho.dim());
  const double w = 1.0 / static_cast<double>(samples);
  for (std::uint64_t s = 0; s < samples; ++s) {
    Stream child = rng.child(s);
    const PureState zeta = ensemble.sample(child);
    add_state_channel(zeta.amplitudes(), rho, w, out);
  }
  return out;
}

CMatrix channel_apply(const MomentOperator& second_moment, const DensityMatrix& rho) {
  if (second_moment.copies != 2) {
    throw Error(ErrorKind::InvalidArgument, "channel needs the two-copy moment");
  }
  require_same_qubits(second_moment.qubits, rho.qubits(), "moment/state");
  const std::size_t dim = rho.dim();
  const CMatrix k = second_moment.matrix.conjugate();  // moment of ζ*
  auto at = [&](std::size_t i, std::size_t a, std::size_t j, std::size_t b) {
    return k(i * dim + a, j * dim + b);
  };
  // out(a,b) = Σ_{x,z} 2^{-n} Σ_{i,j} ρ(i,j) [(P⊗P) K (P⊗P)†](j a, i b).
  CMatrix out(dim, dim);
  const double scale = 1.0 / static_cast<double>(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
          Complex acc = 0.0;
          for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
              const double s = sign_of(z, j ^ x) * sign_of(z, a ^ x) * sign_of(z, i ^ x) *
                               sign_of(z, b ^ x);
              acc += rho.matrix()(i, j) * s * at(j ^ x, a ^ x, i ^ x, b ^ x);
            }
          }
          out(a, b) += scale * acc;
        }
      }
    }
  }
  return out;
}

CMatrix depolarizing_inverse(const CMatrix& a) {
  if (!a.square()) throw Error(ErrorKind::DimMismatch, "depolarizing inverse needs a square matrix");
  CMatrix out = a * Complex(static_cast<double>(a.rows()) + 1.0);
  const Complex tr = a.trace();
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) -= tr;
  return out;
}

CMatrix pauli_conjugate(const CMatrix& a, const PauliMask& mask) {
  const std::size_t dim = a.rows();
  if (!a.square() || dim != basis_dim(mask.qubits)) {
    throw Error(ErrorKind::DimMismatch, "Pauli mask does not match the matrix");
  }
  CMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      out(i, j) = sign_of(mask.z, i) * sign_of(mask.z, j) * a(i ^ mask.x, j ^ mask.x);
    }
  }
  return out;
}

BiasVariance summarize(std::span<const double> values, double true_value) {
  if (values.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d = (v - mean) * (v - mean);
    m2 += d;
    m4 += d * d;
  }
  BiasVariance r;
  r.shots = values.size();
  r.true_value = true_value;
  r.mean = mean;
  r.bias = mean - true_value;
  r.variance = m2 / (n - 1.0);
  r.bias_std_error = std::sqrt(r.variance / n);
  const double pop_var = m2 / n;
  r.variance_std_error = std::sqrt(std::max(0.0, m4 / n - pop_var * pop_var) / n);
  return r;
}

BiasVariance empirical_bias_variance(const StateSource& source, const Ensemble& ensemble,
                                     const Observable& o, std::uint64_t shots,
                                     const RunOptions& options) {
  const auto values = shot_estimates(source, ensemble, o, shots, options);
  return summarize(values, o.expectation(source.density()));
}

}  // namespace qshadow
