// SPDX-License-Identifier: Apache-2.0
#include "qshadow/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qshadow/error.hpp"
#include "qshadow/moments.hpp"

namespace qshadow {

void Ensemble::fill_state(std::uint64_t key, std::span<Complex> out) const {
  const PureState s = state(key);
  if (out.size() != s.dim()) throw Error(ErrorKind::DimMismatch, "fill_state buffer length");
  std::copy(s.amplitudes().begin(), s.amplitudes().end(), out.begin());
}

namespace {

void normalize(std::span<Complex> v) {
  double sq = 0.0;
  for (const auto& a : v) sq += std::norm(a);
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& a : v) a *= inv;
}

void fill_haar(std::uint64_t key, std::span<Complex> out) {
  Stream rng(key);
  for (auto& a : out) a = rng.complex_normal();
  normalize(out);
}

// Ensembles drawn fresh from a sampler; the key is the sampler's stream key.
class SampledEnsemble : public Ensemble {
 public:
  using Ensemble::Ensemble;
  std::uint64_t draw_key(Stream& rng) const override { return rng.next_u64(); }
  PureState state(std::uint64_t key) const override {
    CVector amps(basis_dim(qubits()));
    fill_state(key, amps);
    return PureState(qubits(), std::move(amps));
  }
};

class HaarEnsemble final : public SampledEnsemble {
 public:
  explicit HaarEnsemble(int qubits) : SampledEnsemble("haar", qubits) {}
  void fill_state(std::uint64_t key, std::span<Complex> out) const override {
    fill_haar(key, out);
  }
  std::optional<MomentOperator> analytic_moment(int copies) const override {
    return haar_moment(qubits(), copies);
  }
};

// E[ψ^{⊗t} ψ^{⊗t T}] for ψ uniform on the real unit sphere of dimension d:
// by Wick's theorem each entry is (number of perfect matchings of the 2t
// indices into equal pairs) / (d (d+2) ... (d+2t-2)).
MomentOperator real_haar_moment(int qubits, int copies) {
  sym_dim(qubits, copies);  // size guard
  const std::size_t d = basis_dim(qubits);
  const std::size_t dim = std::size_t{1} << (qubits * copies);
  double norm = 1.0;
  for (int k = 0; k < copies; ++k) norm *= static_cast<double>(d) + 2.0 * k;

  MomentOperator m;
  m.qubits = qubits;
  m.copies = copies;
  m.matrix = CMatrix(dim, dim);
  const std::uint64_t mask = d - 1;
  std::vector<std::uint64_t> idx(static_cast<std::size_t>(2 * copies));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      for (int k = 0; k < copies; ++k) {
        idx[static_cast<std::size_t>(k)] = (r >> (qubits * k)) & mask;
        idx[static_cast<std::size_t>(copies + k)] = (c >> (qubits * k)) & mask;
      }
      std::sort(idx.begin(), idx.end());
      double matchings = 1.0;
      for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j < idx.size() && idx[j] == idx[i]) ++j;
        const std::size_t run = j - i;
        if (run % 2 == 1) {
          matchings = 0.0;
          break;
        }
        for (std::size_t f = run - 1; f > 1; f -= 2) matchings *= static_cast<double>(f);
        i = j;
      }
      m.matrix(r, c) = matchings / norm;
    }
  }
  return m;
}

class RealHaarEnsemble final : public SampledEnsemble {
 public:
  explicit RealHaarEnsemble(int qubits) : SampledEnsemble("real_haar", qubits) {}
  void fill_state(std::uint64_t key, std::span<Complex> out) const override {
    Stream rng(key);
    for (auto& a : out) a = rng.normal();
    normalize(out);
  }
  std::optional<MomentOperator> analytic_moment(int copies) const override {
    return real_haar_moment(qubits(), copies);
  }
};

class BinaryPhaseEnsemble final : public SampledEnsemble {
 public:
  explicit BinaryPhaseEnsemble(int qubits) : SampledEnsemble("binary_phase", qubits) {}
  void fill_state(std::uint64_t key, std::span<Complex> out) const override {
    Stream rng(key);
    const PureState s = binary_phase_sample(qubits(), rng);
    std::copy(s.amplitudes().begin(), s.amplitudes().end(), out.begin());
  }
};

class SampledStabilizerEnsemble final : public SampledEnsemble {
 public:
  explicit SampledStabilizerEnsemble(int qubits) : SampledEnsemble("stabilizer", qubits) {}
  void fill_state(std::uint64_t key, std::span<Complex> out) const override {
    Stream rng(key);
    const PureState s = stabilizer_sample(qubits(), rng);
    std::copy(s.amplitudes().begin(), s.amplitudes().end(), out.begin());
  }
};

class MixtureEnsemble final : public SampledEnsemble {
 public:
  MixtureEnsemble(double epsilon0, PureState psi)
      : SampledEnsemble("adversarial_mixture", psi.qubits()),
        epsilon0_(epsilon0),
        psi_(std::move(psi)) {}

  void fill_state(std::uint64_t key, std::span<Complex> out) const override {
    // The branch is decided by a stream distinct from the Haar draw.
    Stream branch(mix64(key ^ 0xa5a5a5a5a5a5a5a5ULL));
    if (branch.uniform() < 0.5 * epsilon0_) {
      std::copy(psi_.amplitudes().begin(), psi_.amplitudes().end(), out.begin());
    } else {
      fill_haar(key, out);
    }
  }

  std::optional<MomentOperator> analytic_moment(int copies) const override {
    MomentOperator m = haar_moment(qubits(), copies);
    m.matrix *= 1.0 - 0.5 * epsilon0_;
    m.matrix.add_projector(tensor_power(psi_.amplitudes(), copies), 0.5 * epsilon0_);
    return m;
  }

 private:
  double epsilon0_;
  PureState psi_;
};

class FiniteEnsemble final : public Ensemble {
 public:
  FiniteEnsemble(std::string name, int qubits, std::vector<WeightedState> elements)
      : Ensemble(std::move(name), qubits), elements_(std::move(elements)) {
    cumulative_.reserve(elements_.size());
    double acc = 0.0;
    for (const auto& e : elements_) {
      acc += e.weight;
      cumulative_.push_back(acc);
    }
  }

  std::uint64_t draw_key(Stream& rng) const override {
    const double u = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto index = static_cast<std::uint64_t>(it - cumulative_.begin());
    return std::min<std::uint64_t>(index, elements_.size() - 1);
  }

  PureState state(std::uint64_t key) const override { return element(key).state; }

  void fill_state(std::uint64_t key, std::span<Complex> out) const override {
    const auto amps = element(key).state.amplitudes();
    std::copy(amps.begin(), amps.end(), out.begin());
  }

  const std::vector<WeightedState>* support() const override { return &elements_; }

 private:
  const WeightedState& element(std::uint64_t key) const {
    if (key >= elements_.size()) {
      throw Error(ErrorKind::InvalidArgument, "ensemble key out of range for " + name());
    }
    return elements_[key];
  }

  std::vector<WeightedState> elements_;
  std::vector<double> cumulative_;
};

}  // namespace

EnsemblePtr haar_ensemble(int qubits) {
  require_qubits(qubits);
  return std::make_shared<HaarEnsemble>(qubits);
}

EnsemblePtr real_haar_ensemble(int qubits) {
  require_qubits(qubits);
  return std::make_shared<RealHaarEnsemble>(qubits);
}

EnsemblePtr binary_phase_ensemble(int qubits) {
  require_qubits(qubits);
  return std::make_shared<BinaryPhaseEnsemble>(qubits);
}

EnsemblePtr stabilizer_ensemble(int qubits) {
  require_qubits(qubits);
  if (qubits > 3) return std::make_shared<SampledStabilizerEnsemble>(qubits);
  auto states = stabilizer_enumerate(qubits);
  const double w = 1.0 / static_cast<double>(states.size());
  std::vector<WeightedState> elements;
  elements.reserve(states.size());
  for (auto& s : states) elements.push_back({std::move(s), w});
  return std::make_shared<FiniteEnsemble>("stabilizer", qubits, std::move(elements));
}

EnsemblePtr finite_ensemble(std::string name, std::vector<WeightedState> elements) {
  if (elements.empty()) throw Error(ErrorKind::InvalidArgument, "finite ensemble needs elements");
  const int qubits = elements.front().state.qubits();
  double total = 0.0;
  for (const auto& e : elements) {
    if (e.state.qubits() != qubits) {
      throw Error(ErrorKind::DimMismatch, "finite ensemble mixes qubit counts");
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::InvalidArgument, "ensemble weights must be finite and non-negative");
    }
    total += e.weight;
  }
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "ensemble weights sum to zero");
  for (auto& e : elements) e.weight /= total;
  return std::make_shared<FiniteEnsemble>(std::move(name), qubits, std::move(elements));
}

EnsemblePtr single_state_ensemble(const PureState& psi) {
  return finite_ensemble("single_state", {{psi, 1.0}});
}

EnsemblePtr adversarial_mixture(double epsilon0, const PureState& psi) {
  if (!(epsilon0 >= 0.0 && epsilon0 < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "mixture parameter must lie in [0, 1)");
  }
  return std::make_shared<MixtureEnsemble>(epsilon0, psi);
}

}  // namespace qshadow
