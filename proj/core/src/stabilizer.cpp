// SPDX-License-Identifier: Apache-2.0
//
// Stabilizer states in the affine/quadratic-form parametrisation:
//
//   |ψ⟩ ∝ Σ_{u ∈ F_2^k} i^{ℓ·u} (-1)^{q(u)} |R u ⊕ t⟩
//
// with R an n×k full-rank binary matrix (a basis of the support's direction
// space), t an offset, ℓ ∈ F_2^k and q(u) = Σ_{i<j} Q_ij u_i u_j + Σ c_i u_i.
// For a fixed parametrisation of the support every (ℓ, Q, c) gives a distinct
// state, so uniform choices of the support and of (ℓ, Q, c) are uniform over
// stabilizer states.
#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "qshadow/error.hpp"
#include "qshadow/states.hpp"

namespace qshadow {

namespace {

struct PhaseChoice {
  std::uint64_t linear_i = 0;  // ℓ, one bit per u_i
  std::uint64_t cross = 0;     // Q_ij for i<j, packed row-major
  std::uint64_t linear_z = 0;  // c
};

int cross_terms(int k) { return k * (k - 1) / 2; }

PureState build_state(int qubits, std::span<const std::uint64_t> directions,
                      std::uint64_t offset, const PhaseChoice& phase) {
  const int k = static_cast<int>(directions.size());
  CVector amps(basis_dim(qubits));
  const double scale = 1.0 / std::sqrt(static_cast<double>(std::uint64_t{1} << k));
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u) {
    std::uint64_t index = offset;
    for (int i = 0; i < k; ++i) {
      if (u & (std::uint64_t{1} << i)) index ^= directions[static_cast<std::size_t>(i)];
    }
    int sign = std::popcount(u & phase.linear_z) & 1;
    int bit = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j, ++bit) {
        if ((phase.cross >> bit & 1) && (u >> i & 1) && (u >> j & 1)) sign ^= 1;
      }
    }
    const bool imag = (std::popcount(u & phase.linear_i) & 1) != 0;
    Complex a = imag ? Complex(0.0, scale) : Complex(scale, 0.0);
    amps[index] = sign ? -a : a;
  }
  return PureState::normalized(qubits, std::move(amps));
}

double gaussian_binomial2(int n, int k) {
  double num = 1.0;
  for (int i = 0; i < k; ++i) {
    num *= (std::ldexp(1.0, n - i) - 1.0) / (std::ldexp(1.0, k - i) - 1.0);
  }
  return num;
}

/// Reduces v against an echelon basis (pivot = highest set bit). Returns the
/// remainder; zero means v lies in the span.
std::uint64_t reduce(std::uint64_t v, const std::vector<std::uint64_t>& echelon) {
  for (auto b : echelon) {
    const auto pivot = std::uint64_t{1} << (63 - std::countl_zero(b));
    if (v & pivot) v ^= b;
  }
  return v;
}

}  // namespace

double stabilizer_count(int qubits) {
  require_qubits(qubits);
  double count = std::ldexp(1.0, qubits);
  for (int k = 1; k <= qubits; ++k) count *= std::ldexp(1.0, k) + 1.0;
  return count;
}

PureState stabilizer_sample(int qubits, Stream& rng) {
  require_qubits(qubits);
  // Number of states whose support has dimension k.
  std::vector<double> weights(static_cast<std::size_t>(qubits) + 1);
  double total = 0.0;
  for (int k = 0; k <= qubits; ++k) {
    weights[static_cast<std::size_t>(k)] =
        gaussian_binomial2(qubits, k) * std::ldexp(1.0, k * (k + 1) / 2);
    total += weights[static_cast<std::size_t>(k)];
  }
  double pick = rng.uniform() * total;
  int k = qubits;
  for (int j = 0; j <= qubits; ++j) {
    pick -= weights[static_cast<std::size_t>(j)];
    if (pick < 0.0) {
      k = j;
      break;
    }
  }

  const std::uint64_t dim = basis_dim(qubits);
  std::vector<std::uint64_t> directions;
  std::vector<std::uint64_t> echelon;
  while (static_cast<int>(directions.size()) < k) {
    const std::uint64_t v = rng.below(dim);
    const std::uint64_t r = reduce(v, echelon);
    if (r == 0) continue;
    directions.push_back(v);
    // r carries a fresh pivot; keep pivots in descending order.
    echelon.push_back(r);
    std::sort(echelon.begin(), echelon.end(), std::greater<>());
  }
  const std::uint64_t offset = rng.below(dim);

  PhaseChoice phase;
  const std::uint64_t kmask = (std::uint64_t{1} << k) - 1;
  phase.linear_i = rng.next_u64() & kmask;
  phase.linear_z = rng.next_u64() & kmask;
  phase.cross = cross_terms(k) == 0 ? 0 : rng.next_u64() & ((std::uint64_t{1} << cross_terms(k)) - 1);
  return build_state(qubits, directions, offset, phase);
}

std::vector<PureState> stabilizer_enumerate(int qubits) {
  require_qubits(qubits);
  if (qubits > 3) {
    throw Error(ErrorKind::SizeLimit,
                "stabilizer enumeration supports at most 3 qubits, got " + std::to_string(qubits));
  }
  const std::uint64_t dim = basis_dim(qubits);

  // Linear subspaces keyed by their element set (one bit per vector).
  std::map<std::uint64_t, std::vector<std::uint64_t>> subspaces;
  subspaces.emplace(std::uint64_t{1}, std::vector<std::uint64_t>{});
  std::vector<std::uint64_t> tuple;
  auto extend = [&](auto&& self, std::uint64_t start) -> void {
    for (std::uint64_t v = start; v < dim; ++v) {
      tuple.push_back(v);
      std::uint64_t members = 0;
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << tuple.size()); ++u) {
        std::uint64_t e = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
          if (u >> i & 1) e ^= tuple[i];
        }
        members |= std::uint64_t{1} << e;
      }
      if (static_cast<std::size_t>(std::popcount(members)) == (std::size_t{1} << tuple.size())) {
        subspaces.try_emplace(members, tuple);
        self(self, v + 1);
      }
      tuple.pop_back();
    }
  };
  extend(extend, 1);

  std::vector<PureState> states;
  states.reserve(static_cast<std::size_t>(stabilizer_count(qubits)));
  for (const auto& [members, directions] : subspaces) {
    const int k = static_cast<int>(directions.size());
    std::map<std::uint64_t, std::uint64_t> cosets;  // element set -> offset
    for (std::uint64_t t = 0; t < dim; ++t) {
      std::uint64_t shifted = 0;
      for (std::uint64_t e = 0; e < dim; ++e) {
        if (members >> e & 1) shifted |= std::uint64_t{1} << (e ^ t);
      }
      cosets.try_emplace(shifted, t);
    }
    const std::uint64_t nk = std::uint64_t{1} << k;
    const std::uint64_t ncross = std::uint64_t{1} << cross_terms(k);
    for (const auto& [unused, offset] : cosets) {
      for (std::uint64_t li = 0; li < nk; ++li) {
        for (std::uint64_t lz = 0; lz < nk; ++lz) {
          for (std::uint64_t cross = 0; cross < ncross; ++cross) {
            states.push_back(build_state(qubits, directions, offset, {li, cross, lz}));
          }
        }
      }
    }
  }
  return states;
}

}  // namespace qshadow
