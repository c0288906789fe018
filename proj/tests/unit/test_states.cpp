// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "qshadow/error.hpp"
#include "qshadow/moments.hpp"
#include "qshadow/ensembles.hpp"
#include "qshadow/oracles/brute_force.hpp"
#include "qshadow/states.hpp"

namespace qshadow {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState plus() { return PureState(1, {kInvSqrt2, kInvSqrt2}); }
PureState minus() { return PureState(1, {kInvSqrt2, -kInvSqrt2}); }
PureState plus_i() { return PureState(1, {kInvSqrt2, Complex(0.0, kInvSqrt2)}); }

TEST(PureState, ValidatesNormAndLength) {
  EXPECT_THROW(PureState(1, {1.0, 1.0}), Error);
  EXPECT_THROW(PureState(2, {1.0, 0.0}), Error);
  EXPECT_NO_THROW(PureState(1, {1.0, 0.0}));
  EXPECT_THROW(PureState::normalized(1, {0.0, 0.0}), Error);
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_THROW(DensityMatrix(1, CMatrix(2, 2, {0.5, 0.0, 0.0, 0.6})), Error);   // trace
  EXPECT_THROW(DensityMatrix(1, CMatrix(2, 2, {1.5, 0.0, 0.0, -0.5})), Error);  // negative
  EXPECT_THROW(DensityMatrix(1, CMatrix(2, 2, {0.5, 0.1, 0.0, 0.5})), Error);   // Hermitian
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
}

TEST(PauliMask, BitStringsPutQubitZeroFirst) {
  const auto m = PauliMask::from_strings("10", "01");
  EXPECT_EQ(m.x, 0b10u);
  EXPECT_EQ(m.z, 0b01u);
  EXPECT_EQ(m.x_string(), "10");
  EXPECT_EQ(m.z_string(), "01");
  EXPECT_THROW(PauliMask::from_strings("1", "01"), Error);
}

TEST(ApplyPauli, SingleQubitCases) {
  const auto zero = PureState::basis(1, 0);
  EXPECT_LT(projector_distance(apply_pauli(zero, PauliMask::from_strings("1", "0")),
                               PureState::basis(1, 1)), 1e-15);
  EXPECT_LT(projector_distance(apply_pauli(zero, PauliMask::from_strings("0", "1")), zero), 1e-15);
  EXPECT_LT(projector_distance(apply_pauli(plus(), PauliMask::from_strings("0", "1")), minus()),
            1e-15);
}

TEST(ApplyPauli, QubitZeroIsMostSignificant) {
  // X on qubit 0 of |00⟩ gives basis index 2 (= |10⟩).
  const auto out = apply_pauli(PureState::basis(2, 0), PauliMask::from_strings("10", "00"));
  EXPECT_NEAR(std::abs(out[2]), 1.0, 1e-15);
}

TEST(ApplyPauli, MatchesOperatorMatrix) {
  Stream rng(5);
  for (int n = 1; n <= 3; ++n) {
    const auto s = haar_sample(n, rng);
    for (std::uint64_t x = 0; x < basis_dim(n); ++x) {
      for (std::uint64_t z = 0; z < basis_dim(n); ++z) {
        const PauliMask m{n, x, z};
        const auto fast = apply_pauli(s, m);
        const CVector slow = oracles::pauli_operator(m) * s.amplitudes();
        for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_NEAR(std::abs(fast[i] - slow[i]), 0.0, 1e-14);
      }
    }
  }
}

TEST(ApplyPauli, RejectsWrongLength) {
  try {
    apply_pauli(PureState::basis(2, 0), PauliMask::from_strings("1", "0"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
  }
}

TEST(ApplyPauli, IsometryAndInvolutionUpToPhase) {
  Stream rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const auto s = haar_sample(n, rng);
    const PauliMask m{n, rng.below(basis_dim(n)), rng.below(basis_dim(n))};
    const auto once = apply_pauli(s, m);
    EXPECT_NEAR(norm(once.amplitudes()), norm(s.amplitudes()), 1e-14);
    const auto twice = apply_pauli(once, m);
    EXPECT_LT(projector_distance(twice, s), 1e-14);
    // Global phase is (-1)^{x·z}.
    const double phase = (std::popcount(m.x & m.z) & 1) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_NEAR(std::abs(twice[i] - phase * s[i]), 0.0, 1e-14);
  }
}

TEST(Conjugate, CasesAndInvolution) {
  EXPECT_LT(projector_distance(conjugate(plus()), plus()), 1e-15);
  const auto c = conjugate(plus_i());
  EXPECT_NEAR(c[1].imag(), -kInvSqrt2, 1e-15);
  Stream rng(7);
  const auto s = haar_sample(3, rng);
  const auto cc = conjugate(conjugate(s));
  for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_EQ(cc[i], s[i]);
}

TEST(Conjugate, CommutesWithPauliUpToPhase) {
  Stream rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const auto s = haar_sample(n, rng);
    const PauliMask m{n, rng.below(basis_dim(n)), rng.below(basis_dim(n))};
    EXPECT_LT(projector_distance(conjugate(apply_pauli(s, m)), apply_pauli(conjugate(s), m)),
              1e-14);
  }
}

TEST(HaarSample, UnitNorm) {
  Stream rng(9);
  for (int i = 0; i < 200; ++i) {
    EXPECT_NEAR(norm(haar_sample(3, rng).amplitudes()), 1.0, 1e-12);
  }
}

TEST(HaarSample, FirstAndSecondOverlapMoments) {
  // E|⟨0|ψ⟩|² = 1/2^n and, for n = 1, E|⟨0|ψ⟩|⁴ = 2/(2·3).
  Stream rng(10);
  const int draws = 100000;
  double s2 = 0.0, s2sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double p = std::norm(haar_sample(2, rng)[0]);
    s2 += p;
    s2sq += p * p;
  }
  const double mean2 = s2 / draws;
  const double sd2 = std::sqrt((s2sq / draws - mean2 * mean2) / draws);
  EXPECT_NEAR(mean2, 0.25, 5.0 * sd2);

  double s4 = 0.0, s4sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double p = std::norm(haar_sample(1, rng)[0]);
    s4 += p * p;
    s4sq += p * p * p * p;
  }
  const double mean4 = s4 / draws;
  const double sd4 = std::sqrt((s4sq / draws - mean4 * mean4) / draws);
  EXPECT_NEAR(mean4, 1.0 / 3.0, 5.0 * sd4);
}

TEST(RealHaarSample, RealAndNormalised) {
  Stream rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto s = real_haar_sample(3, rng);
    EXPECT_NEAR(norm(s.amplitudes()), 1.0, 1e-12);
    for (const auto& a : s.amplitudes()) EXPECT_EQ(a.imag(), 0.0);
  }
}

TEST(BinaryPhaseSample, SignedUniformAmplitudes) {
  Stream rng(12);
  for (int n : {1, 3, 7}) {
    const auto s = binary_phase_sample(n, rng);
    const double amp = std::pow(2.0, -0.5 * n);
    for (const auto& a : s.amplitudes()) {
      EXPECT_EQ(a.imag(), 0.0);
      EXPECT_NEAR(std::abs(a.real()), amp, 1e-15);
    }
  }
}

TEST(BinaryPhaseSample, ReportsMonteCarloDistanceToHaar) {
  Stream rng(13);
  const auto m = ensemble_moment(*binary_phase_ensemble(3), 2, MomentMode::MonteCarlo, 20000, rng);
  const double eps = additive_epsilon(m);
  RecordProperty("binary_phase_t2_n3_eps_add", std::to_string(eps));
  EXPECT_TRUE(std::isfinite(eps));
  EXPECT_GT(eps, 0.0);
}

TEST(Stabilizer, CountsMatchFormula) {
  for (int n = 1; n <= 3; ++n) {
    const auto states = stabilizer_enumerate(n);
    EXPECT_EQ(states.size(), oracles::stabilizer_count_formula(n));
    EXPECT_EQ(static_cast<std::uint64_t>(stabilizer_count(n)), oracles::stabilizer_count_formula(n));
  }
  EXPECT_EQ(stabilizer_enumerate(1).size(), 6u);
  EXPECT_EQ(stabilizer_enumerate(2).size(), 60u);
}

TEST(Stabilizer, EnumeratedStatesAreDistinct) {
  for (int n = 1; n <= 3; ++n) {
    const auto states = stabilizer_enumerate(n);
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = i + 1; j < states.size(); ++j) {
        ASSERT_GT(projector_distance(states[i], states[j]), 1e-6) << n << ": " << i << "," << j;
      }
    }
  }
}

TEST(Stabilizer, SingleQubitSetIsTheSixPauliEigenstates) {
  const auto states = stabilizer_enumerate(1);
  const PureState expected[] = {PureState::basis(1, 0), PureState::basis(1, 1), plus(), minus(),
                                plus_i(), conjugate(plus_i())};
  for (const auto& e : expected) {
    int hits = 0;
    for (const auto& s : states) hits += projector_distance(s, e) < 1e-12 ? 1 : 0;
    EXPECT_EQ(hits, 1);
  }
}

TEST(Stabilizer, EnumerationRejectsLargeRegisters) {
  try {
    stabilizer_enumerate(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimit);
  }
}

TEST(Stabilizer, SamplerHitsEveryStateUniformly) {
  const auto states = stabilizer_enumerate(2);
  std::vector<int> hits(states.size(), 0);
  Stream rng(14);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    const auto s = stabilizer_sample(2, rng);
    int found = -1;
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (projector_distance(s, states[j]) < 1e-10) {
        found = static_cast<int>(j);
        break;
      }
    }
    ASSERT_GE(found, 0) << "sampled state is not a stabilizer state";
    ++hits[static_cast<std::size_t>(found)];
  }
  // χ² against uniform with 59 degrees of freedom; mean 59, sd ~10.9.
  const double expected = draws / 60.0;
  double chi2 = 0.0;
  for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
  EXPECT_LT(chi2, 59.0 + 5.0 * std::sqrt(2.0 * 59.0));
}

TEST(Stabilizer, SampledFourQubitStatesAreNormalisedFlatOnSupport) {
  Stream rng(15);
  for (int i = 0; i < 100; ++i) {
    const auto s = stabilizer_sample(4, rng);
    double nonzero = -1.0;
    for (const auto& a : s.amplitudes()) {
      if (std::abs(a) < 1e-12) continue;
      if (nonzero < 0) nonzero = std::abs(a);
      EXPECT_NEAR(std::abs(a), nonzero, 1e-12);
    }
  }
}

TEST(RandomDensity, IsValidState) {
  Stream rng(16);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(2, 3, rng);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace qshadow
