// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "qshadow/error.hpp"
#include "qshadow/moments.hpp"
#include "qshadow/oracles/brute_force.hpp"

namespace qshadow {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return static_cast<std::uint64_t>(std::llround(r));
}

TEST(SymDim, Values) {
  EXPECT_EQ(sym_dim(1, 2), 3u);   // 2·3/2
  EXPECT_EQ(sym_dim(2, 2), 10u);  // 4·5/2
  EXPECT_EQ(sym_dim(2, 3), 20u);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 1; t <= 3; ++t) EXPECT_EQ(sym_dim(n, t), binomial((1u << n) + t - 1, t));
  }
  EXPECT_THROW(sym_dim(5, 3), Error);
  EXPECT_THROW(sym_dim(0, 1), Error);
}

TEST(SymProjector, SingleCopyIsIdentity) {
  EXPECT_EQ(sym_projector(2, 1), CMatrix::identity(4));
}

TEST(SymProjector, TwoQubitsComplementIsSinglet) {
  const double r = 1.0 / std::sqrt(2.0);
  const CVector singlet{0.0, r, -r, 0.0};
  CMatrix expected = CMatrix::identity(4);
  expected.add_projector(singlet, -1.0);
  EXPECT_LE(max_abs_diff(sym_projector(1, 2), expected), 1e-15);
}

TEST(SymProjector, IdempotentHermitianWithSymDimTrace) {
  for (auto [n, t] : {std::pair{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
    const CMatrix p = sym_projector(n, t);
    EXPECT_LE(max_abs_diff(p * p, p), 1e-10);
    EXPECT_TRUE(is_hermitian(p));
    EXPECT_NEAR(p.trace().real(), static_cast<double>(sym_dim(n, t)), 1e-10);
  }
  EXPECT_THROW(sym_projector(4, 4), Error);
}

TEST(SymmetricBasis, IsometryRangeIsSym) {
  for (auto [n, t] : {std::pair{1, 3}, {2, 2}, {2, 3}}) {
    const auto basis = symmetric_basis(n, t);
    const CMatrix v = basis.isometry();
    EXPECT_EQ(basis.dim(), sym_dim(n, t));
    EXPECT_LE(max_abs_diff(v.adjoint() * v, CMatrix::identity(basis.dim())), 1e-14);
    EXPECT_LE(max_abs_diff(v * v.adjoint(), sym_projector(n, t)), 1e-14);
  }
}

TEST(HaarMoment, SingleQubitSingleCopy) {
  CMatrix half = CMatrix::identity(2);
  half *= 0.5;
  EXPECT_LE(max_abs_diff(haar_moment(1, 1).matrix, half), 1e-15);
}

TEST(HaarMoment, TraceAndSymInvariance) {
  for (auto [n, t] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 3}}) {
    const auto h = haar_moment(n, t);
    EXPECT_TRUE(h.exact());
    EXPECT_NEAR(h.matrix.trace().real(), 1.0, 1e-12);
    EXPECT_LE(max_abs_diff(sym_projector(n, t) * h.matrix, h.matrix), 1e-12);
  }
}

TEST(HaarMoment, FullTraceWithIdentities) {
  for (int n = 1; n <= 3; ++n) {
    const double d = std::ldexp(1.0, n);
    const auto h = haar_moment(n, 2);
    EXPECT_NEAR(d * (d + 1.0) * h.matrix.trace().real(), d * d + d, 1e-9);
  }
}

TEST(HaarMoment, SecondMomentPartialTraceIdentity) {
  Stream rng(1);
  for (int n = 1; n <= 3; ++n) {
    const std::size_t d = basis_dim(n);
    const auto h = haar_moment(n, 2);
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix a = oracles::random_hermitian(d, rng);
      const CMatrix b = oracles::random_hermitian(d, rng);
      const CMatrix lhs = partial_trace_second(h.matrix * kron(a, b), d, d);
      EXPECT_LE(max_abs_diff(lhs, oracles::haar_second_moment_partial_trace(a, b)), 1e-9);
      const Complex full = (h.matrix * kron(a, b)).trace();
      EXPECT_LE(std::abs(full - oracles::haar_second_moment_trace(a, b)), 1e-9);
    }
  }
}

TEST(HaarMoment, PauliTwirlIsDepolarising) {
  Stream rng(2);
  for (int n = 1; n <= 4; ++n) {
    const auto zeta = haar_sample(n, rng);
    CMatrix sum(zeta.dim(), zeta.dim());
    for (std::uint64_t x = 0; x < zeta.dim(); ++x) {
      for (std::uint64_t z = 0; z < zeta.dim(); ++z) {
        sum.add_projector(apply_pauli(zeta, PauliMask{n, x, z}).amplitudes(), 1.0);
      }
    }
    CMatrix expected = CMatrix::identity(zeta.dim());
    expected *= static_cast<double>(zeta.dim());
    EXPECT_LE(max_abs_diff(sum, expected), 1e-9);
  }
}

TEST(EnsembleMoment, SingleStateIsTensorPower) {
  const auto zero = PureState::basis(2, 0);
  const auto m = ensemble_moment(*single_state_ensemble(zero), 3);
  CMatrix expected(64, 64);
  expected(0, 0) = 1.0;
  EXPECT_LE(max_abs_diff(m.matrix, expected), 1e-15);
}

TEST(EnsembleMoment, StabilizerIsExactThreeDesign) {
  for (int n = 1; n <= 2; ++n) {
    const auto m = ensemble_moment(*stabilizer_ensemble(n), 3);
    EXPECT_LE(trace_norm(m.matrix - haar_moment(n, 3).matrix), 1e-9);
    EXPECT_LE(additive_epsilon(m), 1e-9);
    EXPECT_LE(relative_epsilon(m), 1e-9);
  }
}

TEST(EnsembleMoment, RealEnsembleIsFarFromComplexDesign) {
  // The distance is sensitive: real states are not a complex 2-design.
  Stream rng(3);
  std::vector<WeightedState> real_states;
  for (int i = 0; i < 200; ++i) real_states.push_back({real_haar_sample(1, rng), 1.0});
  const auto m = ensemble_moment(*finite_ensemble("real", std::move(real_states)), 2);
  EXPECT_GT(additive_epsilon(m), 0.1);
}

TEST(AdditiveEpsilon, MatchesFullSpaceTraceNorm) {
  Stream rng(12);
  for (int n = 1; n <= 2; ++n) {
    for (int t = 2; t <= 3; ++t) {
      std::vector<WeightedState> states;
      for (int i = 0; i < 6; ++i) states.push_back({haar_sample(n, rng), 1.0 + i});
      const auto m = ensemble_moment(*finite_ensemble("few", std::move(states)), t);
      const double full = trace_norm(m.matrix - haar_moment(n, t).matrix);
      EXPECT_NEAR(additive_epsilon(m), full, 1e-11) << n << " " << t;

      // Weight outside Sym takes the full-space path.
      MomentOperator leaky = m;
      leaky.matrix += oracles::random_hermitian(m.matrix.rows(), rng) * Complex(1e-3);
      const double leaky_full = trace_norm(leaky.matrix - haar_moment(n, t).matrix);
      EXPECT_NEAR(additive_epsilon(leaky), leaky_full, 1e-12) << n << " " << t;
    }
  }
}

TEST(EnsembleMoment, MonteCarloConverges) {
  Stream rng(4);
  const auto mc = ensemble_moment(*haar_ensemble(2), 2, MomentMode::MonteCarlo, 100000, rng);
  EXPECT_FALSE(mc.exact());
  EXPECT_EQ(mc.samples, 100000u);
  EXPECT_NEAR(mc.matrix.trace().real(), 1.0, 1e-3);
  EXPECT_LE(additive_epsilon(mc), 0.05);
}

TEST(EnsembleMoment, ExactNeedsEnumerableEnsemble) {
  try {
    ensemble_moment(*binary_phase_ensemble(2), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEnumerable);
  }
  EXPECT_THROW(ensemble_moment(*haar_ensemble(5), 3), Error);
}

TEST(EnsembleMoment, ExactMomentsArePsdTraceOneOnSym) {
  Stream rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<WeightedState> states;
    for (int i = 0; i < 4; ++i) states.push_back({haar_sample(2, rng), rng.uniform()});
    const auto m = ensemble_moment(*finite_ensemble("r", std::move(states)), 2);
    EXPECT_NEAR(m.matrix.trace().real(), 1.0, 1e-9);
    EXPECT_GE(hermitian_eigenvalues(m.matrix).back(), -1e-12);
    const CMatrix anti = CMatrix::identity(16) - sym_projector(2, 2);
    EXPECT_LE(operator_norm(anti * m.matrix * anti), 1e-9);
    EXPECT_LE(support_leak(m), 1e-9);
  }
}

TEST(EnsembleMoment, RealHaarClosedFormMatchesSampling) {
  Stream rng(11);
  for (auto [n, t] : {std::pair{1, 2}, {2, 2}, {1, 3}}) {
    const auto exact = ensemble_moment(*real_haar_ensemble(n), t);
    EXPECT_NEAR(exact.matrix.trace().real(), 1.0, 1e-12);
    EXPECT_LE(support_leak(exact), 1e-12);
    const auto mc = ensemble_moment(*real_haar_ensemble(n), t, MomentMode::MonteCarlo, 50000, rng);
    EXPECT_LE(max_abs_diff(exact.matrix, mc.matrix), 0.01) << n << "," << t;
  }
}

TEST(Epsilons, HaarIsZero) {
  const auto h = haar_moment(2, 2);
  EXPECT_NEAR(additive_epsilon(h), 0.0, 1e-12);
  EXPECT_NEAR(relative_epsilon(h), 0.0, 1e-12);
}

TEST(Epsilons, SingleStateSingleCopyRelativeIsOne) {
  const auto m = ensemble_moment(*single_state_ensemble(PureState::basis(1, 0)), 1);
  EXPECT_NEAR(relative_epsilon(m), 1.0, 1e-12);
}

TEST(Epsilons, SupportLeakIsReported) {
  MomentOperator m = haar_moment(1, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m.matrix.add_projector(CVector{0.0, r, -r, 0.0}, 0.1);
  try {
    relative_epsilon(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SupportLeak);
  }
}

TEST(AdversarialMixture, ClosedFormDistances) {
  Stream rng(6);
  for (int n = 1; n <= 2; ++n) {
    for (int t = 1; t <= 3; ++t) {
      for (double eps0 : {0.02, 0.1, 0.5}) {
        const auto psi = haar_sample(n, rng);
        const auto m = ensemble_moment(*adversarial_mixture(eps0, psi), t);
        const double ds = static_cast<double>(sym_dim(n, t));
        EXPECT_NEAR(additive_epsilon(m), eps0 * (1.0 - 1.0 / ds), 1e-9);
        EXPECT_NEAR(relative_epsilon(m), 0.5 * eps0 * (ds - 1.0), 1e-9);
        EXPECT_LE(additive_epsilon(m), eps0 + 1e-12);
        if (ds >= 3.0) EXPECT_GE(relative_epsilon(m), ds * additive_epsilon(m) / 3.0 - 1e-12);
      }
    }
  }
}

TEST(AdversarialMixture, ZeroIsHaar) {
  const auto m = ensemble_moment(*adversarial_mixture(0.0, PureState::basis(2, 0)), 2);
  EXPECT_LE(max_abs_diff(m.matrix, haar_moment(2, 2).matrix), 1e-15);
  EXPECT_THROW(adversarial_mixture(1.0, PureState::basis(2, 0)), Error);
}

TEST(AdversarialMixture, SamplerMatchesAnalyticMoment) {
  Stream rng(7);
  const auto mix = adversarial_mixture(0.6, PureState::basis(1, 0));
  const auto exact = ensemble_moment(*mix, 1);
  const auto mc = ensemble_moment(*mix, 1, MomentMode::MonteCarlo, 100000, rng);
  // ⟨0|M|0⟩ = 0.7·(1/2) + 0.3 = 0.65; MC sd ≈ 0.0012.
  EXPECT_NEAR(exact.matrix(0, 0).real(), 0.65, 1e-12);
  EXPECT_NEAR(mc.matrix(0, 0).real(), 0.65, 0.006);
}

TEST(ConversionReport, MixtureRatioIsHalfSymDim) {
  Stream rng(8);
  const auto m = ensemble_moment(*adversarial_mixture(0.1, haar_sample(2, rng)), 2);
  const auto r = conversion_report(m);
  EXPECT_TRUE(r.bounds_ok());
  EXPECT_EQ(r.sym_dim, 10u);
  EXPECT_NEAR(r.eps_rel / r.eps_add, 5.0, 1e-9);
}

TEST(ConversionReport, HaarIsZeroAndOk) {
  const auto r = conversion_report(haar_moment(1, 3));
  EXPECT_NEAR(r.eps_add, 0.0, 1e-12);
  EXPECT_NEAR(r.eps_rel, 0.0, 1e-12);
  EXPECT_TRUE(r.bounds_ok());
}

TEST(ConversionReport, RefusesMonteCarlo) {
  Stream rng(9);
  const auto mc = ensemble_moment(*haar_ensemble(1), 2, MomentMode::MonteCarlo, 100, rng);
  EXPECT_THROW(conversion_report(mc), Error);
}

TEST(ConversionReport, RandomFiniteEnsemblesSatisfyBounds) {
  Stream rng(10);
  int checked = 0;
  for (int n = 1; n <= 2; ++n) {
    for (int t = 1; t <= 3; ++t) {
      for (int trial = 0; trial < 9; ++trial) {
        std::vector<WeightedState> states;
        const int size = 1 + static_cast<int>(rng.below(8));
        for (int i = 0; i < size; ++i) states.push_back({haar_sample(n, rng), rng.uniform() + 0.01});
        const auto r = conversion_report(ensemble_moment(*finite_ensemble("r", std::move(states)), t));
        EXPECT_TRUE(r.relative_to_additive) << r.eps_add << " " << r.eps_rel;
        EXPECT_TRUE(r.additive_to_relative) << r.eps_add << " " << r.eps_rel;
        EXPECT_TRUE(r.additive_to_relative_coarse);
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 50);
}

TEST(ConversionReport, ReportsRelativeAboveOneVerbatim) {
  const auto m = ensemble_moment(*single_state_ensemble(PureState::basis(2, 0)), 2);
  const auto r = conversion_report(m);
  EXPECT_GT(r.eps_rel, 1.0);
  EXPECT_NEAR(r.eps_rel, 9.0, 1e-9);  // d_s - 1 for a point mass
}

}  // namespace
}  // namespace qshadow
