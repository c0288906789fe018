// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "qshadow/error.hpp"
#include "qshadow/observables.hpp"
#include "qshadow/oracles/brute_force.hpp"

namespace qshadow {
namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sd_of_mean(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

TEST(Observable, PauliLevelsGroupExactly) {
  const auto o = Observable::pauli("ZZI");
  ASSERT_EQ(o.levels().size(), 2u);
  EXPECT_DOUBLE_EQ(o.levels()[0].value, 1.0);
  EXPECT_EQ(o.levels()[0].multiplicity, 4u);
  EXPECT_DOUBLE_EQ(o.levels()[1].value, -1.0);
  EXPECT_NEAR(o.op_norm(), 1.0, 1e-14);
  EXPECT_NEAR(o.trace(), 0.0, 1e-14);
}

TEST(Observable, ProjectorsResolveIdentity) {
  Stream rng(1);
  const auto o = Observable::gue(3, rng);
  CMatrix sum(o.dim(), o.dim());
  CMatrix weighted(o.dim(), o.dim());
  for (std::size_t i = 0; i < o.levels().size(); ++i) {
    const CMatrix p = o.level_projector(i);
    sum += p;
    weighted += p * Complex(o.levels()[i].value);
  }
  EXPECT_LE(max_abs_diff(sum, CMatrix::identity(o.dim())), 1e-10);
  EXPECT_LE(max_abs_diff(weighted, o.matrix()), 1e-10);
}

TEST(Observable, TracelessSquareIdentity) {
  Stream rng(2);
  for (int n = 1; n <= 4; ++n) {
    const auto o = Observable::gue(n, rng);
    const double tr_sq = (o.matrix() * o.matrix()).trace().real();
    EXPECT_NEAR(o.traceless_sq(), tr_sq - o.trace() * o.trace() / static_cast<double>(o.dim()), 1e-9);
  }
}

TEST(Observable, RejectsBadInput) {
  EXPECT_THROW(Observable(1, CMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), Error);
  EXPECT_THROW(Observable(2, CMatrix::identity(2)), Error);
  EXPECT_THROW(Observable::pauli("XQ"), Error);
}

TEST(Observable, RandomProjectorIsIdempotent) {
  Stream rng(3);
  const auto p = Observable::random_projector(3, 2, rng);
  EXPECT_LE(max_abs_diff(p.matrix() * p.matrix(), p.matrix()), 1e-12);
  EXPECT_NEAR(p.trace(), 2.0, 1e-12);
  EXPECT_TRUE(p.is_positive());
}

TEST(TracelessPart, Examples) {
  const auto zero = traceless_part(Observable(1, CMatrix::identity(2)));
  EXPECT_LE(zero.matrix().max_abs(), 1e-15);
  const auto z = traceless_part(Observable::pauli("Z"));
  EXPECT_EQ(z.matrix(), Observable::pauli("Z").matrix());
  const std::vector<double> d{3.0, 1.0};
  const auto t = traceless_part(Observable(1, CMatrix::diagonal(d)));
  EXPECT_NEAR(t.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(t.matrix()(1, 1).real(), -1.0, 1e-15);
}

TEST(TracelessPart, RecoversOriginal) {
  Stream rng(4);
  const auto o = Observable::gue(2, rng);
  const auto t = traceless_part(o);
  EXPECT_NEAR(t.trace(), 0.0, 1e-9);
  CMatrix back = t.matrix();
  for (std::size_t i = 0; i < o.dim(); ++i) back(i, i) += o.trace() / static_cast<double>(o.dim());
  EXPECT_LE(max_abs_diff(back, o.matrix()), 1e-12);
}

TEST(ConjugateObservable, Examples) {
  const auto x = Observable::pauli("X");
  EXPECT_EQ(conjugate_observable(x).matrix(), x.matrix());
  const auto y = Observable::pauli("Y");
  const auto yc = conjugate_observable(y);
  EXPECT_LE(max_abs_diff(yc.matrix(), y.matrix() * Complex(-1.0)), 0.0);
  EXPECT_NEAR(yc.levels()[0].value, 1.0, 1e-14);
  EXPECT_NEAR(yc.levels()[1].value, -1.0, 1e-14);
  Stream rng(5);
  const auto g = Observable::gue(3, rng);
  EXPECT_NEAR(conjugate_observable(g).op_norm(), g.op_norm(), 1e-10);
}

TEST(Measure, DeterministicEigenstate) {
  Stream rng(6);
  const auto z = Observable::pauli("Z");
  for (int i = 0; i < 100; ++i) EXPECT_EQ(measure(z, PureState::basis(1, 0), rng), 1.0);
}

TEST(Measure, PlusStateIsUnbiased) {
  Stream rng(7);
  const auto z = Observable::pauli("Z");
  const double r = 1.0 / std::sqrt(2.0);
  const PureState plus(1, {r, r});
  std::vector<double> v(100000);
  for (auto& x : v) x = measure(z, plus, rng);
  EXPECT_NEAR(mean_of(v), 0.0, 5.0 * sd_of_mean(v));
}

TEST(Measure, MeanMatchesExpectation) {
  Stream rng(8);
  const auto o = Observable::gue(2, rng);
  const auto s = haar_sample(2, rng);
  std::vector<double> v(100000);
  for (auto& x : v) x = measure(o, s, rng);
  const double exact = inner(s.amplitudes(), o.matrix() * s.amplitudes()).real();
  EXPECT_NEAR(mean_of(v), exact, 5.0 * sd_of_mean(v));
}

TEST(Measure, ConjugatePairHasSameDistribution) {
  Stream rng(9);
  const auto o = Observable::gue(2, rng);
  const auto s = haar_sample(2, rng);
  const auto p1 = level_probabilities(o, s.amplitudes());
  const auto oc = conjugate_observable(o);
  const auto p2 = level_probabilities(oc, conjugate(s).amplitudes());
  ASSERT_EQ(p1.size(), p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    EXPECT_NEAR(o.levels()[i].value, oc.levels()[i].value, 1e-12);
    EXPECT_NEAR(p1[i], p2[i], 1e-12);
  }
  // And empirically.
  std::vector<double> a(50000), b(50000);
  for (auto& x : a) x = measure(o, s, rng);
  for (auto& x : b) x = measure(oc, conjugate(s), rng);
  const double se = std::hypot(sd_of_mean(a), sd_of_mean(b));
  EXPECT_NEAR(mean_of(a), mean_of(b), 5.0 * se);
}

TEST(Measure, DimensionMismatch) {
  Stream rng(10);
  try {
    measure(Observable::pauli("ZZ"), PureState::basis(1, 0), rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimMismatch);
  }
}

TEST(ShadowEstimate, Examples) {
  Stream rng(11);
  for (int n = 1; n <= 3; ++n) {
    const auto zeta = haar_sample(n, rng);
    const PauliMask m{n, rng.below(basis_dim(n)), rng.below(basis_dim(n))};
    const Observable id(n, CMatrix::identity(basis_dim(n)));
    EXPECT_NEAR(shadow_estimate(id, zeta, m), 1.0, 1e-12);
  }
  EXPECT_NEAR(shadow_estimate(Observable::pauli("Z"), PureState::basis(1, 0), PauliMask{1, 0, 0}),
              3.0, 1e-14);
}

TEST(ShadowEstimate, AgreesWithMatrixPath) {
  Stream rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const auto o = Observable::gue(n, rng);
    const auto zeta = haar_sample(n, rng);
    const PauliMask m{n, rng.below(basis_dim(n)), rng.below(basis_dim(n))};
    EXPECT_NEAR(shadow_estimate(o, zeta, m), oracles::snapshot_matrix_estimate(o, zeta, m), 1e-10);
  }
}

TEST(ShadowEstimate, ShiftByTraceOnly) {
  // Estimates of O and O₀ differ by the constant Tr(O)/2^n, so their
  // variances over any set of snapshots coincide.
  Stream rng(13);
  const auto o = Observable::gue(2, rng);
  const auto o0 = traceless_part(o);
  const double shift = o.trace() / static_cast<double>(o.dim());
  for (int i = 0; i < 50; ++i) {
    const auto zeta = haar_sample(2, rng);
    const PauliMask m{2, rng.below(4), rng.below(4)};
    EXPECT_NEAR(shadow_estimate(o, zeta, m) - shadow_estimate(o0, zeta, m), shift, 1e-10);
  }
}

}  // namespace
}  // namespace qshadow
