// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "qshadow/error.hpp"
#include "qshadow/linalg.hpp"
#include "qshadow/oracles/brute_force.hpp"

namespace qshadow {
namespace {

CMatrix pauli_x() { return CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
CMatrix pauli_z() { return CMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

CMatrix reconstruct(const HermitianEigen& eig) {
  const CMatrix d = CMatrix::diagonal(eig.values);
  return eig.vectors * d * eig.vectors.adjoint();
}

TEST(HermitianEig, DiagonalInputKeepsBasis) {
  const std::vector<double> diag{3.0, 1.0};
  const auto eig = hermitian_eig(CMatrix::diagonal(diag));
  ASSERT_EQ(eig.values.size(), 2u);
  EXPECT_NEAR(eig.values[0], 3.0, 1e-14);
  EXPECT_NEAR(eig.values[1], 1.0, 1e-14);
  EXPECT_NEAR(std::abs(eig.vectors(0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(eig.vectors(1, 1)), 1.0, 1e-14);
}

TEST(HermitianEig, PauliXSpectrum) {
  const auto eig = hermitian_eig(pauli_x());
  EXPECT_NEAR(eig.values[0], 1.0, 1e-14);
  EXPECT_NEAR(eig.values[1], -1.0, 1e-14);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(eig.vectors(0, 0)), r, 1e-12);
  EXPECT_NEAR(std::abs(eig.vectors(1, 0)), r, 1e-12);
  // (1, 1) for +1 and (1, -1) for -1, up to phase.
  EXPECT_NEAR(std::abs(eig.vectors(0, 0) - eig.vectors(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eig.vectors(0, 1) + eig.vectors(1, 1)), 0.0, 1e-12);
}

TEST(HermitianEig, ReconstructsRandomMatrices) {
  Stream rng(11);
  for (std::size_t dim : {1u, 2u, 3u, 8u, 17u, 64u, 256u}) {
    const CMatrix h = oracles::random_hermitian(dim, rng);
    const auto eig = hermitian_eig(h);
    EXPECT_LE(max_abs_diff(reconstruct(eig), h), 1e-8 * h.max_abs()) << "dim " << dim;
    double sum = 0.0;
    for (double v : eig.values) sum += v;
    EXPECT_NEAR(sum, h.trace().real(), 1e-9 * static_cast<double>(dim) * h.max_abs());
    EXPECT_TRUE(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
    const CMatrix gram = eig.vectors.adjoint() * eig.vectors;
    EXPECT_LE(max_abs_diff(gram, CMatrix::identity(dim)), 1e-10);
  }
}

TEST(HermitianEig, ReconstructsLargeMatrix) {
  Stream rng(12);
  const std::size_t dim = 512;
  const CMatrix h = oracles::random_hermitian(dim, rng);
  const auto eig = hermitian_eig(h);
  EXPECT_LE(max_abs_diff(reconstruct(eig), h), 1e-8 * h.max_abs());
}

TEST(HermitianEig, DegenerateSpectrum) {
  // Z ⊗ Z ⊗ I has two eigenvalues of multiplicity four.
  const CMatrix m = kron(kron(pauli_z(), pauli_z()), CMatrix::identity(2));
  const auto eig = hermitian_eig(m);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(eig.values[static_cast<std::size_t>(i)], 1.0, 1e-13);
  for (int i = 4; i < 8; ++i) EXPECT_NEAR(eig.values[static_cast<std::size_t>(i)], -1.0, 1e-13);
  EXPECT_LE(max_abs_diff(reconstruct(eig), m), 1e-12);
}

TEST(HermitianEig, EigenvaluesOnlyPathAgrees) {
  Stream rng(13);
  const CMatrix h = oracles::random_hermitian(20, rng);
  const auto full = hermitian_eig(h).values;
  const auto only = hermitian_eigenvalues(h);
  ASSERT_EQ(full.size(), only.size());
  for (std::size_t i = 0; i < full.size(); ++i) EXPECT_NEAR(full[i], only[i], 1e-10);
}

TEST(HermitianEig, RejectsNonHermitian) {
  CMatrix m(2, 2, {1.0, 2.0, 0.0, 1.0});
  try {
    hermitian_eig(m);
    FAIL() << "expected NonHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonHermitian);
  }
  EXPECT_THROW(hermitian_eig(CMatrix(2, 3)), Error);
}

TEST(HermitianEig, AbsorbsRoundOffAsymmetry) {
  CMatrix m = pauli_x();
  m(0, 1) += 1e-12;
  EXPECT_NO_THROW(hermitian_eig(m));
}

TEST(Kron, IdentityAndPaulis) {
  EXPECT_EQ(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4));
  const CMatrix xz = kron(pauli_x(), pauli_z());
  const CMatrix expected(4, 4, {0, 0, 1, 0,
                                0, 0, 0, -1,
                                1, 0, 0, 0,
                                0, -1, 0, 0});
  EXPECT_EQ(xz, expected);
}

TEST(Kron, TraceIsMultiplicative) {
  Stream rng(21);
  const CMatrix a = oracles::random_hermitian(4, rng);
  const CMatrix b = oracles::random_hermitian(4, rng);
  EXPECT_NEAR(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 0.0, 1e-12);
}

CMatrix gaussian_integer_matrix(std::size_t dim, Stream& rng) {
  CMatrix m(dim, dim);
  for (auto& a : m.entries()) {
    a = Complex(static_cast<double>(rng.below(17)) - 8.0, static_cast<double>(rng.below(17)) - 8.0);
  }
  return m;
}

// Exact whenever every product is representable, as for Pauli and gate entries.
TEST(Kron, AssociativeExactly) {
  Stream rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = gaussian_integer_matrix(2, rng);
    const CMatrix b = gaussian_integer_matrix(3, rng);
    const CMatrix c = gaussian_integer_matrix(2, rng);
    EXPECT_EQ(kron(kron(a, b), c), kron(a, kron(b, c)));
  }
  const CMatrix h = CMatrix(2, 2, {1.0, 1.0, 1.0, -1.0});
  const CMatrix y = CMatrix(2, 2, {0.0, Complex(0, -1), Complex(0, 1), 0.0});
  EXPECT_EQ(kron(kron(h, y), h), kron(h, kron(y, h)));
}

TEST(Kron, AssociativeToRoundingForGeneralEntries) {
  Stream rng(24);
  const CMatrix a = oracles::random_hermitian(2, rng);
  const CMatrix b = oracles::random_hermitian(3, rng);
  const CMatrix c = oracles::random_hermitian(2, rng);
  const CMatrix left = kron(kron(a, b), c);
  EXPECT_LE(max_abs_diff(left, kron(a, kron(b, c))), 4e-16 * left.max_abs());
}

TEST(Kron, IndexFormula) {
  Stream rng(23);
  const CMatrix a = oracles::random_hermitian(3, rng);
  const CMatrix b = oracles::random_hermitian(2, rng);
  const CMatrix k = kron(a, b);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(k(i * 2 + r, j * 2 + c), a(i, j) * b(r, c));
}

TEST(PartialTrace, OfProductIsScaledFactor) {
  Stream rng(24);
  const CMatrix a = oracles::random_hermitian(3, rng);
  const CMatrix b = oracles::random_hermitian(4, rng);
  const CMatrix expected = a * b.trace();
  EXPECT_LE(max_abs_diff(partial_trace_second(kron(a, b), 3, 4), expected), 1e-12);
}

TEST(Norms, ClosedForms) {
  const std::vector<double> d1{1.0, -1.0};
  EXPECT_NEAR(trace_norm(CMatrix::diagonal(d1)), 2.0, 1e-14);
  EXPECT_NEAR(trace_norm(CMatrix(3, 3)), 0.0, 1e-14);
  // |0⟩⟨0| - I/2 has eigenvalues ±1/2.
  CMatrix p(2, 2, {0.5, 0.0, 0.0, -0.5});
  EXPECT_NEAR(trace_norm(p), 1.0, 1e-14);
  EXPECT_NEAR(operator_norm(CMatrix::identity(5)), 1.0, 1e-14);
  const std::vector<double> d2{5.0, -7.0};
  EXPECT_NEAR(operator_norm(CMatrix::diagonal(d2)), 7.0, 1e-14);
}

TEST(Norms, OperatorNormMatchesPowerIteration) {
  Stream rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix h = oracles::random_hermitian(12, rng);
    EXPECT_NEAR(operator_norm(h), oracles::power_iteration_norm(h, rng), 1e-8);
  }
}

TEST(Norms, OrderingProperty) {
  Stream rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + rng.below(16);
    const CMatrix h = oracles::random_hermitian(dim, rng);
    const double tn = trace_norm(h);
    const double on = operator_norm(h);
    EXPECT_GE(tn + 1e-12, on);
    EXPECT_GE(on + 1e-12, tn / static_cast<double>(dim));
  }
}

TEST(Norms, RequireHermitianInput) {
  EXPECT_THROW(trace_norm(CMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), Error);
  EXPECT_THROW(operator_norm(CMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), Error);
}

}  // namespace
}  // namespace qshadow
