// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qshadow/parallel.hpp"
#include "qshadow/rng.hpp"

namespace qshadow {
namespace {

TEST(Stream, ReproducibleFromKey) {
  Stream a(123);
  Stream b(123);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  Stream c(124);
  EXPECT_NE(Stream(123).next_u64(), c.next_u64());
}

TEST(Stream, ChildDoesNotAdvanceParent) {
  Stream a(5);
  const auto first = Stream(5).next_u64();
  const Stream child = a.child(0);
  EXPECT_EQ(a.counter(), 0u);
  EXPECT_EQ(a.next_u64(), first);
  EXPECT_NE(child.key(), a.key());
  std::set<std::uint64_t> keys;
  for (std::uint64_t i = 0; i < 1000; ++i) keys.insert(Stream(5).child(i).key());
  EXPECT_EQ(keys.size(), 1000u);
}

TEST(Stream, UniformMoments) {
  Stream s(9);
  const int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sq / n, 1.0 / 3.0, 0.005);
}

TEST(Stream, NormalMoments) {
  Stream s(10);
  const int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = s.normal();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  double c = 0.0;
  for (int i = 0; i < n; ++i) c += std::norm(s.complex_normal());
  EXPECT_NEAR(c / n, 1.0, 5.0 / std::sqrt(n));
}

TEST(Stream, BelowIsUniform) {
  Stream s(11);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[s.below(7)];
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5.0 * std::sqrt(n / 7.0));
}

TEST(ParallelFor, CoversEveryIndexOnce) {
  for (unsigned workers : {1u, 2u, 5u}) {
    std::vector<int> hits(1001, 0);
    parallel_for(hits.size(), workers, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::size_t b, std::size_t e) {
                              for (std::size_t i = b; i < e; ++i) {
                                if (i == 50) throw std::runtime_error("boom");
                              }
                            }),
               std::runtime_error);
}

}  // namespace
}  // namespace qshadow
