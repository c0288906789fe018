// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <limits>

namespace qshadow {

/// Counter-based random stream.
///
/// The n-th output is a pure function of (key, n), so a stream can be
/// re-created from its key and child streams can be derived for every shot
/// without any shared state. A single Stream object is not thread-safe;
/// give each worker (or each shot) its own child.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key = 0) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  bool bit() noexcept { return (next_u64() >> 63) != 0; }

  /// Standard normal via Box-Muller; both variates of each pair are used.
  double normal() noexcept;

  /// Standard complex Gaussian, E|g|^2 = 1.
  std::complex<double> complex_normal() noexcept;

  /// Independent stream indexed by `index`; does not advance this stream.
  Stream child(std::uint64_t index) const noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finaliser; exposed for hashing seeds into keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace qshadow
