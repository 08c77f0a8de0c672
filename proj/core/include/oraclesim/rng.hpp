#pragma once

#include <cstdint>
#include <random>

#include "oraclesim/protocol/digest.hpp"

namespace oraclesim {

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based stream derivation: the seed for (stream, index) depends only
/// on its inputs, so adding trials or rounds never shifts existing streams.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream, std::uint64_t index) noexcept;

/// Counter-based SplitMix64 stream. Cheap to construct, used where a fresh
/// stream is derived per (player, proposition) pair.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept { return mix64(state_++); }
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) noexcept { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

/// Deterministic random stream injected into every randomized operation.
/// Distributions are implemented here rather than with <random>'s
/// distribution classes, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_between(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  Nonce nonce();

 private:
  std::mt19937_64 engine_;
};

}  // namespace oraclesim
