#include "oraclesim/rng.hpp"

#include <stdexcept>

namespace oraclesim {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream, std::uint64_t index) noexcept {
  return mix64(mix64(mix64(parent) ^ stream) ^ index);
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Rejection sampling on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::uniform_between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_between: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  return lo + static_cast<std::int64_t>(uniform_below(span));
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Nonce Rng::nonce() {
  Nonce n{};
  for (std::size_t i = 0; i < n.size(); i += 8) {
    std::uint64_t w = engine_();
    for (std::size_t j = 0; j < 8; ++j) n[i + j] = static_cast<std::uint8_t>(w >> (8 * j));
  }
  return n;
}

}  // namespace oraclesim
