#pragma once

#include <cstddef>
#include <map>

#include "oraclesim/protocol/types.hpp"
#include "oraclesim/rng.hpp"

namespace oraclesim::agents {

/// Draws a belief: the truth with probability `accuracy`, its negation
/// otherwise. For an undecidable proposition the belief is Unknown with
/// probability `accuracy` and a fair coin between True and False otherwise.
template <typename Gen>
Outcome sample_belief(double accuracy, TruthValue truth, Gen& gen) {
  if (truth == TruthValue::Undecidable) {
    if (gen.bernoulli(accuracy)) return Outcome::Unknown;
    return gen.bernoulli(0.5) ? Outcome::True : Outcome::False;
  }
  const Outcome t = as_outcome(truth);
  return gen.bernoulli(accuracy) ? t : negate(t);
}

/// Beliefs are properties of the player, not of the draw: each
/// (player, proposition) pair is sampled once from its own derived stream and
/// then cached, so the value never depends on query order.
class BeliefBook {
 public:
  explicit BeliefBook(std::uint64_t seed) : seed_(seed) {}

  Outcome belief(PlayerId player, double accuracy, PropositionId proposition, TruthValue truth);

  /// Drops the cache for a decided proposition.
  void forget(PropositionId proposition) { cache_.erase(proposition); }
  std::size_t cached() const;

 private:
  std::uint64_t seed_;
  std::map<PropositionId, std::map<PlayerId, Outcome>> cache_;
};

}  // namespace oraclesim::agents
