#include "oraclesim/agents/beliefs.hpp"

namespace oraclesim::agents {

Outcome BeliefBook::belief(PlayerId player, double accuracy, PropositionId proposition, TruthValue truth) {
  auto& row = cache_[proposition];
  if (auto it = row.find(player); it != row.end()) return it->second;
  CounterRng gen(derive_seed(seed_, to_underlying(player), to_underlying(proposition)));
  const Outcome b = sample_belief(accuracy, truth, gen);
  row.emplace(player, b);
  return b;
}

std::size_t BeliefBook::cached() const {
  std::size_t n = 0;
  for (const auto& [prop, row] : cache_) n += row.size();
  return n;
}

}  // namespace oraclesim::agents
