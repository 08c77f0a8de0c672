#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oraclesim/agents/profile.hpp"
#include "oraclesim/protocol/types.hpp"

namespace oraclesim::sim {

/// `count` players sharing one profile template. Player ids are assigned
/// sequentially across groups in declaration order; the template's id is ignored.
struct AgentGroup {
  std::size_t count = 1;
  agents::PlayerProfile profile;

  friend bool operator==(const AgentGroup&, const AgentGroup&) = default;
};

/// How replacement propositions are generated.
struct PropositionStream {
  double p_true = 0.5;               // P(t = True) among decidable propositions
  Money bounty_min = 10;
  Money bounty_max = 10;             // bounty is uniform on [min, max]
  double undecidable_fraction = 0.0; // requires tri-state mode when > 0

  friend bool operator==(const PropositionStream&, const PropositionStream&) = default;
};

struct ScenarioConfig {
  SystemParams params;
  std::vector<AgentGroup> agents;
  PropositionStream stream;
  RewardPools initial_pools;
  std::size_t rounds = 100;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;

  bool replenish = true;                 // false = static list, trial ends when it empties
  std::size_t stop_after_decided = 0;    // 0 = run all rounds
  std::size_t vote_slots_per_round = 0;  // 0 = every participating voter votes `seats` times;
                                         // k > 0 = k slots drawn by seat weight
  std::size_t trajectory_stride = 1;     // 0 disables pool trajectory sampling
  bool keep_results = false;
  bool record_events = false;
  unsigned threads = 1;

  /// Throws std::invalid_argument on the first inconsistent field.
  void validate() const;
  std::vector<agents::PlayerProfile> expand_agents() const;
  std::size_t player_count() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

}  // namespace oraclesim::sim
