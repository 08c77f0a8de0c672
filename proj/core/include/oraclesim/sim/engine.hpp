#pragma once

#include <cstdint>
#include <vector>

#include "oraclesim/agents/beliefs.hpp"
#include "oraclesim/agents/strategies.hpp"
#include "oraclesim/protocol/game.hpp"
#include "oraclesim/sim/scenario.hpp"
#include "oraclesim/sim/stats.hpp"

namespace oraclesim::sim {

/// Seed of trial `index` under `master_seed`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) noexcept;

/// One trial: a game instance, its agents and their cached beliefs.
///
/// Each round runs four synchronous phases:
///   1. certifiers choose, commit, then reveal;
///   2. every vote slot requests an assignment and commits, then all reveal;
///   3. propositions that reached D_v settle;
///   4. the list is topped up from the proposition stream.
/// Round r draws from a stream derived from (trial seed, r); proposition
/// attributes and beliefs come from streams keyed by their ids. A trial is
/// therefore reproducible from (config, seed) alone.
class Simulation {
 public:
  Simulation(const ScenarioConfig& config, std::uint64_t seed, std::size_t trial_index = 0);

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void run_round();
  bool finished() const;
  /// Runs the remaining rounds and returns the finalized statistics.
  TrialStats run();

  const Game& game() const noexcept { return game_; }
  const TrialStats& stats() const noexcept { return stats_; }
  std::uint64_t round() const noexcept { return round_; }
  const std::vector<agents::PlayerProfile>& profiles() const noexcept { return profiles_; }
  agents::BeliefBook& beliefs() noexcept { return beliefs_; }

 private:
  struct PendingReveal {
    std::size_t agent;
    std::uint64_t ticket;
    PropositionId proposition;
    Position value;
    Nonce nonce;
  };

  void certify_phase(Rng& rng);
  void vote_phase(Rng& rng);
  void settle_phase();
  void replenish();
  void submit_next();
  void sample_pools();
  void record_error(ErrorCode code) { ++stats_.errors[static_cast<std::size_t>(code)]; }
  Position choose_vote(std::size_t agent, PropositionId proposition, Rng& rng);
  Money vote_stake(const agents::PlayerProfile& p) const;
  Money cert_stake(const agents::PlayerProfile& p) const;

  const ScenarioConfig& config_;
  std::uint64_t seed_;
  Game game_;
  agents::BeliefBook beliefs_;
  std::vector<agents::PlayerProfile> profiles_;
  std::vector<agents::AdversaryState> adversaries_;  // parallel to profiles_
  std::vector<std::size_t> certifiers_;
  std::vector<std::size_t> voters_;
  std::vector<std::uint64_t> voter_seat_cumulative_;
  std::vector<std::int8_t> lazy_last_;  // last lazy position per agent, -1 if none
  std::uint64_t submitted_ = 0;
  std::uint64_t round_ = 0;
  TrialStats stats_;
};

TrialStats run_trial(const ScenarioConfig& config, std::size_t trial_index);
TrialStats run_trial_with_seed(const ScenarioConfig& config, std::uint64_t seed, std::size_t trial_index = 0);

}  // namespace oraclesim::sim
