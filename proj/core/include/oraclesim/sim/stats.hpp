#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oraclesim/protocol/errors.hpp"
#include "oraclesim/protocol/game.hpp"

namespace oraclesim::sim {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Wilson score interval; z = 1.96 gives the 95% interval.
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.959963984540054);

struct MeanStat {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t n = 0;
};

/// Sample mean and standard error of the mean (n - 1 denominator).
MeanStat mean_stderr(std::span<const double> xs);

struct PoolSample {
  std::uint64_t round = 0;
  Money r_true = 0;
  Money r_false = 0;
  Money drained_true = 0;   // cumulative R_T / tau drains
  Money drained_false = 0;
  std::uint64_t decided = 0;
};

struct CohortPayoff {
  Money total = 0;
  std::size_t members = 0;
  double mean() const noexcept { return members == 0 ? 0.0 : static_cast<double>(total) / members; }
};

inline std::size_t outcome_index(Outcome o) noexcept { return static_cast<std::size_t>(o); }

struct TrialStats {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;

  std::uint64_t decided = 0;
  std::uint64_t incorrect_voting = 0;   // voting outcome is the negation of a definite truth
  std::uint64_t correct_voting = 0;
  std::array<std::uint64_t, 3> voting_outcomes{};         // indexed by Outcome
  std::array<std::uint64_t, 3> certification_outcomes{};
  std::array<std::uint64_t, 3> game_outcomes{};
  std::vector<std::uint8_t> certification_sequence;       // certification outcome per decided proposition

  std::uint64_t certifications_true = 0;  // accepted certification reveals by direction
  std::uint64_t certifications_false = 0;
  std::uint64_t certifications_against_unknown_belief = 0;
  std::uint64_t honest_belief_violations = 0;
  std::uint64_t lazy_position_changes = 0;
  Money adversary_spent = 0;
  Money adversary_budget = 0;

  std::map<PlayerId, Money> payoffs;
  std::map<std::string, CohortPayoff> cohorts;
  Money voter_delta_sum = 0;       // over all settlements
  Money nonzero_voter_deltas = 0;  // count of voter entries with r_v != 0

  Money drained_true = 0;
  Money drained_false = 0;
  std::vector<PoolSample> pool_trajectory;
  RewardPools final_pools;

  std::array<std::uint64_t, kErrorCodeCount> errors{};
  std::uint64_t conservation_checks = 0;

  std::vector<GameResult> results;  // kept when the scenario asks for it
  std::vector<std::string> events;  // NDJSON lines when recording events

  double incorrect_rate() const noexcept {
    return decided == 0 ? 0.0 : static_cast<double>(incorrect_voting) / static_cast<double>(decided);
  }
};

nlohmann::json to_json(const TrialStats& s);
/// Compact deterministic serialization used for byte-identity checks.
std::string canonical(const TrialStats& s);

}  // namespace oraclesim::sim
