#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "oraclesim/analysis/table5.hpp"
#include "oraclesim/sim/engine.hpp"
#include "oraclesim/sim/scenario.hpp"
#include "oraclesim/sim/stats.hpp"

namespace oraclesim::sim {

struct ExperimentStats {
  std::vector<TrialStats> trials;  // in trial-index order regardless of thread count

  std::uint64_t decided() const;
  std::uint64_t incorrect() const;
  /// Pooled incorrect-outcome rate over all trials, with its Wilson interval.
  double incorrect_rate() const;
  Interval incorrect_interval(double z = 1.959963984540054) const;
  /// Mean over trials of each cohort's per-member payoff.
  std::map<std::string, MeanStat> cohort_payoffs() const;
  MeanStat player_payoff(PlayerId player) const;
};

/// Runs config.trials trials on config.threads threads. Results do not depend
/// on the thread count.
ExperimentStats run_experiment(const ScenarioConfig& config);

// ---------------------------------------------------------------------------

struct DeviationRow {
  std::string strategy;
  MeanStat payoff;
  bool violation = false;  // beats honest by more than two combined standard errors
};

struct EquilibriumReport {
  PlayerId deviator{};
  double incorrect_vote_prob = 0.0;
  bool assumption_violated = false;  // incorrect-vote probability >= 1/2
  std::vector<DeviationRow> rows;    // the first row is "honest"
  bool any_violation() const;
};

/// Default deviation menu: honest, lazy-T, lazy-F, random, inverted, abstain.
std::vector<std::string> default_deviation_menu();

/// Compares the designated player's payoff under each voter strategy with
/// all other agents fixed. The deviator is the first member of cohort
/// "deviator" if present, otherwise player 0. Every strategy runs on the same
/// trial seeds.
EquilibriumReport equilibrium_check(const ScenarioConfig& config, std::span<const std::string> menu);

// ---------------------------------------------------------------------------

struct PoolBiasReport {
  std::uint64_t burn_in_rounds = 0;       // first third of the rounds each trial ran (mean over trials)
  double burn_in_drain_rate_true = 0.0;   // drained / time-integrated pool balance over the burn-in
  double burn_in_drain_rate_false = 0.0;
  double burn_in_drained_true = 0.0;      // absolute units drained per round, averaged over trials
  double burn_in_drained_false = 0.0;
  std::uint64_t late_certified_true = 0;  // certification outcomes over the final third
  std::uint64_t late_certified_false = 0; // of decided propositions, summed over trials
  double late_relative_difference = 0.0; // |a - b| / max(a, b)
  std::map<std::string, MeanStat> cohort_payoffs;
  RewardPools mean_final_pools;
  std::vector<PoolSample> trajectory;     // from trial 0
};

/// |a - b| / max(a, b); 0 when both are zero.
double relative_difference(double a, double b) noexcept;

PoolBiasReport pool_bias_experiment(const ScenarioConfig& config);

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::size_t decided_per_trial = 2000;
  std::size_t trials = 1;
  std::uint64_t seat_weight = 100000;  // total vote seats; adversary gets fraction * seat_weight
  std::uint64_t master_seed = 1;
  unsigned threads = 1;

  friend bool operator==(const VerifyOptions&, const VerifyOptions&) = default;
};

struct VerifyRow {
  analysis::ManipulationParams params;
  double realized_fraction = 0.0;
  double closed_form = 0.0;  // P(specific) at the realized fraction
  std::uint64_t decided = 0;
  std::uint64_t incorrect = 0;
  double empirical = 0.0;
  Interval interval;
  bool within = false;
};

/// One vote slot per round drawn by seat weight, so each vote is independently
/// adversarial with the adversary's seat share and otherwise honest.
ScenarioConfig manipulation_scenario(const analysis::ManipulationParams& params, const VerifyOptions& options);

VerifyRow verify_manipulation(const analysis::ManipulationParams& params, const VerifyOptions& options);

}  // namespace oraclesim::sim
