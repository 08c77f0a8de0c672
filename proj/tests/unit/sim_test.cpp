#include <gtest/gtest.h>

#include <numeric>

#include "oraclesim/analysis/security.hpp"
#include "oraclesim/sim/engine.hpp"
#include "oraclesim/sim/experiments.hpp"

namespace oraclesim::sim {
namespace {

AgentGroup group(std::size_t count, const char* voter, double accuracy, Money balance = 100000) {
  AgentGroup g;
  g.count = count;
  g.profile.voter = agents::parse_voter_tag(voter);
  g.profile.accuracy = accuracy;
  g.profile.initial_balance = balance;
  g.profile.cohort = voter;
  return g;
}

AgentGroup certifiers(std::size_t count, double accuracy, std::uint32_t candidates, Money balance = 10000000) {
  AgentGroup g = group(count, "abstain", accuracy, balance);
  g.profile.certifier.kind = agents::CertifierKind::PoolAware;
  g.profile.certifier.candidates = candidates;
  g.profile.cohort = "certifiers";
  return g;
}

ScenarioConfig base_config() {
  ScenarioConfig c;
  c.params.s_max = 1;
  c.params.decision_stake = 20;
  c.params.list_size = 10;
  c.stream.bounty_min = c.stream.bounty_max = 10;
  c.rounds = 200;
  return c;
}

TEST(Simulation, RoundWithoutAgentsOnlyAdvancesCounter) {
  ScenarioConfig c = base_config();
  Simulation sim(c, 1);
  const Money money = sim.game().total_money();
  const auto open = sim.game().open_propositions();
  const RewardPools pools = sim.game().pools();
  sim.run_round();
  EXPECT_EQ(sim.round(), 1u);
  EXPECT_EQ(sim.game().total_money(), money);
  EXPECT_EQ(sim.game().open_propositions(), open);
  EXPECT_EQ(sim.game().pools(), pools);
  EXPECT_EQ(sim.stats().decided, 0u);
}

TEST(Simulation, PerfectVotersSettleTrueInOneRound) {
  ScenarioConfig c = base_config();
  c.params.list_size = 1;
  c.stream.p_true = 1.0;
  c.agents = {group(20, "honest", 1.0)};
  c.keep_results = true;
  Simulation sim(c, 3);
  sim.run_round();
  ASSERT_EQ(sim.stats().decided, 1u);
  EXPECT_EQ(sim.stats().results.front().voting, Outcome::True);
  EXPECT_EQ(sim.stats().results.front().totals.s_tot_true, 20);
}

TEST(Simulation, ReplenishmentKeepsListFull) {
  ScenarioConfig c = base_config();
  c.agents = {group(30, "honest", 0.9)};
  Simulation sim(c, 5);
  for (int r = 0; r < 50; ++r) {
    sim.run_round();
    ASSERT_EQ(sim.game().open_count(), c.params.list_size);
  }
  EXPECT_GT(sim.stats().decided, 0u);
}

TEST(Simulation, StaticListDrains) {
  ScenarioConfig c = base_config();
  c.replenish = false;
  c.rounds = 1000;
  c.agents = {group(30, "honest", 0.9)};
  const TrialStats t = run_trial(c, 0);
  EXPECT_EQ(t.decided, c.params.list_size);
  EXPECT_LT(t.rounds, c.rounds);
}

TEST(Simulation, PerfectHonestPopulationIsNeverWrong) {
  ScenarioConfig c = base_config();
  c.rounds = 500;
  c.agents = {group(40, "honest", 1.0)};
  const TrialStats t = run_trial(c, 0);
  EXPECT_GT(t.decided, 500u);
  EXPECT_EQ(t.incorrect_voting, 0u);
  EXPECT_EQ(t.honest_belief_violations, 0u);
}

TEST(Simulation, LazyVotersNeverChangePosition) {
  ScenarioConfig c = base_config();
  c.agents = {group(20, "honest", 0.8), group(10, "lazy-F", 0.8)};
  const TrialStats t = run_trial(c, 0);
  EXPECT_EQ(t.lazy_position_changes, 0u);
  EXPECT_EQ(t.honest_belief_violations, 0u);
}

TEST(Simulation, AdversaryStaysWithinBudget) {
  ScenarioConfig c = base_config();
  AgentGroup adv = group(1, "adversary", 1.0);
  adv.profile.voter.adversary.budget = 150;
  adv.profile.seats = 5;
  c.agents = {group(20, "honest", 0.8), adv};
  const TrialStats t = run_trial(c, 0);
  EXPECT_EQ(t.adversary_budget, 150);
  EXPECT_EQ(t.adversary_spent, 150);
  // Slots offered after the budget runs out are refused, not staked.
  EXPECT_GT(t.errors[static_cast<std::size_t>(ErrorCode::BudgetExhausted)], 0u);
}

TEST(Simulation, ConservationIsCheckedEveryRound) {
  ScenarioConfig c = base_config();
  c.params.s_max = 3;
  c.params.decision_stake = 30;
  c.initial_pools = {500, 500};
  c.stream.bounty_min = 1;
  c.stream.bounty_max = 40;
  c.agents = {group(15, "honest", 0.8), group(5, "random", 0.8), group(3, "inverted", 0.8), certifiers(5, 0.85, 4)};
  const TrialStats t = run_trial(c, 0);
  EXPECT_EQ(t.conservation_checks, t.rounds);
  EXPECT_GT(t.decided, 50u);
}

TEST(Simulation, TrialsDoNotDependOnThreadCount) {
  ScenarioConfig c = base_config();
  c.trials = 6;
  c.initial_pools = {200, 200};
  c.agents = {group(20, "honest", 0.8), group(4, "random", 0.7), certifiers(4, 0.9, 3)};
  c.threads = 1;
  const ExperimentStats one = run_experiment(c);
  c.threads = 3;
  const ExperimentStats three = run_experiment(c);
  ASSERT_EQ(one.trials.size(), three.trials.size());
  for (std::size_t i = 0; i < one.trials.size(); ++i) EXPECT_EQ(canonical(one.trials[i]), canonical(three.trials[i]));
  EXPECT_NE(canonical(one.trials[0]), canonical(one.trials[1]));
}

TEST(Simulation, AddingTrialsKeepsExistingOnes) {
  ScenarioConfig c = base_config();
  c.agents = {group(20, "honest", 0.8)};
  c.trials = 2;
  const ExperimentStats two = run_experiment(c);
  c.trials = 4;
  const ExperimentStats four = run_experiment(c);
  EXPECT_EQ(canonical(two.trials[1]), canonical(four.trials[1]));
}

// Honest voters profit when the bounty exceeds the (1 - q) D_v / q cap and lose below it.
TEST(Simulation, BountyCapStraddle) {
  const double q = 0.7;
  ScenarioConfig c;
  c.params.s_max = 100;
  c.params.decision_stake = 2000;
  c.params.sigma_min = 100;
  c.params.list_size = 10;
  c.stream.p_true = 0.5;
  c.initial_pools = {100000000, 100000000};
  c.rounds = 400;
  c.agents = {group(40, "honest", q, 10000000), certifiers(10, 1.0, 10)};
  const Money cap = analysis::max_bounty(q, c.params.decision_stake);
  ASSERT_EQ(cap, 857);

  c.stream.bounty_min = c.stream.bounty_max = 2000;
  const double above = run_experiment(c).cohort_payoffs().at("honest").mean;
  c.stream.bounty_min = c.stream.bounty_max = 200;
  const double below = run_experiment(c).cohort_payoffs().at("honest").mean;
  EXPECT_GT(above, 0.0);
  EXPECT_LT(below, 0.0);
}

TEST(Simulation, TriStateUndecidableGoesUnknown) {
  ScenarioConfig c = base_config();
  c.params.tri_state = true;
  c.stream.undecidable_fraction = 1.0;
  c.initial_pools = {1000, 1000};
  c.agents = {group(30, "honest", 0.95), certifiers(5, 0.95, 5)};
  const TrialStats t = run_trial(c, 0);
  ASSERT_GT(t.decided, 100u);
  EXPECT_GE(t.voting_outcomes[outcome_index(Outcome::Unknown)], t.decided * 99 / 100);
  EXPECT_EQ(t.certifications_against_unknown_belief, 0u);
}

TEST(Stats, WilsonInterval) {
  const Interval half = wilson_interval(5, 10, 1.96);
  EXPECT_NEAR(half.lo, 0.2366, 1e-4);
  EXPECT_NEAR(half.hi, 0.7634, 1e-4);
  const Interval zero = wilson_interval(0, 100, 1.96);
  EXPECT_DOUBLE_EQ(zero.lo, 0.0);
  EXPECT_NEAR(zero.hi, 0.0370, 1e-4);
  EXPECT_TRUE(wilson_interval(0, 0).contains(0.5));
}

TEST(Stats, MeanStderr) {
  const std::vector<double> xs{1, 2, 3, 4};
  const MeanStat m = mean_stderr(xs);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.stderr_mean, std::sqrt(5.0 / 3.0 / 4.0), 1e-12);
  EXPECT_EQ(m.n, 4u);
  EXPECT_DOUBLE_EQ(relative_difference(90, 100), 0.1);
  EXPECT_DOUBLE_EQ(relative_difference(0, 0), 0.0);
}

TEST(Experiments, ManipulationScenarioShape) {
  VerifyOptions o;
  o.decided_per_trial = 100;
  const analysis::ManipulationParams p{20, 100, 0.8, 0.25};
  const ScenarioConfig c = manipulation_scenario(p, o);
  EXPECT_EQ(c.vote_slots_per_round, 1u);
  EXPECT_EQ(c.params.decision_stake, 20 * c.params.s_max);
  std::uint64_t seats = 0, adversary = 0;
  for (const auto& g : c.agents) {
    seats += g.count * g.profile.seats;
    if (g.profile.voter.kind == agents::VoterKind::Adversary) adversary += g.count * g.profile.seats;
  }
  EXPECT_NEAR(static_cast<double>(adversary) / static_cast<double>(seats), 0.25, 1e-4);
}

TEST(Experiments, VerifySmallRunAgreesWithClosedForm) {
  VerifyOptions o;
  o.decided_per_trial = 4000;
  const VerifyRow row = verify_manipulation({20, 100, 0.8, 0.25}, o);
  EXPECT_EQ(row.decided, 4000u);
  EXPECT_NEAR(row.realized_fraction, 0.25, 1e-4);
  EXPECT_TRUE(row.interval.contains(row.closed_form))
      << row.empirical << " [" << row.interval.lo << ", " << row.interval.hi << "] vs " << row.closed_form;
}

}  // namespace
}  // namespace oraclesim::sim
