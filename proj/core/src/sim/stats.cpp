#include "oraclesim/sim/stats.hpp"

#include <cmath>

namespace oraclesim::sim {

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

MeanStat mean_stderr(std::span<const double> xs) {
  MeanStat m;
  m.n = xs.size();
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  m.stderr_mean = std::sqrt(var / static_cast<double>(xs.size()));
  return m;
}

nlohmann::json to_json(const TrialStats& s) {
  using nlohmann::json;
  json j;
  j["trial"] = s.trial;
  j["seed"] = s.seed;
  j["rounds"] = s.rounds;
  j["decided"] = s.decided;
  j["incorrect_voting"] = s.incorrect_voting;
  j["correct_voting"] = s.correct_voting;
  j["voting_outcomes"] = s.voting_outcomes;
  j["certification_outcomes"] = s.certification_outcomes;
  j["game_outcomes"] = s.game_outcomes;
  j["certification_sequence"] = s.certification_sequence;
  j["certifications_true"] = s.certifications_true;
  j["certifications_false"] = s.certifications_false;
  j["certifications_against_unknown_belief"] = s.certifications_against_unknown_belief;
  j["honest_belief_violations"] = s.honest_belief_violations;
  j["lazy_position_changes"] = s.lazy_position_changes;
  j["adversary_spent"] = s.adversary_spent;
  j["adversary_budget"] = s.adversary_budget;

  json payoffs = json::array();
  for (const auto& [player, amount] : s.payoffs) payoffs.push_back({to_underlying(player), amount});
  j["payoffs"] = std::move(payoffs);

  json cohorts = json::object();
  for (const auto& [name, c] : s.cohorts) cohorts[name] = {{"total", c.total}, {"members", c.members}};
  j["cohorts"] = std::move(cohorts);

  j["voter_delta_sum"] = s.voter_delta_sum;
  j["nonzero_voter_deltas"] = s.nonzero_voter_deltas;
  j["drained_true"] = s.drained_true;
  j["drained_false"] = s.drained_false;

  json traj = json::array();
  for (const auto& p : s.pool_trajectory) {
    traj.push_back({p.round, p.r_true, p.r_false, p.drained_true, p.drained_false, p.decided});
  }
  j["pool_trajectory"] = std::move(traj);
  j["final_pools"] = {s.final_pools.r_true, s.final_pools.r_false};

  json errors = json::object();
  for (std::size_t i = 0; i < s.errors.size(); ++i) {
    if (s.errors[i] != 0) errors[std::string(to_string(static_cast<ErrorCode>(i)))] = s.errors[i];
  }
  j["errors"] = std::move(errors);
  j["conservation_checks"] = s.conservation_checks;
  j["events"] = s.events;
  return j;
}

std::string canonical(const TrialStats& s) { return to_json(s).dump(); }

}  // namespace oraclesim::sim
