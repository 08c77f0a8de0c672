#include "oraclesim/sim/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "oraclesim/protocol/digest.hpp"
#include "oraclesim/protocol/errors.hpp"
#include "oraclesim/protocol/event_log.hpp"

namespace oraclesim::sim {

namespace {

constexpr std::uint64_t kTrialStream = 0x7472'6961'6cULL;
constexpr std::uint64_t kRoundStream = 0x726f'756e'64ULL;
constexpr std::uint64_t kPropositionStream = 0x7072'6f70ULL;
constexpr std::uint64_t kBeliefStream = 0x6265'6c69'6566ULL;

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_below(i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  try {
    params.validate();
  } catch (const ProtocolError& e) {
    fail(std::string("params: ") + e.what());
  }
  if (agents.empty()) fail("agents: at least one agent group is required");
  if (rounds == 0) fail("rounds must be positive");
  if (trials == 0) fail("trials must be positive");
  if (threads == 0) fail("threads must be positive");
  if (!(stream.p_true >= 0.0 && stream.p_true <= 1.0)) fail("stream.p_true must lie in [0, 1]");
  if (!(stream.undecidable_fraction >= 0.0 && stream.undecidable_fraction <= 1.0)) {
    fail("stream.undecidable_fraction must lie in [0, 1]");
  }
  if (stream.undecidable_fraction > 0.0 && !params.tri_state) {
    fail("stream.undecidable_fraction requires params.tri_state");
  }
  if (stream.bounty_min <= 0 || stream.bounty_max < stream.bounty_min) {
    fail("stream bounties must satisfy 0 < bounty_min <= bounty_max");
  }
  if (initial_pools.r_true < 0 || initial_pools.r_false < 0) fail("initial_pools must be non-negative");
  for (std::size_t g = 0; g < agents.size(); ++g) {
    if (agents[g].count == 0) fail("agents[" + std::to_string(g) + "].count must be positive");
    try {
      agents[g].profile.validate(params);
    } catch (const std::invalid_argument& e) {
      fail("agents[" + std::to_string(g) + "]: " + e.what());
    }
  }
}

std::size_t ScenarioConfig::player_count() const {
  std::size_t n = 0;
  for (const auto& g : agents) n += g.count;
  return n;
}

std::vector<agents::PlayerProfile> ScenarioConfig::expand_agents() const {
  std::vector<agents::PlayerProfile> out;
  out.reserve(player_count());
  std::uint32_t next = 0;
  for (const auto& g : agents) {
    for (std::size_t i = 0; i < g.count; ++i) {
      agents::PlayerProfile p = g.profile;
      p.id = PlayerId{next++};
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) noexcept {
  return derive_seed(master_seed, kTrialStream, index);
}

Simulation::Simulation(const ScenarioConfig& config, std::uint64_t seed, std::size_t trial_index)
    : config_(config),
      seed_(seed),
      game_(config.params),
      beliefs_(derive_seed(seed, kBeliefStream, 0)),
      profiles_(config.expand_agents()) {
  stats_.trial = trial_index;
  stats_.seed = seed;
  if (config_.record_events) {
    game_.set_observer([this](const Event& e) { stats_.events.push_back(event_to_line(e)); });
  }

  adversaries_.resize(profiles_.size());
  lazy_last_.assign(profiles_.size(), -1);
  std::uint64_t seats = 0;
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const auto& p = profiles_[i];
    if (p.initial_balance > 0) game_.deposit(p.id, p.initial_balance);
    if (p.voter.kind == agents::VoterKind::Adversary) {
      adversaries_[i] = agents::AdversaryState(p.voter.adversary);
      stats_.adversary_budget += p.voter.adversary.budget;
    }
    if (p.certifier.kind != agents::CertifierKind::None) certifiers_.push_back(i);
    if (p.voter.kind != agents::VoterKind::Abstain && p.seats > 0) {
      voters_.push_back(i);
      seats += p.seats;
      voter_seat_cumulative_.push_back(seats);
    }
  }
  if (config_.initial_pools.total() > 0) game_.fund_pools(config_.initial_pools.r_true, config_.initial_pools.r_false);
  replenish();
  sample_pools();
}

Money Simulation::vote_stake(const agents::PlayerProfile& p) const {
  return p.vote_stake > 0 ? p.vote_stake : config_.params.s_max;
}

Money Simulation::cert_stake(const agents::PlayerProfile& p) const {
  return p.cert_stake > 0 ? p.cert_stake : config_.params.sigma_min;
}

void Simulation::submit_next() {
  Rng rng(derive_seed(seed_, kPropositionStream, submitted_++));
  TruthValue truth;
  if (config_.stream.undecidable_fraction > 0.0 && rng.bernoulli(config_.stream.undecidable_fraction)) {
    truth = TruthValue::Undecidable;
  } else {
    truth = rng.bernoulli(config_.stream.p_true) ? TruthValue::True : TruthValue::False;
  }
  const Money bounty = rng.uniform_between(config_.stream.bounty_min, config_.stream.bounty_max);
  game_.submit_proposition(truth, bounty);
}

void Simulation::replenish() {
  while (game_.open_count() < config_.params.list_size) submit_next();
}

bool Simulation::finished() const {
  if (round_ >= config_.rounds) return true;
  if (config_.stop_after_decided > 0 && stats_.decided >= config_.stop_after_decided) return true;
  return game_.open_count() == 0;
}

void Simulation::run_round() {
  Rng rng(derive_seed(seed_, kRoundStream, round_));
  certify_phase(rng);
  vote_phase(rng);
  settle_phase();
  if (config_.replenish) replenish();
  ++round_;
  stats_.rounds = round_;
  if (game_.total_money() != game_.injected()) throw std::logic_error("money not conserved after round");
  ++stats_.conservation_checks;
  if (config_.trajectory_stride > 0 && round_ % config_.trajectory_stride == 0) sample_pools();
}

void Simulation::sample_pools() {
  if (config_.trajectory_stride == 0) return;
  stats_.pool_trajectory.push_back(PoolSample{round_, game_.pools().r_true, game_.pools().r_false,
                                              stats_.drained_true, stats_.drained_false, stats_.decided});
}

void Simulation::certify_phase(Rng& rng) {
  if (certifiers_.empty() || game_.open_count() == 0) return;
  std::vector<std::size_t> order = certifiers_;
  shuffle(order, rng);

  std::vector<PendingReveal> pending;
  std::vector<Outcome> pending_beliefs;
  for (std::size_t agent : order) {
    const auto& p = profiles_[agent];
    if (p.participation < 1.0 && !rng.bernoulli(p.participation)) continue;

    std::vector<PropositionId> open = game_.open_propositions();
    const std::size_t k = std::min<std::size_t>(p.certifier.candidates, open.size());
    std::vector<agents::CertCandidate> candidates;
    candidates.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.uniform_below(open.size() - i);
      std::swap(open[i], open[j]);
      const PropositionId id = open[i];
      const Totals t = game_.totals(id);
      const Outcome b = beliefs_.belief(p.id, p.accuracy, id, game_.proposition(id).truth);
      candidates.push_back({id, b, t.sigma_tot_true, t.sigma_tot_false});
    }

    const Money stake = cert_stake(p);
    std::optional<agents::CertificationChoice> choice;
    if (p.certifier.kind == agents::CertifierKind::PoolAware) {
      choice = agents::pool_aware_certify(p.accuracy, candidates, game_.pools(), config_.params, stake);
    } else {
      choice = agents::naive_certify(candidates, stake, rng);
    }
    if (!choice) continue;
    if (game_.balance(p.id) < stake) {
      record_error(ErrorCode::InsufficientBalance);
      continue;
    }
    const Nonce nonce = rng.nonce();
    try {
      const CertificationId cid =
          game_.commit_certification(p.id, choice->proposition, stake, commitment_digest(choice->position, nonce));
      pending.push_back({agent, to_underlying(cid), choice->proposition, choice->position, nonce});
      pending_beliefs.push_back(beliefs_.belief(p.id, p.accuracy, choice->proposition,
                                                game_.proposition(choice->proposition).truth));
    } catch (const ProtocolError& e) {
      record_error(e.code());
    }
  }

  for (std::size_t i = 0; i < pending.size(); ++i) {
    const auto& r = pending[i];
    try {
      game_.reveal_certification(CertificationId{r.ticket}, r.value, r.nonce);
      if (r.value == Position::True) ++stats_.certifications_true;
      if (r.value == Position::False) ++stats_.certifications_false;
      if (pending_beliefs[i] == Outcome::Unknown) ++stats_.certifications_against_unknown_belief;
    } catch (const ProtocolError& e) {
      record_error(e.code());
    }
  }
}

Position Simulation::choose_vote(std::size_t agent, PropositionId proposition, Rng& rng) {
  const auto& p = profiles_[agent];
  const TruthValue truth = game_.proposition(proposition).truth;
  switch (p.voter.kind) {
    case agents::VoterKind::Honest: {
      const Outcome b = beliefs_.belief(p.id, p.accuracy, proposition, truth);
      const Position v = agents::honest_vote(b);
      if (v != b) ++stats_.honest_belief_violations;
      return v;
    }
    case agents::VoterKind::Lazy: {
      const Position v = agents::lazy_vote(p.voter.lazy_position);
      const auto code = static_cast<std::int8_t>(v);
      if (lazy_last_[agent] >= 0 && lazy_last_[agent] != code) ++stats_.lazy_position_changes;
      lazy_last_[agent] = code;
      return v;
    }
    case agents::VoterKind::Random:
      return agents::random_vote(rng);
    case agents::VoterKind::Inverted:
      return agents::inverted_vote(beliefs_.belief(p.id, p.accuracy, proposition, truth));
    case agents::VoterKind::Adversary:
      return agents::adversary_vote(p.voter.adversary, proposition, truth);
    case agents::VoterKind::Abstain:
      break;
  }
  throw std::logic_error("abstaining agent was given a vote slot");
}

void Simulation::vote_phase(Rng& rng) {
  if (voters_.empty()) return;
  std::vector<std::size_t> slots;
  if (config_.vote_slots_per_round == 0) {
    for (std::size_t agent : voters_) {
      const auto& p = profiles_[agent];
      if (p.participation < 1.0 && !rng.bernoulli(p.participation)) continue;
      slots.insert(slots.end(), p.seats, agent);
    }
    shuffle(slots, rng);
  } else {
    const std::uint64_t total = voter_seat_cumulative_.back();
    slots.reserve(config_.vote_slots_per_round);
    for (std::size_t i = 0; i < config_.vote_slots_per_round; ++i) {
      const std::uint64_t u = rng.uniform_below(total);
      const auto it = std::upper_bound(voter_seat_cumulative_.begin(), voter_seat_cumulative_.end(), u);
      slots.push_back(voters_[static_cast<std::size_t>(it - voter_seat_cumulative_.begin())]);
    }
  }

  std::vector<PendingReveal> pending;
  pending.reserve(slots.size());
  for (std::size_t agent : slots) {
    if (game_.open_count() == 0) break;
    const auto& p = profiles_[agent];
    const Money stake = vote_stake(p);
    const bool adversary = p.voter.kind == agents::VoterKind::Adversary;
    if (adversary && !adversaries_[agent].can_stake(stake)) {
      record_error(ErrorCode::BudgetExhausted);
      continue;
    }
    try {
      const VoteAssignment a = game_.request_vote(p.id, stake, rng);
      if (adversary) {
        adversaries_[agent].spend(stake);
        stats_.adversary_spent += stake;
      }
      const Position v = choose_vote(agent, a.proposition, rng);
      const Nonce nonce = rng.nonce();
      game_.commit_vote(a.assignment, commitment_digest(v, nonce));
      pending.push_back({agent, to_underlying(a.assignment), a.proposition, v, nonce});
    } catch (const ProtocolError& e) {
      record_error(e.code());
    }
  }

  for (const auto& r : pending) {
    try {
      game_.reveal_vote(AssignmentId{r.ticket}, r.value, r.nonce);
    } catch (const ProtocolError& e) {
      record_error(e.code());
    }
  }
}

void Simulation::settle_phase() {
  for (PropositionId id : game_.decidable()) {
    GameResult r = game_.settle(id);
    beliefs_.forget(id);
    ++stats_.decided;
    ++stats_.voting_outcomes[outcome_index(r.voting)];
    ++stats_.certification_outcomes[outcome_index(r.certification)];
    ++stats_.game_outcomes[outcome_index(r.game)];
    stats_.certification_sequence.push_back(static_cast<std::uint8_t>(r.certification));
    if (r.truth != TruthValue::Undecidable) {
      const Outcome t = as_outcome(r.truth);
      if (r.voting == t) ++stats_.correct_voting;
      if (r.voting == negate(t)) ++stats_.incorrect_voting;
    }
    if (r.pool_drain > 0) {
      if (r.voting == Outcome::True) stats_.drained_true += r.pool_drain;
      if (r.voting == Outcome::False) stats_.drained_false += r.pool_drain;
    }
    for (const auto& [player, d] : r.deltas) {
      stats_.payoffs[player] += d.r_v + d.r_c;
      stats_.voter_delta_sum += d.r_v;
      stats_.nonzero_voter_deltas += d.r_v != 0;
    }
    if (config_.keep_results) stats_.results.push_back(std::move(r));
  }
}

TrialStats Simulation::run() {
  while (!finished()) run_round();
  if (game_.audited_balance_total() != game_.balance_total()) throw std::logic_error("balance ledger drifted");
  if (config_.trajectory_stride > 0 &&
      (stats_.pool_trajectory.empty() || stats_.pool_trajectory.back().round != round_)) {
    sample_pools();
  }
  stats_.final_pools = game_.pools();
  stats_.cohorts.clear();
  for (const auto& p : profiles_) {
    if (p.cohort.empty()) continue;
    CohortPayoff& c = stats_.cohorts[p.cohort];
    ++c.members;
    const auto it = stats_.payoffs.find(p.id);
    if (it != stats_.payoffs.end()) c.total += it->second;
  }
  return stats_;
}

TrialStats run_trial_with_seed(const ScenarioConfig& config, std::uint64_t seed, std::size_t trial_index) {
  Simulation sim(config, seed, trial_index);
  return sim.run();
}

TrialStats run_trial(const ScenarioConfig& config, std::size_t trial_index) {
  return run_trial_with_seed(config, trial_seed(config.master_seed, trial_index), trial_index);
}

}  // namespace oraclesim::sim
