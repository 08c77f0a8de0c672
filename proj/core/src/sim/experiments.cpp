#include "oraclesim/sim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "oraclesim/analysis/security.hpp"

namespace oraclesim::sim {

std::uint64_t ExperimentStats::decided() const {
  std::uint64_t n = 0;
  for (const auto& t : trials) n += t.decided;
  return n;
}

std::uint64_t ExperimentStats::incorrect() const {
  std::uint64_t n = 0;
  for (const auto& t : trials) n += t.incorrect_voting;
  return n;
}

double ExperimentStats::incorrect_rate() const {
  const std::uint64_t n = decided();
  return n == 0 ? 0.0 : static_cast<double>(incorrect()) / static_cast<double>(n);
}

Interval ExperimentStats::incorrect_interval(double z) const { return wilson_interval(incorrect(), decided(), z); }

std::map<std::string, MeanStat> ExperimentStats::cohort_payoffs() const {
  std::map<std::string, std::vector<double>> samples;
  for (const auto& t : trials) {
    for (const auto& [name, c] : t.cohorts) samples[name].push_back(c.mean());
  }
  std::map<std::string, MeanStat> out;
  for (const auto& [name, xs] : samples) out[name] = mean_stderr(xs);
  return out;
}

MeanStat ExperimentStats::player_payoff(PlayerId player) const {
  std::vector<double> xs;
  xs.reserve(trials.size());
  for (const auto& t : trials) {
    const auto it = t.payoffs.find(player);
    xs.push_back(it == t.payoffs.end() ? 0.0 : static_cast<double>(it->second));
  }
  return mean_stderr(xs);
}

ExperimentStats run_experiment(const ScenarioConfig& config) {
  config.validate();
  ExperimentStats out;
  out.trials.resize(config.trials);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(config.threads, config.trials));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < config.trials; i = next++) {
      try {
        out.trials[i] = run_trial(config, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// ---------------------------------------------------------------------------

bool EquilibriumReport::any_violation() const {
  return std::any_of(rows.begin(), rows.end(), [](const DeviationRow& r) { return r.violation; });
}

std::vector<std::string> default_deviation_menu() {
  return {"honest", "lazy-T", "lazy-F", "random", "inverted", "abstain"};
}

namespace {

std::size_t find_deviator(const ScenarioConfig& config) {
  std::size_t index = 0;
  for (const auto& g : config.agents) {
    if (g.profile.cohort == "deviator") return index;
    index += g.count;
  }
  return 0;
}

/// Splits the group holding player `index` so that it becomes a group of one.
/// Player ids are unchanged because expansion order is preserved.
std::size_t isolate_player(ScenarioConfig& config, std::size_t index) {
  std::size_t start = 0;
  for (std::size_t g = 0; g < config.agents.size(); ++g) {
    const std::size_t count = config.agents[g].count;
    if (index >= start + count) {
      start += count;
      continue;
    }
    const std::size_t before = index - start;
    const std::size_t after = count - before - 1;
    const AgentGroup tmpl = config.agents[g];
    std::vector<AgentGroup> replacement;
    if (before > 0) replacement.push_back({before, tmpl.profile});
    replacement.push_back({1, tmpl.profile});
    if (after > 0) replacement.push_back({after, tmpl.profile});
    config.agents.erase(config.agents.begin() + static_cast<std::ptrdiff_t>(g));
    config.agents.insert(config.agents.begin() + static_cast<std::ptrdiff_t>(g), replacement.begin(),
                         replacement.end());
    return g + (before > 0 ? 1 : 0);
  }
  throw std::out_of_range("deviator index beyond the population");
}

/// Seat-weighted probability that a single vote opposes a definite truth.
double population_incorrect_prob(const ScenarioConfig& config) {
  double weight = 0.0;
  double incorrect = 0.0;
  const double p_true = config.stream.p_true;
  for (const auto& g : config.agents) {
    const auto& p = g.profile;
    const double w = static_cast<double>(g.count) * p.seats * p.participation;
    double bad = 0.0;
    switch (p.voter.kind) {
      case agents::VoterKind::Honest:
        bad = 1.0 - p.accuracy;
        break;
      case agents::VoterKind::Inverted:
        bad = p.accuracy;
        break;
      case agents::VoterKind::Random:
        bad = 0.5;
        break;
      case agents::VoterKind::Lazy:
        bad = p.voter.lazy_position == Position::True ? 1.0 - p_true : p_true;
        break;
      case agents::VoterKind::Adversary:
        bad = 1.0;
        break;
      case agents::VoterKind::Abstain:
        continue;
    }
    weight += w;
    incorrect += w * bad;
  }
  return weight == 0.0 ? 0.0 : incorrect / weight;
}

}  // namespace

EquilibriumReport equilibrium_check(const ScenarioConfig& config, std::span<const std::string> menu) {
  config.validate();
  EquilibriumReport report;
  report.incorrect_vote_prob = population_incorrect_prob(config);
  report.assumption_violated = report.incorrect_vote_prob >= 0.5;

  ScenarioConfig base = config;
  const std::size_t player = find_deviator(base);
  const std::size_t group = isolate_player(base, player);
  report.deviator = PlayerId{static_cast<std::uint32_t>(player)};

  auto run_with = [&](const std::string& tag) {
    ScenarioConfig c = base;
    c.agents[group].profile.voter = agents::parse_voter_tag(tag);
    return run_experiment(c).player_payoff(report.deviator);
  };

  const MeanStat honest = run_with("honest");
  report.rows.push_back({"honest", honest, false});
  for (const auto& tag : menu) {
    if (tag == "honest") continue;
    const MeanStat m = run_with(tag);
    const double margin = 2.0 * std::sqrt(m.stderr_mean * m.stderr_mean + honest.stderr_mean * honest.stderr_mean);
    report.rows.push_back({tag, m, m.mean > honest.mean + margin});
  }
  return report;
}

// ---------------------------------------------------------------------------

double relative_difference(double a, double b) noexcept {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

PoolBiasReport pool_bias_experiment(const ScenarioConfig& config) {
  const ExperimentStats stats = run_experiment(config);
  PoolBiasReport report;

  double drained_true = 0.0;
  double drained_false = 0.0;
  double exposure_true = 0.0;  // sum over sampled rounds of the pool balance times the stride
  double exposure_false = 0.0;
  double pool_true = 0.0;
  double pool_false = 0.0;
  std::uint64_t burn_in_total = 0;
  for (const auto& t : stats.trials) {
    const std::uint64_t burn_in = std::max<std::uint64_t>(1, t.rounds / 3);
    burn_in_total += burn_in;
    const PoolSample* last = nullptr;
    for (const auto& s : t.pool_trajectory) {
      if (s.round > burn_in) break;
      if (last != nullptr) {
        const auto width = static_cast<double>(s.round - last->round);
        exposure_true += width * static_cast<double>(last->r_true);
        exposure_false += width * static_cast<double>(last->r_false);
      }
      last = &s;
    }
    if (last != nullptr && last->round > 0) {
      drained_true += static_cast<double>(last->drained_true) / static_cast<double>(last->round);
      drained_false += static_cast<double>(last->drained_false) / static_cast<double>(last->round);
      report.burn_in_drain_rate_true += static_cast<double>(last->drained_true);
      report.burn_in_drain_rate_false += static_cast<double>(last->drained_false);
    }
    const std::size_t n = t.certification_sequence.size();
    for (std::size_t i = n - n / 3; i < n; ++i) {
      const auto o = static_cast<Outcome>(t.certification_sequence[i]);
      if (o == Outcome::True) ++report.late_certified_true;
      if (o == Outcome::False) ++report.late_certified_false;
    }
    pool_true += static_cast<double>(t.final_pools.r_true);
    pool_false += static_cast<double>(t.final_pools.r_false);
  }
  const double trials = static_cast<double>(stats.trials.size());
  report.burn_in_rounds = burn_in_total / stats.trials.size();
  report.burn_in_drain_rate_true = exposure_true > 0.0 ? report.burn_in_drain_rate_true / exposure_true : 0.0;
  report.burn_in_drain_rate_false = exposure_false > 0.0 ? report.burn_in_drain_rate_false / exposure_false : 0.0;
  report.burn_in_drained_true = drained_true / trials;
  report.burn_in_drained_false = drained_false / trials;
  report.late_relative_difference = relative_difference(static_cast<double>(report.late_certified_true),
                                                        static_cast<double>(report.late_certified_false));
  report.cohort_payoffs = stats.cohort_payoffs();
  report.mean_final_pools = {static_cast<Money>(std::llround(pool_true / trials)),
                             static_cast<Money>(std::llround(pool_false / trials))};
  if (!stats.trials.empty()) report.trajectory = stats.trials.front().pool_trajectory;
  return report;
}

// ---------------------------------------------------------------------------

ScenarioConfig manipulation_scenario(const analysis::ManipulationParams& mp, const VerifyOptions& options) {
  if (!(mp.fraction >= 0.0 && mp.fraction < 1.0)) throw std::invalid_argument("fraction must lie in [0, 1)");
  if (mp.dv_over_smax == 0) throw std::invalid_argument("D_v / s_max must be positive");
  if (options.seat_weight < 2) throw std::invalid_argument("seat weight must be at least 2");

  ScenarioConfig c;
  c.params.s_max = 1;
  c.params.decision_stake = static_cast<Money>(mp.dv_over_smax);
  c.params.list_size = mp.list_size;
  c.params.sigma_min = 1;
  c.stream.p_true = 0.5;
  c.stream.bounty_min = c.stream.bounty_max = 1;
  c.vote_slots_per_round = 1;
  c.stop_after_decided = options.decided_per_trial;
  // Each decision needs D_v slots and the list keeps every proposition open
  // until then; leave generous headroom.
  c.rounds = (options.decided_per_trial + mp.list_size) * mp.dv_over_smax * 2;
  c.trials = options.trials;
  c.master_seed = options.master_seed;
  c.threads = options.threads;
  c.trajectory_stride = 0;

  const auto adversary_seats =
      static_cast<std::uint64_t>(std::llround(mp.fraction * static_cast<double>(options.seat_weight)));
  const std::uint64_t honest_seats = options.seat_weight - adversary_seats;

  agents::PlayerProfile honest;
  honest.accuracy = mp.q;
  honest.initial_balance = 100;
  c.agents.push_back({honest_seats, honest});

  if (adversary_seats > 0) {
    agents::PlayerProfile adv;
    adv.voter.kind = agents::VoterKind::Adversary;
    adv.voter.adversary.budget = Money{1} << 50;
    adv.initial_balance = static_cast<Money>(mp.list_size) * c.params.decision_stake * 2;
    adv.seats = static_cast<std::uint32_t>(adversary_seats);
    adv.cohort = "adversary";
    c.agents.push_back({1, adv});
  }
  return c;
}

VerifyRow verify_manipulation(const analysis::ManipulationParams& mp, const VerifyOptions& options) {
  const ScenarioConfig c = manipulation_scenario(mp, options);
  const ExperimentStats stats = run_experiment(c);

  VerifyRow row;
  row.params = mp;
  std::uint64_t adversary_seats = 0;
  for (const auto& g : c.agents) {
    if (g.profile.voter.kind == agents::VoterKind::Adversary) adversary_seats += g.count * g.profile.seats;
  }
  row.realized_fraction = static_cast<double>(adversary_seats) / static_cast<double>(options.seat_weight);
  row.closed_form = analysis::p_manipulate_specific_from_fraction(mp.q, row.realized_fraction, mp.dv_over_smax);
  row.decided = stats.decided();
  row.incorrect = stats.incorrect();
  row.empirical = stats.incorrect_rate();
  row.interval = stats.incorrect_interval();
  row.within = row.interval.contains(row.closed_form);
  return row;
}

}  // namespace oraclesim::sim
