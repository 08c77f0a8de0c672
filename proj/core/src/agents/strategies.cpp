#include "oraclesim/agents/strategies.hpp"

#include <stdexcept>
#include <string>

#include "oraclesim/protocol/errors.hpp"

namespace oraclesim::agents {

void PlayerProfile::validate(const SystemParams& params) const {
  auto fail = [this](const std::string& what) {
    throw std::invalid_argument("player " + std::to_string(to_underlying(id)) + ": " + what);
  };
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) fail("accuracy must lie in [0, 1]");
  if (initial_balance < 0) fail("initial_balance must be non-negative");
  if (vote_stake < 0 || vote_stake > params.s_max) fail("vote_stake must lie in [0, s_max]");
  if (cert_stake != 0 && cert_stake < params.sigma_min) fail("cert_stake must be 0 or at least sigma_min");
  if (!(participation >= 0.0 && participation <= 1.0)) fail("participation must lie in [0, 1]");
  if (voter.kind == VoterKind::Adversary) {
    const AdversaryConfig& a = voter.adversary;
    if (a.budget < 0) fail("adversary budget must be non-negative");
    if (a.budget % params.s_max != 0) fail("adversary budget must be a multiple of s_max");
    if (a.direction == Position::Unknown) fail("adversary direction must be T or F");
  }
  if (voter.kind == VoterKind::Lazy && voter.lazy_position == Position::Unknown) fail("lazy position must be T or F");
  if (certifier.kind != CertifierKind::None && certifier.candidates == 0) fail("certifier candidates must be positive");
}

std::string voter_tag(const VoterStrategy& s) {
  switch (s.kind) {
    case VoterKind::Honest:
      return "honest";
    case VoterKind::Lazy:
      return s.lazy_position == Position::False ? "lazy-F" : "lazy-T";
    case VoterKind::Random:
      return "random";
    case VoterKind::Inverted:
      return "inverted";
    case VoterKind::Abstain:
      return "abstain";
    case VoterKind::Adversary:
      return "adversary";
  }
  return "honest";
}

VoterStrategy parse_voter_tag(std::string_view tag) {
  VoterStrategy s;
  if (tag == "honest") {
    s.kind = VoterKind::Honest;
  } else if (tag == "lazy-T" || tag == "lazy") {
    s.kind = VoterKind::Lazy;
    s.lazy_position = Position::True;
  } else if (tag == "lazy-F") {
    s.kind = VoterKind::Lazy;
    s.lazy_position = Position::False;
  } else if (tag == "random") {
    s.kind = VoterKind::Random;
  } else if (tag == "inverted" || tag == "inverted-belief") {
    s.kind = VoterKind::Inverted;
  } else if (tag == "abstain") {
    s.kind = VoterKind::Abstain;
  } else if (tag == "adversary") {
    s.kind = VoterKind::Adversary;
  } else {
    throw std::invalid_argument("unknown voter strategy '" + std::string(tag) + "'");
  }
  return s;
}

std::string_view certifier_tag(CertifierKind kind) {
  switch (kind) {
    case CertifierKind::None:
      return "none";
    case CertifierKind::PoolAware:
      return "pool-aware";
    case CertifierKind::Naive:
      return "naive";
  }
  return "none";
}

CertifierKind parse_certifier_tag(std::string_view tag) {
  if (tag == "none") return CertifierKind::None;
  if (tag == "pool-aware" || tag == "honest") return CertifierKind::PoolAware;
  if (tag == "naive") return CertifierKind::Naive;
  throw std::invalid_argument("unknown certifier strategy '" + std::string(tag) + "'");
}

Position random_vote(Rng& rng) { return rng.bernoulli(0.5) ? Position::True : Position::False; }

Position adversary_vote(const AdversaryConfig& config, PropositionId assigned, TruthValue truth) noexcept {
  const bool on_target = !config.target || *config.target == assigned;
  if (truth == TruthValue::Undecidable) return config.direction.value_or(Position::True);
  const Outcome t = as_outcome(truth);
  if (!on_target && config.mode == AdversaryMode::HonestOffTarget) return t;
  if (on_target && config.direction) return *config.direction;
  return negate(t);
}

void AdversaryState::spend(Money stake) {
  if (!can_stake(stake)) {
    throw ProtocolError(ErrorCode::BudgetExhausted,
                        "adversary has " + std::to_string(remaining()) + " left, needs " + std::to_string(stake));
  }
  spent_ += stake;
}

double certification_expected_value(double accuracy, Money pool, std::uint32_t tau, Money stake, Money side_total) {
  const double share = static_cast<double>(stake) / static_cast<double>(side_total + stake);
  const double reward = static_cast<double>(pool) / static_cast<double>(tau);
  return accuracy * share * reward - (1.0 - accuracy) * static_cast<double>(stake);
}

std::optional<CertificationChoice> pool_aware_certify(double accuracy, std::span<const CertCandidate> candidates,
                                                      const RewardPools& pools, const SystemParams& params,
                                                      Money stake) {
  std::optional<CertificationChoice> best;
  Money best_pool = 0;
  for (const CertCandidate& c : candidates) {
    if (c.belief == Outcome::Unknown) continue;
    const bool on_true = c.belief == Outcome::True;
    const Money pool = on_true ? pools.r_true : pools.r_false;
    const Money side = on_true ? c.sigma_true : c.sigma_false;
    const double ev = certification_expected_value(accuracy, pool, params.tau, stake, side);
    if (!(ev > 0.0)) continue;
    if (!best || ev > best->expected_value || (ev == best->expected_value && pool > best_pool)) {
      best = CertificationChoice{c.proposition, c.belief, stake, ev};
      best_pool = pool;
    }
  }
  return best;
}

std::optional<CertificationChoice> naive_certify(std::span<const CertCandidate> candidates, Money stake, Rng& rng) {
  std::size_t definite = 0;
  for (const auto& c : candidates) definite += c.belief != Outcome::Unknown;
  if (definite == 0) return std::nullopt;
  std::size_t pick = rng.uniform_below(definite);
  for (const auto& c : candidates) {
    if (c.belief == Outcome::Unknown) continue;
    if (pick-- == 0) return CertificationChoice{c.proposition, c.belief, stake, 0.0};
  }
  return std::nullopt;
}

}  // namespace oraclesim::agents
