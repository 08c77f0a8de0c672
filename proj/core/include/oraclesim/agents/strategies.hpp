#pragma once

#include <optional>
#include <span>

#include "oraclesim/agents/profile.hpp"
#include "oraclesim/protocol/types.hpp"
#include "oraclesim/rng.hpp"

namespace oraclesim::agents {

inline Position honest_vote(Outcome belief) noexcept { return belief; }
inline Position lazy_vote(Position constant) noexcept { return constant; }
/// Votes against the belief; an Unknown belief stays Unknown.
inline Position inverted_vote(Outcome belief) noexcept { return negate(belief); }
/// Fair coin between True and False.
Position random_vote(Rng& rng);

/// Position the adversary takes on an assigned proposition (it knows the truth).
Position adversary_vote(const AdversaryConfig& config, PropositionId assigned, TruthValue truth) noexcept;

/// Tracks adversary expenditure against its budget.
class AdversaryState {
 public:
  AdversaryState() = default;
  explicit AdversaryState(AdversaryConfig config) : config_(config) {}

  const AdversaryConfig& config() const noexcept { return config_; }
  bool can_stake(Money stake) const noexcept { return spent_ + stake <= config_.budget; }
  /// Throws ProtocolError(BudgetExhausted) when the stake does not fit.
  void spend(Money stake);
  Money spent() const noexcept { return spent_; }
  Money remaining() const noexcept { return config_.budget - spent_; }

 private:
  AdversaryConfig config_;
  Money spent_ = 0;
};

/// A proposition a certifier has looked at this round.
struct CertCandidate {
  PropositionId proposition{};
  Outcome belief = Outcome::Unknown;
  Money sigma_true = 0;   // revealed certification stake already on True
  Money sigma_false = 0;  // and on False
};

struct CertificationChoice {
  PropositionId proposition{};
  Position position = Position::True;
  Money stake = 0;
  double expected_value = 0.0;
};

/// q * stake / (side + stake) * pool / tau - (1 - q) * stake.
double certification_expected_value(double accuracy, Money pool, std::uint32_t tau, Money stake, Money side_total);

/// Certifies the candidate with the largest positive expected value under the
/// player's own accuracy; ties go to the larger pool, then to the earlier
/// candidate. Abstains when no candidate has positive expected value or the
/// only beliefs are Unknown.
std::optional<CertificationChoice> pool_aware_certify(double accuracy, std::span<const CertCandidate> candidates,
                                                      const RewardPools& pools, const SystemParams& params,
                                                      Money stake);

/// An honest certifier follows its belief and picks the proposition and pool
/// exactly as the pool-aware policy does.
inline std::optional<CertificationChoice> honest_certify(double accuracy, std::span<const CertCandidate> candidates,
                                                         const RewardPools& pools, const SystemParams& params,
                                                         Money stake) {
  return pool_aware_certify(accuracy, candidates, pools, params, stake);
}

/// Ignores the pools: certifies a uniformly chosen candidate with a definite belief.
std::optional<CertificationChoice> naive_certify(std::span<const CertCandidate> candidates, Money stake, Rng& rng);

}  // namespace oraclesim::agents
