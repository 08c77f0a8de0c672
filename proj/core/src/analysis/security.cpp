#include "oraclesim/analysis/security.hpp"

#include <cmath>
#include <string>

namespace oraclesim::analysis {

namespace {

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw AnalysisError(AnalysisErrorCode::DomainError, std::string(name) + " must lie in [0, 1]");
}

}  // namespace

VoteModel VoteModel::from_stakes(Money decision_stake, Money s_max, double q) {
  check_probability(q, "q");
  if (s_max <= 0 || decision_stake <= 0) throw AnalysisError(AnalysisErrorCode::DomainError, "stakes must be positive");
  if (decision_stake % s_max != 0) {
    throw AnalysisError(AnalysisErrorCode::NotMultiple, "D_v must be a multiple of s_max");
  }
  VoteModel m;
  m.trials = static_cast<std::uint64_t>(decision_stake / s_max);
  m.q = q;
  m.threshold = m.trials / 2 + 1;
  return m;
}

double p_vote_correct(Money decision_stake, Money s_max, double q) {
  const VoteModel m = VoteModel::from_stakes(decision_stake, s_max, q);
  return binomial_tail(m.trials, q, m.threshold);
}

double adversary_incorrect_prob_from_fraction(double q, double fraction) {
  check_probability(q, "q");
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw AnalysisError(AnalysisErrorCode::BudgetExceedsStake, "adversary fraction must lie in [0, 1]");
  }
  return 1.0 - q + fraction * q;
}

double adversary_incorrect_prob(double q, Money n, std::size_t list_size, Money decision_stake) {
  if (n < 0 || list_size == 0 || decision_stake <= 0) {
    throw AnalysisError(AnalysisErrorCode::DomainError, "n, |P| and D_v must be non-negative / positive");
  }
  const long double capacity = static_cast<long double>(list_size) * static_cast<long double>(decision_stake);
  if (static_cast<long double>(n) > capacity) {
    throw AnalysisError(AnalysisErrorCode::BudgetExceedsStake, "adversary budget exceeds the total voting stake");
  }
  check_probability(q, "q");
  return 1.0 - q + static_cast<double>(static_cast<long double>(n) * q / capacity);
}

double p_manipulate_specific_from_fraction(double q, double fraction, std::uint64_t trials) {
  if (trials == 0) throw AnalysisError(AnalysisErrorCode::DomainError, "trials must be positive");
  return binomial_tail(trials, adversary_incorrect_prob_from_fraction(q, fraction), trials / 2 + 1);
}

double p_manipulate_specific(double q, Money n, std::size_t list_size, Money decision_stake, Money s_max) {
  const VoteModel m = VoteModel::from_stakes(decision_stake, s_max, q);
  return binomial_tail(m.trials, adversary_incorrect_prob(q, n, list_size, decision_stake), m.threshold);
}

double p_manipulate_any(double p_specific, std::size_t list_size) {
  check_probability(p_specific, "p_specific");
  if (p_specific == 1.0) return list_size == 0 ? 0.0 : 1.0;
  return -std::expm1(static_cast<double>(list_size) * std::log1p(-p_specific));
}

Money max_bounty(double q_target, Money decision_stake) {
  if (!(q_target > 0.0 && q_target < 1.0)) throw AnalysisError(AnalysisErrorCode::DomainError, "q must lie in (0, 1)");
  if (decision_stake <= 0) throw AnalysisError(AnalysisErrorCode::DomainError, "D_v must be positive");
  const long double q = q_target;
  const long double cap = (1.0L - q) * static_cast<long double>(decision_stake) / q;
  const long double nearest = std::round(cap);
  if (std::fabs(cap - nearest) < 1e-9L) return static_cast<Money>(nearest);
  return static_cast<Money>(std::floor(cap));
}

double min_accuracy(Money bounty, Money decision_stake) {
  if (bounty <= 0 || decision_stake <= 0) {
    throw AnalysisError(AnalysisErrorCode::DomainError, "bounty and D_v must be positive");
  }
  return static_cast<double>(decision_stake) / static_cast<double>(decision_stake + bounty);
}

}  // namespace oraclesim::analysis
