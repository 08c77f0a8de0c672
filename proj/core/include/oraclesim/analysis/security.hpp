#pragma once

#include <cstddef>
#include <cstdint>

#include "oraclesim/analysis/binomial.hpp"
#include "oraclesim/protocol/types.hpp"

namespace oraclesim::analysis {

/// Voting on one proposition as D_v / s_max Bernoulli trials. An outcome is
/// flipped only by a strict majority, so ties count as Unknown.
struct VoteModel {
  std::uint64_t trials = 0;
  double q = 0.0;
  std::uint64_t threshold = 0;  // floor(trials / 2) + 1

  /// Throws AnalysisError(NotMultiple) unless D_v is a positive multiple of s_max.
  static VoteModel from_stakes(Money decision_stake, Money s_max, double q);
};

/// P[B(D_v/s_max, q) > D_v/(2 s_max)].
double p_vote_correct(Money decision_stake, Money s_max, double q);

/// 1 - q + n q / (|P| D_v): chance an arbitrary vote is incorrect when an
/// adversary holding n units votes incorrectly everywhere.
double adversary_incorrect_prob(double q, Money n, std::size_t list_size, Money decision_stake);

/// Same quantity parameterised by the adversary's vote fraction n / (|P| D_v).
double adversary_incorrect_prob_from_fraction(double q, double fraction);

double p_manipulate_specific(double q, Money n, std::size_t list_size, Money decision_stake, Money s_max);
double p_manipulate_specific_from_fraction(double q, double fraction, std::uint64_t trials);

/// 1 - (1 - p)^|P|, treating propositions as independent.
double p_manipulate_any(double p_specific, std::size_t list_size);

/// Largest bounty that keeps voters with accuracy below q_target unprofitable:
/// floor((1 - q) D_v / q). Values within 1e-9 of an integer snap to it before
/// flooring so that, e.g., q = 0.8 yields exactly 250 for D_v = 1000.
Money max_bounty(double q_target, Money decision_stake);

/// Inverse of max_bounty: D_v / (D_v + B).
double min_accuracy(Money bounty, Money decision_stake);

}  // namespace oraclesim::analysis
