#pragma once

#include "oraclesim/protocol/types.hpp"

namespace oraclesim {

/// Weighted-majority rule shared by voting and certification.
/// At threshold 0.5 this is a plain comparison with ties giving Unknown;
/// above 0.5 a side needs more than `threshold` of the two-way stake.
Outcome majority_outcome(Money on_true, Money on_false, double threshold);

/// Two-way rule over (s_T, s_F), except that Unknown wins outright when
/// the Unknown stake is a strict plurality over both definite sides.
Outcome voting_outcome(const Totals& totals, double threshold);

/// Certifications carry no Unknown side; no certifications is a 0 = 0 tie.
Outcome certification_outcome(const Totals& totals, double threshold);

/// Reward-determining outcome: definite only when voters and certifiers agree.
Outcome game_outcome(Outcome voting, Outcome certification) noexcept;

/// Reported outcome: the vote stands unless certifiers explicitly disagree.
Outcome oracle_outcome(Outcome voting, Outcome certification) noexcept;

/// s_T / (s_T + s_F), or 0.5 when no definite voting stake exists.
double oracle_confidence(const Totals& totals) noexcept;

}  // namespace oraclesim
