#include "oraclesim/protocol/outcomes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace oraclesim {

namespace {
__extension__ using Wide = __int128;
}  // namespace

Outcome majority_outcome(Money on_true, Money on_false, double threshold) {
  if (threshold <= 0.5) {
    if (on_true > on_false) return Outcome::True;
    if (on_false > on_true) return Outcome::False;
    return Outcome::Unknown;
  }
  // Threshold compared at 1e-9 resolution so decimal thresholds like 0.6 tie exactly.
  constexpr std::int64_t kScale = 1000000000;
  const auto scaled = static_cast<Wide>(std::llround(threshold * static_cast<double>(kScale)));
  const Wide sum = static_cast<Wide>(on_true) + on_false;
  if (static_cast<Wide>(on_true) * kScale > scaled * sum) return Outcome::True;
  if (static_cast<Wide>(on_false) * kScale > scaled * sum) return Outcome::False;
  return Outcome::Unknown;
}

Outcome voting_outcome(const Totals& totals, double threshold) {
  if (totals.s_tot_unknown > std::max(totals.s_tot_true, totals.s_tot_false)) return Outcome::Unknown;
  return majority_outcome(totals.s_tot_true, totals.s_tot_false, threshold);
}

Outcome certification_outcome(const Totals& totals, double threshold) {
  return majority_outcome(totals.sigma_tot_true, totals.sigma_tot_false, threshold);
}

Outcome game_outcome(Outcome voting, Outcome certification) noexcept {
  if (voting != Outcome::Unknown && voting == certification) return voting;
  return Outcome::Unknown;
}

Outcome oracle_outcome(Outcome voting, Outcome certification) noexcept {
  if (voting == Outcome::Unknown) return Outcome::Unknown;
  if (certification == Outcome::Unknown || certification == voting) return voting;
  return Outcome::Unknown;
}

double oracle_confidence(const Totals& totals) noexcept {
  const Money definite = totals.s_tot_true + totals.s_tot_false;
  if (definite == 0) return 0.5;
  return static_cast<double>(totals.s_tot_true) / static_cast<double>(definite);
}

}  // namespace oraclesim
