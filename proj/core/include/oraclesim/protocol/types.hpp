#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <type_traits>

namespace oraclesim {

/// Money is held in integer minor units; no floating point touches a balance.
using Money = std::int64_t;

enum class PlayerId : std::uint32_t {};
enum class PropositionId : std::uint64_t {};
enum class AssignmentId : std::uint64_t {};
enum class CertificationId : std::uint64_t {};

template <typename E>
constexpr auto to_underlying(E e) noexcept {
  return static_cast<std::underlying_type_t<E>>(e);
}

/// Hidden ground truth of a proposition. Undecidable exists only in tri-state mode.
enum class TruthValue : std::uint8_t { False = 0, True = 1, Undecidable = 2 };

/// Result of a tally, and also the value carried by a vote or certification.
/// The numeric values double as the position byte of a commitment digest.
enum class Outcome : std::uint8_t { False = 0, True = 1, Unknown = 2 };

/// A vote or certification direction.
using Position = Outcome;

constexpr Outcome negate(Outcome o) noexcept {
  switch (o) {
    case Outcome::True:
      return Outcome::False;
    case Outcome::False:
      return Outcome::True;
    case Outcome::Unknown:
      break;
  }
  return Outcome::Unknown;
}

/// Outcome a perfectly accurate observer would report for a truth value.
constexpr Outcome as_outcome(TruthValue t) noexcept {
  return static_cast<Outcome>(static_cast<std::uint8_t>(t));
}

std::string_view to_string(Outcome o) noexcept;
std::string_view to_string(TruthValue t) noexcept;
/// Accepts "T"/"F"/"U" and the long forms "true"/"false"/"unknown".
Outcome parse_outcome(std::string_view s);
TruthValue parse_truth(std::string_view s);

struct SystemParams {
  Money s_max = 1;              // maximum stake per vote
  Money sigma_min = 10;         // minimum stake per certification
  Money decision_stake = 20;    // D_v: voting stake that triggers a decision
  std::size_t list_size = 100;  // fixed proposition-list capacity
  std::uint32_t tau = 10;       // certification target
  double majority_threshold = 0.5;
  bool tri_state = false;

  /// Throws ProtocolError(InvalidParams) naming the first violated bound.
  void validate() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct RewardPools {
  Money r_true = 0;
  Money r_false = 0;

  Money total() const noexcept { return r_true + r_false; }
  friend bool operator==(const RewardPools&, const RewardPools&) = default;
};

/// Revealed stake per direction summed over all players of one proposition.
struct Totals {
  Money s_tot_true = 0;
  Money s_tot_false = 0;
  Money s_tot_unknown = 0;
  Money sigma_tot_true = 0;
  Money sigma_tot_false = 0;

  Money voting_stake() const noexcept { return s_tot_true + s_tot_false + s_tot_unknown; }
  friend bool operator==(const Totals&, const Totals&) = default;
};

}  // namespace oraclesim
