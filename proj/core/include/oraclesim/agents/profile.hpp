#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "oraclesim/protocol/types.hpp"

namespace oraclesim::agents {

enum class VoterKind : std::uint8_t { Honest, Lazy, Random, Inverted, Abstain, Adversary };
enum class CertifierKind : std::uint8_t { None, PoolAware, Naive };

enum class AdversaryMode : std::uint8_t {
  IncorrectEverywhere,  // every vote opposes the truth
  HonestOffTarget,      // only the target is attacked; elsewhere the adversary votes the truth
};

struct AdversaryConfig {
  Money budget = 0;                      // total stake the adversary may spend
  std::optional<PropositionId> target;   // nullopt = any proposition
  std::optional<Position> direction;     // forced position; nullopt = opposite of the truth
  AdversaryMode mode = AdversaryMode::IncorrectEverywhere;

  friend bool operator==(const AdversaryConfig&, const AdversaryConfig&) = default;
};

struct VoterStrategy {
  VoterKind kind = VoterKind::Honest;
  Position lazy_position = Position::True;
  AdversaryConfig adversary;

  friend bool operator==(const VoterStrategy&, const VoterStrategy&) = default;
};

struct CertifierStrategy {
  CertifierKind kind = CertifierKind::None;
  std::uint32_t candidates = 5;  // open propositions inspected per round

  friend bool operator==(const CertifierStrategy&, const CertifierStrategy&) = default;
};

/// One independent belief source. Colluding entities are modelled as one profile.
struct PlayerProfile {
  PlayerId id{};
  double accuracy = 0.9;
  Money initial_balance = 1000;
  VoterStrategy voter;
  CertifierStrategy certifier;
  Money vote_stake = 0;   // 0 = s_max
  Money cert_stake = 0;   // 0 = sigma_min
  double participation = 1.0;
  std::uint32_t seats = 1;  // vote opportunities per round
  std::string cohort;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate(const SystemParams& params) const;

  friend bool operator==(const PlayerProfile&, const PlayerProfile&) = default;
};

/// "honest", "lazy-T", "lazy-F", "random", "inverted", "abstain", "adversary".
std::string voter_tag(const VoterStrategy& s);
VoterStrategy parse_voter_tag(std::string_view tag);

/// "none", "pool-aware" (alias "honest"), "naive".
std::string_view certifier_tag(CertifierKind kind);
CertifierKind parse_certifier_tag(std::string_view tag);

}  // namespace oraclesim::agents
