#pragma once

#include <optional>
#include <variant>

#include "oraclesim/protocol/digest.hpp"
#include "oraclesim/protocol/errors.hpp"
#include "oraclesim/protocol/types.hpp"

namespace oraclesim {

// One record per accepted state transition. A reveal that fails its digest
// check still mutates state (the stake is forfeited), so it is recorded with
// its error code.

struct DepositEvent {
  PlayerId player;
  Money amount;
};

struct FundPoolsEvent {
  Money r_true;
  Money r_false;
};

struct SubmitEvent {
  PropositionId proposition;
  TruthValue truth;
  Money bounty;
};

struct VoteRequestEvent {
  AssignmentId assignment;
  PlayerId player;
  Money stake;
  PropositionId proposition;
};

struct VoteCommitEvent {
  AssignmentId assignment;
  Digest digest;
};

struct VoteRevealEvent {
  AssignmentId assignment;
  Position value;
  Nonce nonce;
  std::optional<ErrorCode> error;
};

struct CertCommitEvent {
  CertificationId certification;
  PlayerId player;
  PropositionId proposition;
  Money stake;
  Digest digest;
};

struct CertRevealEvent {
  CertificationId certification;
  Position value;
  Nonce nonce;
  std::optional<ErrorCode> error;
};

struct SettleEvent {
  PropositionId proposition;
  Outcome voting;
  Outcome certification;
  Outcome game;
  Outcome oracle;
  Money pool_drain;
  Money pool_transfer;
  Money r_true_after;
  Money r_false_after;
};

using Event = std::variant<DepositEvent, FundPoolsEvent, SubmitEvent, VoteRequestEvent, VoteCommitEvent,
                           VoteRevealEvent, CertCommitEvent, CertRevealEvent, SettleEvent>;

}  // namespace oraclesim
