#include "oraclesim/protocol/types.hpp"

#include <string>

#include "oraclesim/protocol/errors.hpp"

namespace oraclesim {

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::True:
      return "T";
    case Outcome::False:
      return "F";
    case Outcome::Unknown:
      return "U";
  }
  return "?";
}

std::string_view to_string(TruthValue t) noexcept {
  switch (t) {
    case TruthValue::True:
      return "T";
    case TruthValue::False:
      return "F";
    case TruthValue::Undecidable:
      return "U";
  }
  return "?";
}

Outcome parse_outcome(std::string_view s) {
  if (s == "T" || s == "true") return Outcome::True;
  if (s == "F" || s == "false") return Outcome::False;
  if (s == "U" || s == "unknown") return Outcome::Unknown;
  throw std::invalid_argument("not an outcome: '" + std::string(s) + "'");
}

TruthValue parse_truth(std::string_view s) {
  if (s == "T" || s == "true") return TruthValue::True;
  if (s == "F" || s == "false") return TruthValue::False;
  if (s == "U" || s == "undecidable") return TruthValue::Undecidable;
  throw std::invalid_argument("not a truth value: '" + std::string(s) + "'");
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidTruth: return "InvalidTruth";
    case ErrorCode::ListFull: return "ListFull";
    case ErrorCode::NonPositiveBounty: return "NonPositiveBounty";
    case ErrorCode::NonPositiveStake: return "NonPositiveStake";
    case ErrorCode::StakeTooLarge: return "StakeTooLarge";
    case ErrorCode::StakeTooSmall: return "StakeTooSmall";
    case ErrorCode::InsufficientBalance: return "InsufficientBalance";
    case ErrorCode::NoOpenPropositions: return "NoOpenPropositions";
    case ErrorCode::UnknownProposition: return "UnknownProposition";
    case ErrorCode::UnknownAssignment: return "UnknownAssignment";
    case ErrorCode::UnknownCertification: return "UnknownCertification";
    case ErrorCode::AlreadyCommitted: return "AlreadyCommitted";
    case ErrorCode::NotCommitted: return "NotCommitted";
    case ErrorCode::AlreadyRevealed: return "AlreadyRevealed";
    case ErrorCode::DigestMismatch: return "DigestMismatch";
    case ErrorCode::InvalidPosition: return "InvalidPosition";
    case ErrorCode::NotDecidable: return "NotDecidable";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
  }
  return "UnknownError";
}

void SystemParams::validate() const {
  auto fail = [](const std::string& what) { throw ProtocolError(ErrorCode::InvalidParams, what); };
  if (s_max <= 0) fail("s_max must be positive");
  if (sigma_min <= 0) fail("sigma_min must be positive");
  if (decision_stake < s_max) fail("decision_stake must be at least s_max");
  if (list_size < 1) fail("list_size must be at least 1");
  if (tau < 1) fail("tau must be at least 1");
  if (!(majority_threshold >= 0.5 && majority_threshold < 1.0)) fail("majority_threshold must lie in [0.5, 1)");
}

}  // namespace oraclesim
