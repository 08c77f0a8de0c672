#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oraclesim {

enum class ErrorCode {
  InvalidParams,
  InvalidTruth,
  ListFull,
  NonPositiveBounty,
  NonPositiveStake,
  StakeTooLarge,
  StakeTooSmall,
  InsufficientBalance,
  NoOpenPropositions,
  UnknownProposition,
  UnknownAssignment,
  UnknownCertification,
  AlreadyCommitted,
  NotCommitted,
  AlreadyRevealed,
  DigestMismatch,
  InvalidPosition,
  NotDecidable,
  BudgetExhausted,
};

inline constexpr int kErrorCodeCount = static_cast<int>(ErrorCode::BudgetExhausted) + 1;

std::string_view to_string(ErrorCode code) noexcept;

/// Raised by every protocol state transition that rejects its input.
/// Rejections leave the game untouched, except DigestMismatch, which
/// forfeits the committed stake before throwing.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace oraclesim
