#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oraclesim::analysis {

enum class AnalysisErrorCode { DomainError, NotMultiple, BudgetExceedsStake };

class AnalysisError : public std::domain_error {
 public:
  AnalysisError(AnalysisErrorCode code, const std::string& what) : std::domain_error(what), code_(code) {}
  AnalysisErrorCode code() const noexcept { return code_; }

 private:
  AnalysisErrorCode code_;
};

/// P[B(n, p) >= k].
///
/// Every term is formed in log space with lgammal and the positive terms are
/// summed smallest-first in long double, so the result keeps well over 12
/// significant digits for the n <= a few thousand used here, including tails
/// far below double's epsilon.
double binomial_tail(std::uint64_t n, double p, std::uint64_t k);

}  // namespace oraclesim::analysis
