#include "oraclesim/analysis/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oraclesim::analysis {

double binomial_tail(std::uint64_t n, double p, std::uint64_t k) {
  if (!(p >= 0.0 && p <= 1.0)) throw AnalysisError(AnalysisErrorCode::DomainError, "p must lie in [0, 1]");
  if (k > n) throw AnalysisError(AnalysisErrorCode::DomainError, "k must lie in [0, n]");
  if (k == 0) return 1.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  const long double lp = std::log(static_cast<long double>(p));
  const long double lq = std::log1p(-static_cast<long double>(p));
  const long double lnf = std::lgamma(static_cast<long double>(n) + 1.0L);
  std::vector<long double> terms;
  terms.reserve(n - k + 1);
  for (std::uint64_t i = k; i <= n; ++i) {
    const auto li = static_cast<long double>(i);
    const auto lr = static_cast<long double>(n - i);
    const long double log_term = lnf - std::lgamma(li + 1.0L) - std::lgamma(lr + 1.0L) + li * lp + lr * lq;
    terms.push_back(std::exp(log_term));
  }
  std::sort(terms.begin(), terms.end());
  long double sum = 0.0L;
  for (long double t : terms) sum += t;
  return static_cast<double>(std::min(sum, 1.0L));
}

}  // namespace oraclesim::analysis
