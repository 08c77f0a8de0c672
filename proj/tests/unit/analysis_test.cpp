#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oraclesim/analysis/binomial.hpp"
#include "oraclesim/analysis/security.hpp"
#include "oraclesim/analysis/table5.hpp"
#include "oraclesim/rng.hpp"

namespace oraclesim::analysis {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Exact P[B(n, num/den) >= k] in rational arithmetic.
cpp_rational exact_tail(unsigned n, unsigned num, unsigned den, unsigned k) {
  const cpp_rational p(num, den);
  const cpp_rational q = 1 - p;
  cpp_rational sum = 0;
  cpp_int choose = 1;
  for (unsigned i = 0; i <= n; ++i) {
    if (i > 0) choose = choose * (n - i + 1) / i;
    if (i < k) continue;
    cpp_rational term = choose;
    for (unsigned j = 0; j < i; ++j) term *= p;
    for (unsigned j = i; j < n; ++j) term *= q;
    sum += term;
  }
  return sum;
}

double to_double(const cpp_rational& r) { return static_cast<double>(r); }

TEST(BinomialTail, MatchesExactRationalOracle) {
  struct Case {
    unsigned n, num, den, k;
  };
  const Case cases[] = {{20, 2, 5, 11}, {20, 1, 5, 11}, {100, 1, 5, 51}, {100, 2, 5, 51},
                        {20, 1, 20, 11}, {100, 1, 20, 51}, {60, 1, 3, 31}, {7, 1, 2, 4}};
  for (const auto& c : cases) {
    const double expected = to_double(exact_tail(c.n, c.num, c.den, c.k));
    const double got = binomial_tail(c.n, static_cast<double>(c.num) / c.den, c.k);
    EXPECT_NEAR(got / expected, 1.0, 1e-12) << c.n << " " << c.num << "/" << c.den << " " << c.k;
  }
}

TEST(BinomialTail, WorkedValues) {
  EXPECT_EQ(round_half_up_4dp(binomial_tail(20, 0.4, 11)), "0.1275");
  EXPECT_NEAR(binomial_tail(20, 0.2, 11), 5.63e-4, 5e-6);
  EXPECT_DOUBLE_EQ(binomial_tail(20, 0.3, 0), 1.0);
  EXPECT_THROW(binomial_tail(20, 0.3, 21), AnalysisError);
  EXPECT_DOUBLE_EQ(binomial_tail(10, 0.0, 1), 0.0);
  EXPECT_DOUBLE_EQ(binomial_tail(10, 1.0, 10), 1.0);
}

TEST(BinomialTail, ComplementIdentity) {
  for (unsigned n : {5u, 20u, 77u, 100u, 500u}) {
    for (double p : {0.05, 0.2, 0.5, 0.8, 0.97}) {
      for (unsigned k = 1; k <= n; k += std::max(1u, n / 9)) {
        // P[B(n, 1 - p) >= n - k + 1] = P[B(n, p) < k].
        EXPECT_NEAR(binomial_tail(n, p, k) + binomial_tail(n, 1.0 - p, n - k + 1), 1.0, 1e-12);
      }
    }
  }
}

TEST(BinomialTail, EnumerationForSmallN) {
  for (unsigned n = 1; n <= 20; ++n) {
    for (double p : {0.1, 0.35, 0.5, 0.9}) {
      std::vector<double> mass(n + 1, 0.0);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int ones = __builtin_popcount(mask);
        mass[ones] += std::pow(p, ones) * std::pow(1.0 - p, n - ones);
      }
      double tail = 0.0;
      for (unsigned k = n + 1; k-- > 0;) {
        tail += mass[k];
        EXPECT_NEAR(binomial_tail(n, p, k), tail, 1e-12);
      }
    }
  }
}

TEST(BinomialTail, RejectsBadProbability) {
  EXPECT_THROW(binomial_tail(10, 1.5, 3), AnalysisError);
  EXPECT_THROW(binomial_tail(10, -0.1, 3), AnalysisError);
}

TEST(VoteCorrectness, WorkedValues) {
  EXPECT_NEAR(p_vote_correct(20, 1, 0.8), 0.997, 0.0005);
  EXPECT_DOUBLE_EQ(p_vote_correct(20, 1, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(p_vote_correct(2, 1, 0.5), 0.25);
  EXPECT_EQ(VoteModel::from_stakes(20, 1, 0.8).threshold, 11u);
  EXPECT_EQ(VoteModel::from_stakes(21, 1, 0.8).threshold, 11u);
  try {
    VoteModel::from_stakes(21, 2, 0.8);
    FAIL();
  } catch (const AnalysisError& e) {
    EXPECT_EQ(e.code(), AnalysisErrorCode::NotMultiple);
  }
}

TEST(AdversaryProb, WorkedValues) {
  EXPECT_DOUBLE_EQ(adversary_incorrect_prob(0.8, 0, 100, 20), 1.0 - 0.8);
  EXPECT_NEAR(adversary_incorrect_prob_from_fraction(0.8, 0.25), 0.4, 1e-15);
  EXPECT_NEAR(adversary_incorrect_prob(1.0, 500, 100, 20), 0.25, 1e-15);
  EXPECT_NEAR(adversary_incorrect_prob(0.8, 500, 100, 20), adversary_incorrect_prob_from_fraction(0.8, 0.25), 1e-15);
}

TEST(Manipulation, WorkedValues) {
  EXPECT_EQ(round_half_up_4dp(p_manipulate_specific(0.8, 100, 100, 20, 1)), "0.0028");
  EXPECT_LT(p_manipulate_specific(0.95, 2500, 100, 100, 1), 1e-4);
  EXPECT_DOUBLE_EQ(p_manipulate_specific(1.0, 0, 100, 20, 1), 0.0);
  EXPECT_DOUBLE_EQ(p_manipulate_any(0.0, 100), 0.0);
  EXPECT_EQ(round_half_up_4dp(p_manipulate_any(binomial_tail(20, 0.2, 11), 100)), "0.0548");
  EXPECT_GT(p_manipulate_any(0.1275, 100), 0.999);
}

TEST(Manipulation, Monotonicity) {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const double q = 0.5 + 0.49 * rng.uniform01();
    const Money dv = 2 * rng.uniform_between(1, 60);
    const std::size_t list = static_cast<std::size_t>(rng.uniform_between(2, 200));
    const Money n = rng.uniform_between(0, static_cast<Money>(list) * dv / 2);
    const double base = p_manipulate_specific(q, n, list, dv, 1);
    EXPECT_GE(p_manipulate_specific(q, n + dv, list, dv, 1), base - 1e-15);
    EXPECT_LE(p_manipulate_specific(std::min(1.0, q + 0.01), n, list, dv, 1), base + 1e-15);
    EXPECT_LE(p_manipulate_specific(q, n, list + 10, dv, 1), base + 1e-15);
    // Strict majority over an even number of votes: once the per-vote error
    // exceeds 1/3, shrinking tie mass can outweigh the longer vote.
    if (adversary_incorrect_prob(q, n, list, dv) <= 1.0 / 3.0) {
      EXPECT_LE(p_manipulate_specific(q, n, list, dv + 2, 1), base + 1e-15);
    }
  }
}

TEST(Manipulation, DecisionStakeNotMonotoneNearOneHalf) {
  // Per-vote error 0.4: two votes need 2 wrong (0.16), four votes need 3 wrong (0.1792).
  EXPECT_NEAR(binomial_tail(2, 0.4, 2), 0.16, 1e-12);
  EXPECT_NEAR(binomial_tail(4, 0.4, 3), 0.1792, 1e-12);
  EXPECT_LT(p_manipulate_specific(0.6, 0, 100, 2, 1), p_manipulate_specific(0.6, 0, 100, 4, 1));
}

TEST(Manipulation, AnyDominatesSpecific) {
  for (double p : {1e-9, 1e-4, 0.01, 0.3, 0.7}) {
    EXPECT_DOUBLE_EQ(p_manipulate_any(p, 1), p);
    for (std::size_t list : {2u, 10u, 100u}) EXPECT_GT(p_manipulate_any(p, list), p);
  }
  EXPECT_DOUBLE_EQ(p_manipulate_any(1.0, 100), 1.0);
}

TEST(Manipulation, VanishesAlongDoublingSequence) {
  double previous = 1.0;
  for (Money dv = 20; dv <= 20 * 64; dv *= 2) {
    const double p = p_manipulate_specific(0.8, 100, 100, dv, 1);
    EXPECT_LT(p, previous);
    previous = p;
  }
  EXPECT_LT(previous, 1e-12);
}

TEST(BountyCap, WorkedValuesAndInverse) {
  EXPECT_EQ(max_bounty(0.8, 1000), 250);
  EXPECT_EQ(max_bounty(0.5, 1000), 1000);
  EXPECT_DOUBLE_EQ(min_accuracy(250, 1000), 0.8);
  for (Money dv : {20, 100, 1000, 4096}) {
    for (Money b = 1; b <= 3 * dv; b += dv / 10 + 1) {
      EXPECT_EQ(max_bounty(min_accuracy(b, dv), dv), b) << b << " " << dv;
    }
  }
}

TEST(PrintedValue, ComparisonRules) {
  EXPECT_TRUE(PrintedValue::fixed("0.1275").matches(0.12745));
  EXPECT_FALSE(PrintedValue::fixed("0.1275").matches(0.12755));
  EXPECT_TRUE(PrintedValue::below_power(-5).matches(9.9e-5));
  EXPECT_FALSE(PrintedValue::below_power(-5).matches(1.1e-4));
  EXPECT_TRUE(PrintedValue::approx_one().matches(0.9995));
  EXPECT_FALSE(PrintedValue::approx_one().matches(0.998));
  EXPECT_TRUE(PrintedValue::approx_zero().matches(1e-13));
  EXPECT_EQ(round_half_up_4dp(0.00006), "0.0001");
  EXPECT_EQ(round_half_up_4dp(0.81556), "0.8156");
}

TEST(Table, FixtureHasTwelveRows) {
  const auto& rows = table5_fixture();
  ASSERT_EQ(rows.size(), 12u);
  const auto computed = manipulation_table(std::vector<ManipulationParams>{rows.front().params});
  EXPECT_EQ(round_half_up_4dp(computed.front().p_specific), "0.0006");
  EXPECT_EQ(round_half_up_4dp(computed.front().p_any), "0.0548");
  EXPECT_TRUE(manipulation_table({}).empty());
}

TEST(Table, SpecificColumnMatchesEverywhere) {
  for (const auto& check : check_published_table()) EXPECT_TRUE(check.specific_ok) << check.published.p_specific.text();
}

}  // namespace
}  // namespace oraclesim::analysis
