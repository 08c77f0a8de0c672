#include <gtest/gtest.h>

#include <array>

#include "oraclesim/protocol/outcomes.hpp"

namespace oraclesim {
namespace {

constexpr Outcome T = Outcome::True;
constexpr Outcome F = Outcome::False;
constexpr Outcome U = Outcome::Unknown;

Totals votes(Money t, Money f, Money u = 0) {
  Totals x;
  x.s_tot_true = t;
  x.s_tot_false = f;
  x.s_tot_unknown = u;
  return x;
}

Totals certs(Money t, Money f) {
  Totals x;
  x.sigma_tot_true = t;
  x.sigma_tot_false = f;
  return x;
}

TEST(VotingOutcome, SimpleMajority) {
  EXPECT_EQ(voting_outcome(votes(11, 9), 0.5), T);
  EXPECT_EQ(voting_outcome(votes(9, 11), 0.5), F);
  EXPECT_EQ(voting_outcome(votes(10, 10), 0.5), U);
  EXPECT_EQ(voting_outcome(votes(0, 0), 0.5), U);
  EXPECT_EQ(voting_outcome(votes(1, 0), 0.5), T);
  EXPECT_EQ(voting_outcome(votes(0, 1), 0.5), F);
}

TEST(VotingOutcome, SuperMajorityThreshold) {
  EXPECT_EQ(voting_outcome(votes(6, 4), 0.66), U);
  EXPECT_EQ(voting_outcome(votes(4, 6), 0.66), U);
  EXPECT_EQ(voting_outcome(votes(67, 33), 0.66), T);
  EXPECT_EQ(voting_outcome(votes(33, 67), 0.66), F);
  // Exactly at the threshold is not enough.
  EXPECT_EQ(voting_outcome(votes(66, 34), 0.66), U);
  EXPECT_EQ(voting_outcome(votes(3, 2), 0.6), U);
  EXPECT_EQ(voting_outcome(votes(30000001, 19999999), 0.6), T);
  EXPECT_EQ(voting_outcome(votes(3, 1), 0.75), U);
  EXPECT_EQ(voting_outcome(votes(4, 1), 0.75), T);
}

TEST(VotingOutcome, BoundarySweep) {
  for (Money n = 1; n <= 40; ++n) {
    for (Money t = 0; t <= n; ++t) {
      const Money f = n - t;
      const Outcome expected = t > f ? T : (f > t ? F : U);
      EXPECT_EQ(voting_outcome(votes(t, f), 0.5), expected) << t << " vs " << f;
    }
  }
}

TEST(VotingOutcome, TriStatePlurality) {
  EXPECT_EQ(voting_outcome(votes(3, 3, 4), 0.5), U);
  EXPECT_EQ(voting_outcome(votes(5, 3, 4), 0.5), T);
  EXPECT_EQ(voting_outcome(votes(3, 5, 4), 0.5), F);
  // A tie between Unknown and the leading side falls back to the two-way rule.
  EXPECT_EQ(voting_outcome(votes(4, 3, 4), 0.5), T);
  EXPECT_EQ(voting_outcome(votes(0, 0, 1), 0.5), U);
}

TEST(CertificationOutcome, Rules) {
  EXPECT_EQ(certification_outcome(certs(0, 0), 0.5), U);
  EXPECT_EQ(certification_outcome(certs(50, 10), 0.5), T);
  EXPECT_EQ(certification_outcome(certs(10, 50), 0.5), F);
  EXPECT_EQ(certification_outcome(certs(10, 10), 0.5), U);
  EXPECT_EQ(certification_outcome(certs(6, 4), 0.66), U);
  EXPECT_EQ(certification_outcome(certs(7, 3), 0.66), T);
}

TEST(CertificationOutcome, IgnoresVotingStake) {
  Totals t = votes(100, 0, 50);
  t.sigma_tot_false = 1;
  EXPECT_EQ(certification_outcome(t, 0.5), F);
}

TEST(GameOutcome, AllNineCells) {
  const std::array<Outcome, 3> all{T, F, U};
  for (Outcome v : all) {
    for (Outcome c : all) {
      const Outcome expected = (v == T && c == T) ? T : (v == F && c == F) ? F : U;
      EXPECT_EQ(game_outcome(v, c), expected);
    }
  }
}

TEST(OracleOutcome, AllNineCells) {
  struct Cell {
    Outcome v, c, expected;
  };
  const Cell table[] = {
      {T, T, T}, {T, F, U}, {T, U, T},
      {F, T, U}, {F, F, F}, {F, U, F},
      {U, T, U}, {U, F, U}, {U, U, U},
  };
  for (const auto& cell : table) EXPECT_EQ(oracle_outcome(cell.v, cell.c), cell.expected);
}

TEST(OracleConfidence, Values) {
  EXPECT_DOUBLE_EQ(oracle_confidence(votes(11, 9)), 0.55);
  EXPECT_DOUBLE_EQ(oracle_confidence(votes(0, 0)), 0.5);
  EXPECT_DOUBLE_EQ(oracle_confidence(votes(0, 0, 7)), 0.5);
  EXPECT_DOUBLE_EQ(oracle_confidence(votes(5, 0)), 1.0);
  EXPECT_DOUBLE_EQ(oracle_confidence(votes(0, 5)), 0.0);
}

TEST(OutcomeText, RoundTrip) {
  for (Outcome o : {T, F, U}) EXPECT_EQ(parse_outcome(to_string(o)), o);
  EXPECT_EQ(parse_outcome("true"), T);
  EXPECT_EQ(parse_outcome("unknown"), U);
  EXPECT_THROW(parse_outcome("maybe"), std::invalid_argument);
  EXPECT_EQ(negate(T), F);
  EXPECT_EQ(negate(U), U);
}

}  // namespace
}  // namespace oraclesim
