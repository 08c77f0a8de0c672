#include <gtest/gtest.h>

#include <sstream>

#include "oraclesim/protocol/event_log.hpp"

namespace oraclesim {
namespace {

struct Recorded {
  std::ostringstream log;
  std::vector<GameResult> results;
};

void play(Recorded& out, SystemParams p) {
  Game g(p);
  g.set_observer(ndjson_writer(out.log));
  Rng rng(9);
  g.fund_pools(100, 40);
  for (std::uint32_t i = 0; i < 6; ++i) g.deposit(PlayerId{i}, 500);
  for (int k = 0; k < 3; ++k) g.submit_proposition(k == 1 ? TruthValue::False : TruthValue::True, 12);
  for (int round = 0; round < 40; ++round) {
    for (std::uint32_t i = 0; i < 5; ++i) {
      const auto a = g.request_vote(PlayerId{i}, 1, rng);
      const Position v = rng.bernoulli(0.7) ? Position::True : Position::False;
      const Nonce n = rng.nonce();
      g.commit_vote(a.assignment, commitment_digest(v, n));
      try {
        g.reveal_vote(a.assignment, round % 7 == 3 && i == 2 ? negate(v) : v, n);
      } catch (const ProtocolError&) {
      }
    }
    const auto open = g.open_propositions();
    const Nonce n = rng.nonce();
    const auto c = g.commit_certification(PlayerId{5}, open.front(), 10, commitment_digest(Position::True, n));
    g.reveal_certification(c, Position::True, n);
    for (const auto prop : g.decidable()) {
      out.results.push_back(g.settle(prop));
      g.submit_proposition(TruthValue::True, 12);
    }
  }
}

TEST(EventLog, JsonRoundTripsEveryEventType) {
  Rng rng(1);
  const Nonce n = rng.nonce();
  const Digest d = commitment_digest(Position::True, n);
  const std::vector<Event> events{
      DepositEvent{PlayerId{3}, 50},
      FundPoolsEvent{10, 20},
      SubmitEvent{PropositionId{4}, TruthValue::Undecidable, 9},
      VoteRequestEvent{AssignmentId{1}, PlayerId{3}, 1, PropositionId{4}},
      VoteCommitEvent{AssignmentId{1}, d},
      VoteRevealEvent{AssignmentId{1}, Position::True, n, std::nullopt},
      VoteRevealEvent{AssignmentId{2}, Position::False, n, ErrorCode::DigestMismatch},
      CertCommitEvent{CertificationId{0}, PlayerId{7}, PropositionId{4}, 10, d},
      CertRevealEvent{CertificationId{0}, Position::False, n, std::nullopt},
      SettleEvent{PropositionId{4}, Outcome::True, Outcome::Unknown, Outcome::Unknown, Outcome::True, 3, 3, 7, 23},
  };
  for (const auto& e : events) {
    const Event back = event_from_json(nlohmann::json::parse(event_to_line(e)));
    EXPECT_EQ(event_to_line(back), event_to_line(e));
  }
}

TEST(EventLog, LineFormat) {
  const std::string line = event_to_line(SubmitEvent{PropositionId{0}, TruthValue::True, 100});
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j.at("type"), "submit");
  EXPECT_EQ(j.at("bounty"), 100);
  EXPECT_EQ(line.find('\n'), std::string::npos);
}

TEST(EventLog, ReplayReproducesSettlements) {
  SystemParams p;
  p.decision_stake = 5;
  p.list_size = 3;
  Recorded rec;
  play(rec, p);
  ASSERT_FALSE(rec.results.empty());

  std::istringstream in(rec.log.str());
  const ReplayOutcome r = replay(p, in);
  ASSERT_EQ(r.results.size(), rec.results.size());
  for (std::size_t i = 0; i < r.results.size(); ++i) {
    EXPECT_EQ(r.results[i].deltas, rec.results[i].deltas);
    EXPECT_EQ(r.results[i].pools_after, rec.results[i].pools_after);
  }
  EXPECT_EQ(r.game.total_money(), r.game.injected());
}

TEST(EventLog, ReplayDetectsTamperedSettlement) {
  SystemParams p;
  p.decision_stake = 5;
  p.list_size = 3;
  Recorded rec;
  play(rec, p);
  std::string text = rec.log.str();
  const auto pos = text.find("\"r_true\":");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + std::string("\"r_true\":").size(), "9");
  std::istringstream in(text);
  EXPECT_THROW(replay(p, in), ReplayError);
}

TEST(EventLog, ReplayReportsLineOfMalformedRecord) {
  std::istringstream in("{\"type\":\"deposit\",\"player\":0,\"amount\":5}\nnot json\n");
  try {
    replay(SystemParams{}, in);
    FAIL() << "malformed log accepted";
  } catch (const ReplayError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace oraclesim
