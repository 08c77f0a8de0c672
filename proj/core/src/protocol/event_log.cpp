#include "oraclesim/protocol/event_log.hpp"

#include <istream>
#include <ostream>

#include "oraclesim/protocol/errors.hpp"

namespace oraclesim {

using nlohmann::json;

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string str(Outcome o) { return std::string(to_string(o)); }

ErrorCode parse_error_code(const std::string& s) {
  for (int i = 0; i < kErrorCodeCount; ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (to_string(code) == s) return code;
  }
  throw std::invalid_argument("unknown error code '" + s + "'");
}

}  // namespace

json event_to_json(const Event& e) {
  return std::visit(
      Overloaded{
          [](const DepositEvent& d) {
            return json{{"type", "deposit"}, {"player", to_underlying(d.player)}, {"amount", d.amount}};
          },
          [](const FundPoolsEvent& f) {
            return json{{"type", "fund-pools"}, {"r_true", f.r_true}, {"r_false", f.r_false}};
          },
          [](const SubmitEvent& s) {
            return json{{"type", "submit"},
                        {"proposition", to_underlying(s.proposition)},
                        {"truth", std::string(to_string(s.truth))},
                        {"bounty", s.bounty}};
          },
          [](const VoteRequestEvent& r) {
            return json{{"type", "vote-request"},
                        {"assignment", to_underlying(r.assignment)},
                        {"player", to_underlying(r.player)},
                        {"stake", r.stake},
                        {"proposition", to_underlying(r.proposition)}};
          },
          [](const VoteCommitEvent& c) {
            return json{{"type", "vote-commit"}, {"assignment", to_underlying(c.assignment)}, {"digest", to_hex(c.digest)}};
          },
          [](const VoteRevealEvent& r) {
            json j{{"type", "vote-reveal"},
                   {"assignment", to_underlying(r.assignment)},
                   {"value", str(r.value)},
                   {"nonce", to_hex(r.nonce)}};
            if (r.error) j["error"] = std::string(to_string(*r.error));
            return j;
          },
          [](const CertCommitEvent& c) {
            return json{{"type", "cert-commit"},
                        {"certification", to_underlying(c.certification)},
                        {"player", to_underlying(c.player)},
                        {"proposition", to_underlying(c.proposition)},
                        {"stake", c.stake},
                        {"digest", to_hex(c.digest)}};
          },
          [](const CertRevealEvent& r) {
            json j{{"type", "cert-reveal"},
                   {"certification", to_underlying(r.certification)},
                   {"value", str(r.value)},
                   {"nonce", to_hex(r.nonce)}};
            if (r.error) j["error"] = std::string(to_string(*r.error));
            return j;
          },
          [](const SettleEvent& s) {
            return json{{"type", "settle"},
                        {"proposition", to_underlying(s.proposition)},
                        {"voting", str(s.voting)},
                        {"certification", str(s.certification)},
                        {"game", str(s.game)},
                        {"oracle", str(s.oracle)},
                        {"pool_drain", s.pool_drain},
                        {"pool_transfer", s.pool_transfer},
                        {"r_true", s.r_true_after},
                        {"r_false", s.r_false_after}};
          },
      },
      e);
}

Event event_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  auto error_of = [&j]() -> std::optional<ErrorCode> {
    if (!j.contains("error")) return std::nullopt;
    return parse_error_code(j.at("error").get<std::string>());
  };
  if (type == "deposit") return DepositEvent{PlayerId{j.at("player").get<std::uint32_t>()}, j.at("amount").get<Money>()};
  if (type == "fund-pools") return FundPoolsEvent{j.at("r_true").get<Money>(), j.at("r_false").get<Money>()};
  if (type == "submit") {
    return SubmitEvent{PropositionId{j.at("proposition").get<std::uint64_t>()},
                       parse_truth(j.at("truth").get<std::string>()), j.at("bounty").get<Money>()};
  }
  if (type == "vote-request") {
    return VoteRequestEvent{AssignmentId{j.at("assignment").get<std::uint64_t>()},
                            PlayerId{j.at("player").get<std::uint32_t>()}, j.at("stake").get<Money>(),
                            PropositionId{j.at("proposition").get<std::uint64_t>()}};
  }
  if (type == "vote-commit") {
    return VoteCommitEvent{AssignmentId{j.at("assignment").get<std::uint64_t>()},
                           bytes32_from_hex(j.at("digest").get<std::string>())};
  }
  if (type == "vote-reveal") {
    return VoteRevealEvent{AssignmentId{j.at("assignment").get<std::uint64_t>()},
                           parse_outcome(j.at("value").get<std::string>()),
                           bytes32_from_hex(j.at("nonce").get<std::string>()), error_of()};
  }
  if (type == "cert-commit") {
    return CertCommitEvent{CertificationId{j.at("certification").get<std::uint64_t>()},
                           PlayerId{j.at("player").get<std::uint32_t>()},
                           PropositionId{j.at("proposition").get<std::uint64_t>()}, j.at("stake").get<Money>(),
                           bytes32_from_hex(j.at("digest").get<std::string>())};
  }
  if (type == "cert-reveal") {
    return CertRevealEvent{CertificationId{j.at("certification").get<std::uint64_t>()},
                           parse_outcome(j.at("value").get<std::string>()),
                           bytes32_from_hex(j.at("nonce").get<std::string>()), error_of()};
  }
  if (type == "settle") {
    return SettleEvent{PropositionId{j.at("proposition").get<std::uint64_t>()},
                       parse_outcome(j.at("voting").get<std::string>()),
                       parse_outcome(j.at("certification").get<std::string>()),
                       parse_outcome(j.at("game").get<std::string>()),
                       parse_outcome(j.at("oracle").get<std::string>()),
                       j.at("pool_drain").get<Money>(),
                       j.at("pool_transfer").get<Money>(),
                       j.at("r_true").get<Money>(),
                       j.at("r_false").get<Money>()};
  }
  throw std::invalid_argument("unknown event type '" + type + "'");
}

std::string event_to_line(const Event& e) { return event_to_json(e).dump(); }

Game::Observer ndjson_writer(std::ostream& out) {
  return [&out](const Event& e) { out << event_to_line(e) << '\n'; };
}

namespace {

class Replayer {
 public:
  explicit Replayer(const SystemParams& params) : outcome_{Game(params), {}, 0} {}

  void apply(std::size_t line, const Event& e) {
    std::visit(
        Overloaded{
            [&](const DepositEvent& d) { game().deposit(d.player, d.amount); },
            [&](const FundPoolsEvent& f) { game().fund_pools(f.r_true, f.r_false); },
            [&](const SubmitEvent& s) {
              expect(line, game().submit_proposition(s.truth, s.bounty) == s.proposition, "proposition id");
            },
            [&](const VoteRequestEvent& r) {
              expect(line, game().request_vote_at(r.player, r.stake, r.proposition).assignment == r.assignment,
                     "assignment id");
            },
            [&](const VoteCommitEvent& c) { game().commit_vote(c.assignment, c.digest); },
            [&](const VoteRevealEvent& r) {
              expect_error(line, r.error, [&] { game().reveal_vote(r.assignment, r.value, r.nonce); });
            },
            [&](const CertCommitEvent& c) {
              expect(line,
                     game().commit_certification(c.player, c.proposition, c.stake, c.digest) == c.certification,
                     "certification id");
            },
            [&](const CertRevealEvent& r) {
              expect_error(line, r.error, [&] { game().reveal_certification(r.certification, r.value, r.nonce); });
            },
            [&](const SettleEvent& s) {
              GameResult res = game().settle(s.proposition);
              expect(line,
                     res.voting == s.voting && res.certification == s.certification && res.game == s.game &&
                         res.oracle == s.oracle && res.pool_drain == s.pool_drain &&
                         res.pool_transfer == s.pool_transfer && res.pools_after.r_true == s.r_true_after &&
                         res.pools_after.r_false == s.r_false_after,
                     "settlement result");
              outcome_.results.push_back(std::move(res));
            },
        },
        e);
    ++outcome_.events;
  }

  ReplayOutcome finish() { return std::move(outcome_); }

 private:
  Game& game() { return outcome_.game; }

  static void expect(std::size_t line, bool ok, const char* what) {
    if (!ok) throw ReplayError(line, std::string("replayed ") + what + " differs from the log");
  }

  template <typename F>
  static void expect_error(std::size_t line, std::optional<ErrorCode> recorded, F&& op) {
    try {
      op();
    } catch (const ProtocolError& err) {
      if (recorded && err.code() == *recorded) return;
      throw ReplayError(line, std::string("unexpected ") + err.what());
    }
    if (recorded) throw ReplayError(line, "recorded failure did not reproduce");
  }

  ReplayOutcome outcome_;
};

}  // namespace

ReplayOutcome replay(const SystemParams& params, std::istream& log) {
  Replayer r(params);
  std::string text;
  std::size_t line = 0;
  while (std::getline(log, text)) {
    ++line;
    if (text.empty()) continue;
    Event e;
    try {
      e = event_from_json(json::parse(text));
    } catch (const std::exception& ex) {
      throw ReplayError(line, ex.what());
    }
    try {
      r.apply(line, e);
    } catch (const ReplayError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ReplayError(line, ex.what());
    }
  }
  return r.finish();
}

}  // namespace oraclesim
