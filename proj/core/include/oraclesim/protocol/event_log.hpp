#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oraclesim/protocol/events.hpp"
#include "oraclesim/protocol/game.hpp"

namespace oraclesim {

// Newline-delimited JSON, one object per event, money as integers.
//
//   {"type":"submit","proposition":0,"truth":"T","bounty":100}
//   {"type":"vote-request","assignment":0,"player":3,"stake":1,"proposition":0}
//   {"type":"vote-commit","assignment":0,"digest":"<64 hex>"}
//   {"type":"vote-reveal","assignment":0,"value":"T","nonce":"<64 hex>"}
//   {"type":"cert-commit","certification":0,"player":7,"proposition":0,"stake":10,"digest":"..."}
//   {"type":"cert-reveal","certification":0,"value":"F","nonce":"..."}
//   {"type":"settle","proposition":0,"voting":"T","certification":"U",...}
//
// plus "deposit" and "fund-pools" records for money entering the system.
// A reveal rejected with DigestMismatch carries "error":"DigestMismatch".

nlohmann::json event_to_json(const Event& e);
Event event_from_json(const nlohmann::json& j);

std::string event_to_line(const Event& e);

/// Observer that appends one line per event to a stream.
Game::Observer ndjson_writer(std::ostream& out);

class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t line, const std::string& what)
      : std::runtime_error("event log line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ReplayOutcome {
  Game game;
  std::vector<GameResult> results;
  std::size_t events = 0;
};

/// Re-applies a log to a fresh game. Recorded draws are honoured, recorded
/// failures must fail the same way, and every settle record must match the
/// recomputed settlement.
ReplayOutcome replay(const SystemParams& params, std::istream& log);

}  // namespace oraclesim
