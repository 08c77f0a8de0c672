#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "oraclesim/protocol/digest.hpp"
#include "oraclesim/protocol/events.hpp"
#include "oraclesim/protocol/types.hpp"
#include "oraclesim/rng.hpp"

namespace oraclesim {

struct VoteStake {
  Money on_true = 0;
  Money on_false = 0;
  Money on_unknown = 0;

  Money total() const noexcept { return on_true + on_false + on_unknown; }
  friend bool operator==(const VoteStake&, const VoteStake&) = default;
};

struct CertStake {
  Money on_true = 0;
  Money on_false = 0;

  Money total() const noexcept { return on_true + on_false; }
  friend bool operator==(const CertStake&, const CertStake&) = default;
};

enum class PropositionStatus : std::uint8_t { Open, Decided };

struct Proposition {
  PropositionId id{};
  TruthValue truth = TruthValue::True;
  Money bounty = 0;
  std::map<PlayerId, VoteStake> votes;
  std::map<PlayerId, CertStake> certifications;
  PropositionStatus status = PropositionStatus::Open;
};

/// Sums the revealed ledgers of one proposition.
Totals compute_totals(const Proposition& p);

struct VoteAssignment {
  AssignmentId assignment;
  PropositionId proposition;
};

struct PlayerDelta {
  Money r_v = 0;
  Money r_c = 0;

  friend bool operator==(const PlayerDelta&, const PlayerDelta&) = default;
};

struct GameResult {
  PropositionId proposition{};
  TruthValue truth = TruthValue::True;
  Money bounty = 0;
  Totals totals;
  Outcome voting = Outcome::Unknown;
  Outcome certification = Outcome::Unknown;
  Outcome game = Outcome::Unknown;
  Outcome oracle = Outcome::Unknown;
  double confidence = 0.5;
  std::map<PlayerId, PlayerDelta> deltas;
  Money pool_drain = 0;     // R_b / tau taken from the pool of the voting outcome
  Money pool_transfer = 0;  // part of the drain moved to the opposite pool
  Money bounty_paid = 0;    // bounty distributed to winning voters
  Money forfeited = 0;      // unrevealed commitments forfeited at settlement
  Money routed_true = 0;    // sink residue routed into R_T
  Money routed_false = 0;   // sink residue routed into R_F
  RewardPools pools_after;

  Money delta_sum() const noexcept;
};

/// Deterministic voting-game instance: one proposition list, the
/// player ledger, both certifier reward pools and every pending commitment.
///
/// Money is conserved exactly: balances + escrow + pools + sink + outstanding
/// bounties always equals the sum of deposits, pool funding and bounties
/// injected so far. settle() re-checks this and throws std::logic_error if
/// it ever fails.
class Game {
 public:
  using Observer = std::function<void(const Event&)>;

  explicit Game(SystemParams params);

  const SystemParams& params() const noexcept { return params_; }

  /// Receives every accepted transition, in order. Used for the event log.
  void set_observer(Observer observer) { observer_ = std::move(observer); }

  // Money entering the system.
  void deposit(PlayerId player, Money amount);
  void fund_pools(Money r_true, Money r_false);

  PropositionId submit_proposition(TruthValue truth, Money bounty);

  /// Escrows the stake, then draws the proposition uniformly among open ones.
  VoteAssignment request_vote(PlayerId player, Money stake, Rng& rng);
  /// Same as request_vote with the draw already made; replay entry point.
  VoteAssignment request_vote_at(PlayerId player, Money stake, PropositionId proposition);
  void commit_vote(AssignmentId assignment, const Digest& digest);
  void reveal_vote(AssignmentId assignment, Position value, const Nonce& nonce);

  CertificationId commit_certification(PlayerId player, PropositionId proposition, Money stake,
                                       const Digest& digest);
  void reveal_certification(CertificationId certification, Position value, const Nonce& nonce);

  Totals totals(PropositionId proposition) const;
  bool check_decision(PropositionId proposition) const;
  /// Open propositions whose voting stake has reached D_v, in list order.
  std::vector<PropositionId> decidable() const;

  GameResult settle(PropositionId proposition);

  // Inspection.
  Money balance(PlayerId player) const;
  const std::map<PlayerId, Money>& balances() const noexcept { return balances_; }
  Money escrow() const noexcept { return escrow_; }
  const RewardPools& pools() const noexcept { return pools_; }
  Money sink() const noexcept { return sink_; }
  Money outstanding_bounties() const noexcept { return outstanding_bounties_; }
  Money injected() const noexcept { return injected_; }
  Money total_money() const;
  /// Recomputes the balance total from the per-player map (O(players)).
  Money audited_balance_total() const;
  Money balance_total() const noexcept { return balance_total_; }

  std::size_t open_count() const noexcept { return open_order_.size(); }
  const std::vector<PropositionId>& open_propositions() const noexcept { return open_order_; }
  const Proposition& proposition(PropositionId id) const;
  bool is_open(PropositionId id) const { return propositions_.contains(id); }

 private:
  struct VoteTicket {
    PlayerId player;
    PropositionId proposition;
    Money stake;
    std::optional<Digest> digest;
    bool revealed = false;
  };

  struct CertTicket {
    PlayerId player;
    PropositionId proposition;
    Money stake;
    Digest digest;
    bool revealed = false;
  };

  struct OpenEntry {
    Proposition proposition;
    Totals totals;  // maintained incrementally on every reveal
    std::vector<AssignmentId> assignments;
    std::vector<CertificationId> certifications;
  };

  void emit(const Event& e) const {
    if (observer_) observer_(e);
  }
  OpenEntry& open_entry(PropositionId id);
  const OpenEntry& open_entry(PropositionId id) const;
  void forfeit(Money stake);
  Money& balance_ref(PlayerId player, Money required);
  void check_conservation(const char* where) const;

  SystemParams params_;
  Observer observer_;

  std::map<PlayerId, Money> balances_;
  Money balance_total_ = 0;
  Money escrow_ = 0;
  RewardPools pools_;
  Money sink_ = 0;
  Money outstanding_bounties_ = 0;
  Money injected_ = 0;

  std::map<PropositionId, OpenEntry> propositions_;
  std::vector<PropositionId> open_order_;
  std::set<PropositionId> ready_;  // open and at or past D_v; ids ascend in list order
  std::map<AssignmentId, VoteTicket> assignments_;
  std::map<CertificationId, CertTicket> certifications_;

  std::uint64_t next_proposition_ = 0;
  std::uint64_t next_assignment_ = 0;
  std::uint64_t next_certification_ = 0;
};

}  // namespace oraclesim
