#include "oraclesim/protocol/game.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "oraclesim/protocol/errors.hpp"
#include "oraclesim/protocol/outcomes.hpp"

namespace oraclesim {

namespace {

std::string id_text(PropositionId id) { return "proposition " + std::to_string(to_underlying(id)); }

__extension__ using Wide = __int128;

Money mul_div(Money a, Money b, Money c) {
  return static_cast<Money>(static_cast<Wide>(a) * static_cast<Wide>(b) / static_cast<Wide>(c));
}

}  // namespace

Totals compute_totals(const Proposition& p) {
  Totals t;
  for (const auto& [player, v] : p.votes) {
    t.s_tot_true += v.on_true;
    t.s_tot_false += v.on_false;
    t.s_tot_unknown += v.on_unknown;
  }
  for (const auto& [player, c] : p.certifications) {
    t.sigma_tot_true += c.on_true;
    t.sigma_tot_false += c.on_false;
  }
  return t;
}

Money GameResult::delta_sum() const noexcept {
  Money sum = 0;
  for (const auto& [player, d] : deltas) sum += d.r_v + d.r_c;
  return sum;
}

Game::Game(SystemParams params) : params_(params) { params_.validate(); }

void Game::deposit(PlayerId player, Money amount) {
  if (amount <= 0) throw ProtocolError(ErrorCode::NonPositiveStake, "deposit must be positive");
  balances_[player] += amount;
  balance_total_ += amount;
  injected_ += amount;
  emit(DepositEvent{player, amount});
}

void Game::fund_pools(Money r_true, Money r_false) {
  if (r_true < 0 || r_false < 0) throw ProtocolError(ErrorCode::NonPositiveStake, "pool funding must be non-negative");
  pools_.r_true += r_true;
  pools_.r_false += r_false;
  injected_ += r_true + r_false;
  emit(FundPoolsEvent{r_true, r_false});
}

PropositionId Game::submit_proposition(TruthValue truth, Money bounty) {
  if (open_order_.size() >= params_.list_size) {
    throw ProtocolError(ErrorCode::ListFull, std::to_string(params_.list_size) + " propositions already open");
  }
  if (bounty <= 0) throw ProtocolError(ErrorCode::NonPositiveBounty, "bounty must be positive");
  if (truth == TruthValue::Undecidable && !params_.tri_state) {
    throw ProtocolError(ErrorCode::InvalidTruth, "undecidable propositions require tri-state mode");
  }
  const PropositionId id{next_proposition_++};
  OpenEntry entry;
  entry.proposition.id = id;
  entry.proposition.truth = truth;
  entry.proposition.bounty = bounty;
  propositions_.emplace(id, std::move(entry));
  open_order_.push_back(id);
  outstanding_bounties_ += bounty;
  injected_ += bounty;
  emit(SubmitEvent{id, truth, bounty});
  return id;
}

Money& Game::balance_ref(PlayerId player, Money required) {
  auto it = balances_.find(player);
  if (it == balances_.end() || it->second < required) {
    throw ProtocolError(ErrorCode::InsufficientBalance,
                        "player " + std::to_string(to_underlying(player)) + " cannot cover " +
                            std::to_string(required));
  }
  return it->second;
}

Game::OpenEntry& Game::open_entry(PropositionId id) {
  auto it = propositions_.find(id);
  if (it == propositions_.end()) throw ProtocolError(ErrorCode::UnknownProposition, id_text(id) + " is not open");
  return it->second;
}

const Game::OpenEntry& Game::open_entry(PropositionId id) const {
  auto it = propositions_.find(id);
  if (it == propositions_.end()) throw ProtocolError(ErrorCode::UnknownProposition, id_text(id) + " is not open");
  return it->second;
}

VoteAssignment Game::request_vote(PlayerId player, Money stake, Rng& rng) {
  if (stake <= 0) throw ProtocolError(ErrorCode::NonPositiveStake, "vote stake must be positive");
  if (stake > params_.s_max) {
    throw ProtocolError(ErrorCode::StakeTooLarge,
                        std::to_string(stake) + " exceeds s_max " + std::to_string(params_.s_max));
  }
  Money& bal = balance_ref(player, stake);
  if (open_order_.empty()) throw ProtocolError(ErrorCode::NoOpenPropositions, "proposition list is empty");

  // The stake is locked before the voter learns which proposition she drew.
  bal -= stake;
  balance_total_ -= stake;
  escrow_ += stake;
  const PropositionId drawn = open_order_[rng.uniform_below(open_order_.size())];

  const AssignmentId aid{next_assignment_++};
  assignments_.emplace(aid, VoteTicket{player, drawn, stake, std::nullopt, false});
  propositions_.at(drawn).assignments.push_back(aid);
  emit(VoteRequestEvent{aid, player, stake, drawn});
  return {aid, drawn};
}

VoteAssignment Game::request_vote_at(PlayerId player, Money stake, PropositionId proposition) {
  if (stake <= 0) throw ProtocolError(ErrorCode::NonPositiveStake, "vote stake must be positive");
  if (stake > params_.s_max) {
    throw ProtocolError(ErrorCode::StakeTooLarge,
                        std::to_string(stake) + " exceeds s_max " + std::to_string(params_.s_max));
  }
  Money& bal = balance_ref(player, stake);
  OpenEntry& entry = open_entry(proposition);

  bal -= stake;
  balance_total_ -= stake;
  escrow_ += stake;
  const AssignmentId aid{next_assignment_++};
  assignments_.emplace(aid, VoteTicket{player, proposition, stake, std::nullopt, false});
  entry.assignments.push_back(aid);
  emit(VoteRequestEvent{aid, player, stake, proposition});
  return {aid, proposition};
}

void Game::commit_vote(AssignmentId assignment, const Digest& digest) {
  auto it = assignments_.find(assignment);
  if (it == assignments_.end()) {
    throw ProtocolError(ErrorCode::UnknownAssignment, "assignment " + std::to_string(to_underlying(assignment)));
  }
  if (it->second.digest) throw ProtocolError(ErrorCode::AlreadyCommitted, "assignment already holds a commitment");
  it->second.digest = digest;
  emit(VoteCommitEvent{assignment, digest});
}

void Game::forfeit(Money stake) {
  escrow_ -= stake;
  sink_ += stake;
}

void Game::reveal_vote(AssignmentId assignment, Position value, const Nonce& nonce) {
  auto it = assignments_.find(assignment);
  if (it == assignments_.end()) {
    throw ProtocolError(ErrorCode::UnknownAssignment, "assignment " + std::to_string(to_underlying(assignment)));
  }
  VoteTicket& ticket = it->second;
  if (!ticket.digest) throw ProtocolError(ErrorCode::NotCommitted, "reveal before commit");
  if (ticket.revealed) throw ProtocolError(ErrorCode::AlreadyRevealed, "vote already revealed");
  if (value == Outcome::Unknown && !params_.tri_state) {
    throw ProtocolError(ErrorCode::InvalidPosition, "unknown votes require tri-state mode");
  }
  if (commitment_digest(value, nonce) != *ticket.digest) {
    forfeit(ticket.stake);
    assignments_.erase(it);
    emit(VoteRevealEvent{assignment, value, nonce, ErrorCode::DigestMismatch});
    throw ProtocolError(ErrorCode::DigestMismatch, "vote reveal does not match its commitment; stake forfeited");
  }

  OpenEntry& entry = propositions_.at(ticket.proposition);
  VoteStake& ledger = entry.proposition.votes[ticket.player];
  switch (value) {
    case Outcome::True:
      ledger.on_true += ticket.stake;
      entry.totals.s_tot_true += ticket.stake;
      break;
    case Outcome::False:
      ledger.on_false += ticket.stake;
      entry.totals.s_tot_false += ticket.stake;
      break;
    case Outcome::Unknown:
      ledger.on_unknown += ticket.stake;
      entry.totals.s_tot_unknown += ticket.stake;
      break;
  }
  ticket.revealed = true;
  if (entry.totals.voting_stake() >= params_.decision_stake) ready_.insert(ticket.proposition);
  emit(VoteRevealEvent{assignment, value, nonce, std::nullopt});
}

CertificationId Game::commit_certification(PlayerId player, PropositionId proposition, Money stake,
                                           const Digest& digest) {
  if (stake < params_.sigma_min) {
    throw ProtocolError(ErrorCode::StakeTooSmall,
                        std::to_string(stake) + " is below sigma_min " + std::to_string(params_.sigma_min));
  }
  OpenEntry& entry = open_entry(proposition);
  Money& bal = balance_ref(player, stake);

  bal -= stake;
  balance_total_ -= stake;
  escrow_ += stake;
  const CertificationId cid{next_certification_++};
  certifications_.emplace(cid, CertTicket{player, proposition, stake, digest, false});
  entry.certifications.push_back(cid);
  emit(CertCommitEvent{cid, player, proposition, stake, digest});
  return cid;
}

void Game::reveal_certification(CertificationId certification, Position value, const Nonce& nonce) {
  auto it = certifications_.find(certification);
  if (it == certifications_.end()) {
    throw ProtocolError(ErrorCode::UnknownCertification,
                        "certification " + std::to_string(to_underlying(certification)));
  }
  CertTicket& ticket = it->second;
  if (ticket.revealed) throw ProtocolError(ErrorCode::AlreadyRevealed, "certification already revealed");
  if (value == Outcome::Unknown) {
    throw ProtocolError(ErrorCode::InvalidPosition, "certifiers abstain instead of certifying unknown");
  }
  if (commitment_digest(value, nonce) != ticket.digest) {
    forfeit(ticket.stake);
    certifications_.erase(it);
    emit(CertRevealEvent{certification, value, nonce, ErrorCode::DigestMismatch});
    throw ProtocolError(ErrorCode::DigestMismatch,
                        "certification reveal does not match its commitment; stake forfeited");
  }

  OpenEntry& entry = propositions_.at(ticket.proposition);
  CertStake& ledger = entry.proposition.certifications[ticket.player];
  if (value == Outcome::True) {
    ledger.on_true += ticket.stake;
    entry.totals.sigma_tot_true += ticket.stake;
  } else {
    ledger.on_false += ticket.stake;
    entry.totals.sigma_tot_false += ticket.stake;
  }
  ticket.revealed = true;
  emit(CertRevealEvent{certification, value, nonce, std::nullopt});
}

Totals Game::totals(PropositionId proposition) const { return open_entry(proposition).totals; }

bool Game::check_decision(PropositionId proposition) const {
  return open_entry(proposition).totals.voting_stake() >= params_.decision_stake;
}

std::vector<PropositionId> Game::decidable() const {
  return {ready_.begin(), ready_.end()};
}

const Proposition& Game::proposition(PropositionId id) const { return open_entry(id).proposition; }

Money Game::balance(PlayerId player) const {
  auto it = balances_.find(player);
  return it == balances_.end() ? 0 : it->second;
}

Money Game::total_money() const {
  return balance_total_ + escrow_ + pools_.total() + sink_ + outstanding_bounties_;
}

Money Game::audited_balance_total() const {
  Money sum = 0;
  for (const auto& [player, b] : balances_) sum += b;
  return sum;
}

void Game::check_conservation(const char* where) const {
  if (total_money() != injected_) {
    throw std::logic_error(std::string("money conservation violated in ") + where + ": total " +
                           std::to_string(total_money()) + " != injected " + std::to_string(injected_));
  }
  if (pools_.r_true < 0 || pools_.r_false < 0 || escrow_ < 0 || sink_ < 0) {
    throw std::logic_error(std::string("negative ledger bucket in ") + where);
  }
}

GameResult Game::settle(PropositionId id) {
  OpenEntry& entry = open_entry(id);
  if (entry.totals.voting_stake() < params_.decision_stake) {
    throw ProtocolError(ErrorCode::NotDecidable, id_text(id) + " has not reached the decision stake");
  }
  Proposition& prop = entry.proposition;

  GameResult result;
  result.proposition = id;
  result.truth = prop.truth;
  result.bounty = prop.bounty;

  // Commitments still sealed when the proposition is decided are forfeited.
  for (AssignmentId aid : entry.assignments) {
    auto it = assignments_.find(aid);
    if (it == assignments_.end()) continue;
    if (!it->second.revealed) {
      forfeit(it->second.stake);
      result.forfeited += it->second.stake;
    }
    assignments_.erase(it);
  }
  for (CertificationId cid : entry.certifications) {
    auto it = certifications_.find(cid);
    if (it == certifications_.end()) continue;
    if (!it->second.revealed) {
      forfeit(it->second.stake);
      result.forfeited += it->second.stake;
    }
    certifications_.erase(it);
  }

  const Money retained_before = pools_.total() + sink_;
  const Totals& t = entry.totals;
  result.totals = t;
  result.voting = voting_outcome(t, params_.majority_threshold);
  result.certification = certification_outcome(t, params_.majority_threshold);
  result.game = game_outcome(result.voting, result.certification);
  result.oracle = oracle_outcome(result.voting, result.certification);
  result.confidence = oracle_confidence(t);
  const Outcome game = result.game;

  // Voters: winners split the bounty pro rata, losers forfeit their opposing stake.
  for (const auto& [player, vs] : prop.votes) {
    escrow_ -= vs.total();
    Money r_v = 0;
    if (game == Outcome::True) {
      const Money share = mul_div(vs.on_true, prop.bounty, t.s_tot_true);
      result.bounty_paid += share;
      sink_ += vs.on_false;
      r_v = share - vs.on_false;
    } else if (game == Outcome::False) {
      const Money share = mul_div(vs.on_false, prop.bounty, t.s_tot_false);
      result.bounty_paid += share;
      sink_ += vs.on_true;
      r_v = share - vs.on_true;
    }
    balances_[player] += vs.total() + r_v;
    balance_total_ += vs.total() + r_v;
    result.deltas[player].r_v += r_v;
  }
  sink_ += prop.bounty - result.bounty_paid;
  outstanding_bounties_ -= prop.bounty;

  // Pool drain: R_b / tau leaves the pool of the voting outcome. It pays the
  // certifiers when they agree with the voters, otherwise it moves across.
  Money certifier_paid = 0;
  if (result.voting != Outcome::Unknown) {
    const bool voted_true = result.voting == Outcome::True;
    Money& pool = voted_true ? pools_.r_true : pools_.r_false;
    Money& other = voted_true ? pools_.r_false : pools_.r_true;
    result.pool_drain = pool / params_.tau;
    pool -= result.pool_drain;
    if (result.certification != result.voting) {
      other += result.pool_drain;
      result.pool_transfer = result.pool_drain;
    }
  }

  for (const auto& [player, cs] : prop.certifications) {
    escrow_ -= cs.total();
    Money r_c = 0;
    if (game == Outcome::Unknown) {
      r_c = -cs.total();
      sink_ += cs.total();
    } else {
      const bool won_true = game == Outcome::True;
      const Money winning = won_true ? cs.on_true : cs.on_false;
      const Money losing = won_true ? cs.on_false : cs.on_true;
      const Money side_total = won_true ? t.sigma_tot_true : t.sigma_tot_false;
      const Money share = mul_div(winning, result.pool_drain, side_total);
      certifier_paid += share;
      sink_ += losing;
      r_c = share - losing;
      balances_[player] += cs.total() + r_c;
      balance_total_ += cs.total() + r_c;
    }
    result.deltas[player].r_c += r_c;
  }
  if (game != Outcome::Unknown) sink_ += result.pool_drain - certifier_paid;

  // Penalties, unclaimed bounty and rounding residue feed both pools equally.
  const Money half = sink_ / 2;
  pools_.r_true += half;
  pools_.r_false += half;
  sink_ -= 2 * half;
  result.routed_true = half;
  result.routed_false = half;
  result.pools_after = pools_;

  const Money retained_after = pools_.total() + sink_;
  if (result.delta_sum() + (retained_after - retained_before) != prop.bounty) {
    throw std::logic_error("settlement of " + id_text(id) + " does not balance");
  }

  prop.status = PropositionStatus::Decided;
  open_order_.erase(std::find(open_order_.begin(), open_order_.end(), id));
  propositions_.erase(id);
  ready_.erase(id);
  check_conservation("settle");

  emit(SettleEvent{id, result.voting, result.certification, result.game, result.oracle, result.pool_drain,
                   result.pool_transfer, pools_.r_true, pools_.r_false});
  return result;
}

}  // namespace oraclesim
