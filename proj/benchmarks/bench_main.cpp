#include <benchmark/benchmark.h>

#include "oraclesim/analysis/binomial.hpp"
#include "oraclesim/analysis/table5.hpp"
#include "oraclesim/protocol/digest.hpp"
#include "oraclesim/rng.hpp"
#include "oraclesim/sim/engine.hpp"

namespace {

using namespace oraclesim;

void BM_BinomialTail(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(analysis::binomial_tail(n, 0.2, n / 2 + 1));
}
BENCHMARK(BM_BinomialTail)->Arg(20)->Arg(100)->Arg(1000);

void BM_PublishedTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(analysis::check_published_table());
}
BENCHMARK(BM_PublishedTable);

void BM_CommitmentDigest(benchmark::State& state) {
  Rng rng(1);
  const Nonce n = rng.nonce();
  for (auto _ : state) benchmark::DoNotOptimize(commitment_digest(Position::True, n));
}
BENCHMARK(BM_CommitmentDigest);

void BM_SimulationRound(benchmark::State& state) {
  sim::ScenarioConfig c;
  c.params.s_max = 100;
  c.params.decision_stake = 2000;
  c.params.sigma_min = 100;
  c.stream.bounty_min = c.stream.bounty_max = 1000;
  c.initial_pools = {50000, 50000};
  c.rounds = 1u << 30;
  c.trajectory_stride = 0;
  sim::AgentGroup voters;
  voters.count = static_cast<std::size_t>(state.range(0));
  voters.profile.accuracy = 0.9;
  voters.profile.initial_balance = 1LL << 40;
  sim::AgentGroup certifiers;
  certifiers.count = voters.count / 10;
  certifiers.profile.voter = agents::parse_voter_tag("abstain");
  certifiers.profile.certifier.kind = agents::CertifierKind::PoolAware;
  certifiers.profile.initial_balance = 1LL << 40;
  c.agents = {voters, certifiers};
  sim::Simulation s(c, 1);
  for (auto _ : state) s.run_round();
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulationRound)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
