#include "oraclesim_cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oraclesim/analysis/binomial.hpp"
#include "oraclesim/analysis/table5.hpp"
#include "oraclesim/io/config.hpp"
#include "oraclesim/io/report.hpp"
#include "oraclesim/protocol/errors.hpp"
#include "oraclesim/protocol/event_log.hpp"
#include "oraclesim/sim/experiments.hpp"
#include "oraclesim/version.hpp"

namespace oraclesim::cli {

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<unsigned> threads;
  bool builtin_table = false;
  std::optional<std::size_t> decided;
  std::string events_path;
  std::string log_path;
};

io::RunConfig load(const Options& o) {
  io::RunConfig c = o.config_path.empty() ? io::RunConfig{} : io::load_config(o.config_path);
  if (o.seed) {
    c.scenario.master_seed = *o.seed;
    c.verify.master_seed = *o.seed;
  }
  if (o.trials) {
    c.scenario.trials = *o.trials;
    c.verify.trials = *o.trials;
  }
  if (o.threads) {
    c.scenario.threads = *o.threads;
    c.verify.threads = *o.threads;
  }
  if (o.decided) c.verify.decided_per_trial = *o.decided;
  return c;
}

std::vector<analysis::ManipulationParams> grid_of(const io::RunConfig& c) {
  if (c.grid) return *c.grid;
  std::vector<analysis::ManipulationParams> grid;
  for (const auto& row : analysis::table5_fixture()) grid.push_back(row.params);
  return grid;
}

void require_agents(const io::RunConfig& c, const std::string& command) {
  if (c.scenario.agents.empty()) {
    throw io::ConfigError("agents", command + " needs a --config with at least one agent group");
  }
}

/// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw io::ConfigError(path, "cannot open output file");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int cmd_analyze(const Options& o, std::ostream& out) {
  const io::RunConfig c = load(o);
  const io::Format f = io::parse_format(o.format);
  Sink sink(o.out_path, out);
  if (o.builtin_table) {
    const auto checks = analysis::check_published_table();
    io::write_published_check(sink.get(), f, c, checks);
    for (const auto& r : checks) {
      if (!r.ok()) return kExitFailedRows;
    }
    return kExitOk;
  }
  const auto grid = grid_of(c);
  io::write_manipulation(sink.get(), f, c, analysis::manipulation_table(grid));
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  io::RunConfig c = load(o);
  require_agents(c, "simulate");
  if (!o.events_path.empty()) c.scenario.record_events = true;
  const io::Format f = io::parse_format(o.format);
  const sim::ExperimentStats stats = sim::run_experiment(c.scenario);
  if (!o.events_path.empty()) {
    std::ofstream events(o.events_path);
    if (!events) throw io::ConfigError(o.events_path, "cannot open event log for writing");
    for (const auto& line : stats.trials.front().events) events << line << '\n';
  }
  Sink sink(o.out_path, out);
  io::write_experiment(sink.get(), f, c, stats);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const io::RunConfig c = load(o);
  const io::Format f = io::parse_format(o.format);
  std::vector<sim::VerifyRow> rows;
  for (const auto& p : grid_of(c)) rows.push_back(sim::verify_manipulation(p, c.verify));
  Sink sink(o.out_path, out);
  io::write_verify(sink.get(), f, c, rows);
  for (const auto& r : rows) {
    if (!r.within) return kExitFailedRows;
  }
  return kExitOk;
}

int cmd_equilibrium(const Options& o, std::ostream& out, std::ostream& err) {
  const io::RunConfig c = load(o);
  require_agents(c, "equilibrium");
  const io::Format f = io::parse_format(o.format);
  const sim::EquilibriumReport report = sim::equilibrium_check(c.scenario, c.menu);
  if (report.assumption_violated) {
    err << "warning: AssumptionViolated: a vote is incorrect with probability " << report.incorrect_vote_prob
        << " >= 0.5\n";
  }
  Sink sink(o.out_path, out);
  io::write_equilibrium(sink.get(), f, c, report);
  return report.any_violation() && !report.assumption_violated ? kExitFailedRows : kExitOk;
}

int cmd_pools(const Options& o, std::ostream& out) {
  const io::RunConfig c = load(o);
  require_agents(c, "pools");
  const io::Format f = io::parse_format(o.format);
  const sim::PoolBiasReport report = sim::pool_bias_experiment(c.scenario);
  Sink sink(o.out_path, out);
  io::write_pool_bias(sink.get(), f, c, report);
  return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
  const io::RunConfig c = load(o);
  std::ifstream log(o.log_path);
  if (!log) throw io::ConfigError(o.log_path, "cannot open event log");
  try {
    const ReplayOutcome r = replay(c.scenario.params, log);
    out << "replayed " << r.events << " events, " << r.results.size() << " settlements, pools "
        << r.game.pools().r_true << "/" << r.game.pools().r_false << "\n";
    return kExitOk;
  } catch (const ReplayError& e) {
    err << "replay failed: " << e.what() << "\n";
    return kExitFailedRows;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stake-weighted voting oracle: closed-form analysis and agent-based simulation", "oraclesim"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Options o;
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_path, "Write the report here instead of stdout");
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", o.seed, "Master seed (overrides the config)");
    sub->add_option("--trials", o.trials, "Number of trials (overrides the config)")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);
  };

  auto* analyze = app.add_subcommand("analyze", "Closed-form manipulation probabilities");
  common(analyze);
  analyze->add_flag("--builtin-table5", o.builtin_table,
                    "Compare against the published manipulation table; exit 1 on any mismatch");

  auto* simulate = app.add_subcommand("simulate", "Run the agent-based simulation");
  common(simulate);
  simulate->add_option("--events", o.events_path, "Write the NDJSON event log of trial 0 here");

  auto* verify = app.add_subcommand("verify", "Monte Carlo check of the closed-form manipulation probability");
  common(verify);
  verify->add_option("--decided", o.decided, "Decided propositions per trial")->check(CLI::PositiveNumber);

  auto* equilibrium = app.add_subcommand("equilibrium", "Unilateral deviation check for one player");
  common(equilibrium);

  auto* pools = app.add_subcommand("pools", "Certifier reward-pool dynamics");
  common(pools);

  auto* replay_cmd = app.add_subcommand("replay", "Re-apply an NDJSON event log and check every settlement");
  common(replay_cmd);
  replay_cmd->add_option("--log", o.log_path, "Event log to replay")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*analyze) return cmd_analyze(o, out);
    if (*simulate) return cmd_simulate(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*equilibrium) return cmd_equilibrium(o, out, err);
    if (*pools) return cmd_pools(o, out);
    if (*replay_cmd) return cmd_replay(o, out, err);
  } catch (const io::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const analysis::AnalysisError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ProtocolError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace oraclesim::cli
