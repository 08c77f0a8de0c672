#include "oraclesim/io/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace oraclesim::io {

namespace {

using nlohmann::json;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

/// Reads the members of one JSON object, remembering which keys were used.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string at(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

  const json* find(std::string_view key) {
    const auto it = j_.find(std::string(key));
    if (it == j_.end()) return nullptr;
    used_.insert(std::string(key));
    return &*it;
  }

  template <typename T>
  void integer(std::string_view key, T& out, T min = std::numeric_limits<T>::min()) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
    if (v->is_number_unsigned()) {
      const auto u = v->get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) throw ConfigError(at(key), "out of range");
      if (min > 0 && u < static_cast<std::uint64_t>(min)) {
        throw ConfigError(at(key), "must be at least " + std::to_string(min));
      }
      out = static_cast<T>(u);
    } else {
      const auto s = v->get<std::int64_t>();
      if (s < static_cast<std::int64_t>(min)) {
        throw ConfigError(at(key), "must be at least " + std::to_string(min));
      }
      if (std::is_unsigned_v<T> && s < 0) throw ConfigError(at(key), "must be non-negative");
      out = static_cast<T>(s);
    }
  }

  void number(std::string_view key, double& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    out = v->get<double>();
  }

  void boolean(std::string_view key, bool& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_boolean()) throw ConfigError(at(key), "expected true or false");
    out = v->get<bool>();
  }

  void string(std::string_view key, std::string& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    out = v->get<std::string>();
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.contains(key)) throw ConfigError(at(key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

template <typename F>
auto rethrow_as_config(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
}

std::string adversary_mode_tag(agents::AdversaryMode m) {
  return m == agents::AdversaryMode::HonestOffTarget ? "honest-off-target" : "incorrect-everywhere";
}

void parse_params(const json& j, const std::string& path, SystemParams& p) {
  Fields f(j, path);
  f.integer("s_max", p.s_max);
  f.integer("sigma_min", p.sigma_min);
  f.integer("decision_stake", p.decision_stake);
  f.integer("list_size", p.list_size);
  f.integer("tau", p.tau);
  f.number("majority_threshold", p.majority_threshold);
  f.boolean("tri_state", p.tri_state);
  f.finish();
}

void parse_voter(const json& j, const std::string& path, agents::VoterStrategy& v) {
  if (j.is_string()) {
    v = rethrow_as_config(path, [&] { return agents::parse_voter_tag(j.get<std::string>()); });
    return;
  }
  Fields f(j, path);
  std::string tag = "honest";
  f.string("strategy", tag);
  v = rethrow_as_config(f.at("strategy"), [&] { return agents::parse_voter_tag(tag); });
  auto& a = v.adversary;
  f.integer("budget", a.budget, Money{0});
  if (const json* t = f.find("target"); t != nullptr && !t->is_null()) {
    if (!t->is_number_unsigned()) throw ConfigError(f.at("target"), "expected a proposition id");
    a.target = PropositionId{t->get<std::uint64_t>()};
  }
  std::string direction;
  f.string("direction", direction);
  if (!direction.empty()) a.direction = rethrow_as_config(f.at("direction"), [&] { return parse_outcome(direction); });
  std::string mode;
  f.string("mode", mode);
  if (mode == "honest-off-target") {
    a.mode = agents::AdversaryMode::HonestOffTarget;
  } else if (!mode.empty() && mode != "incorrect-everywhere") {
    throw ConfigError(f.at("mode"), "expected incorrect-everywhere or honest-off-target");
  }
  f.finish();
}

void parse_agent(const json& j, const std::string& path, sim::AgentGroup& g) {
  Fields f(j, path);
  auto& p = g.profile;
  f.integer("count", g.count, std::size_t{1});
  f.string("cohort", p.cohort);
  f.number("accuracy", p.accuracy);
  f.integer("initial_balance", p.initial_balance, Money{0});
  if (const json* v = f.find("voter")) parse_voter(*v, f.at("voter"), p.voter);
  std::string certifier;
  f.string("certifier", certifier);
  if (!certifier.empty()) {
    p.certifier.kind = rethrow_as_config(f.at("certifier"), [&] { return agents::parse_certifier_tag(certifier); });
  }
  f.integer("candidates", p.certifier.candidates, std::uint32_t{1});
  f.integer("vote_stake", p.vote_stake, Money{0});
  f.integer("cert_stake", p.cert_stake, Money{0});
  f.number("participation", p.participation);
  f.integer("seats", p.seats);
  f.finish();
}

void parse_grid_row(const json& j, const std::string& path, analysis::ManipulationParams& m) {
  Fields f(j, path);
  f.integer("dv_over_smax", m.dv_over_smax, std::uint64_t{1});
  f.integer("list_size", m.list_size, std::size_t{1});
  f.number("q", m.q);
  f.number("fraction", m.fraction);
  f.finish();
  if (!(m.q >= 0.0 && m.q <= 1.0)) throw ConfigError(path + ".q", "must lie in [0, 1]");
  if (!(m.fraction >= 0.0 && m.fraction <= 1.0)) throw ConfigError(path + ".fraction", "must lie in [0, 1]");
}

RunConfig from_json(const json& root) {
  RunConfig c;
  auto& s = c.scenario;
  Fields f(root, "");
  if (const json* v = f.find("params")) parse_params(*v, "params", s.params);
  if (const json* v = f.find("stream")) {
    Fields st(*v, "stream");
    st.number("p_true", s.stream.p_true);
    st.integer("bounty_min", s.stream.bounty_min);
    st.integer("bounty_max", s.stream.bounty_max);
    st.number("undecidable_fraction", s.stream.undecidable_fraction);
    st.finish();
  }
  if (const json* v = f.find("initial_pools")) {
    Fields ip(*v, "initial_pools");
    ip.integer("r_true", s.initial_pools.r_true, Money{0});
    ip.integer("r_false", s.initial_pools.r_false, Money{0});
    ip.finish();
  }
  if (const json* v = f.find("agents")) {
    if (!v->is_array()) throw ConfigError("agents", "expected an array");
    s.agents.resize(v->size());
    for (std::size_t i = 0; i < v->size(); ++i) parse_agent((*v)[i], "agents[" + std::to_string(i) + "]", s.agents[i]);
  }
  f.integer("rounds", s.rounds, std::size_t{1});
  f.integer("trials", s.trials, std::size_t{1});
  f.integer("seed", s.master_seed);
  f.boolean("replenish", s.replenish);
  f.integer("stop_after_decided", s.stop_after_decided);
  f.integer("vote_slots_per_round", s.vote_slots_per_round);
  f.integer("trajectory_stride", s.trajectory_stride);
  f.boolean("keep_results", s.keep_results);
  f.boolean("record_events", s.record_events);
  f.integer("threads", s.threads, 1u);

  if (const json* v = f.find("grid")) {
    if (!v->is_array()) throw ConfigError("grid", "expected an array");
    c.grid.emplace(v->size());
    for (std::size_t i = 0; i < v->size(); ++i) parse_grid_row((*v)[i], "grid[" + std::to_string(i) + "]", (*c.grid)[i]);
  }
  if (const json* v = f.find("bounty_caps")) {
    if (!v->is_array()) throw ConfigError("bounty_caps", "expected an array");
    c.bounty_caps.resize(v->size());
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string path = "bounty_caps[" + std::to_string(i) + "]";
      Fields bf((*v)[i], path);
      bf.number("q", c.bounty_caps[i].q);
      bf.integer("decision_stake", c.bounty_caps[i].decision_stake, Money{1});
      bf.finish();
      if (!(c.bounty_caps[i].q > 0.0 && c.bounty_caps[i].q < 1.0)) throw ConfigError(path + ".q", "must lie in (0, 1)");
    }
  }
  if (const json* v = f.find("verify")) {
    Fields vf(*v, "verify");
    vf.integer("decided_per_trial", c.verify.decided_per_trial, std::size_t{1});
    vf.integer("trials", c.verify.trials, std::size_t{1});
    vf.integer("seat_weight", c.verify.seat_weight, std::uint64_t{2});
    vf.integer("seed", c.verify.master_seed);
    vf.integer("threads", c.verify.threads, 1u);
    vf.finish();
  }
  if (const json* v = f.find("menu")) {
    if (!v->is_array()) throw ConfigError("menu", "expected an array of strategy names");
    c.menu.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string path = "menu[" + std::to_string(i) + "]";
      if (!(*v)[i].is_string()) throw ConfigError(path, "expected a string");
      const auto tag = (*v)[i].get<std::string>();
      rethrow_as_config(path, [&] { return agents::parse_voter_tag(tag); });
      c.menu.push_back(tag);
    }
  }
  f.finish();
  return c;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "syntax error");
  }
  RunConfig c = from_json(root);
  if (!c.scenario.agents.empty()) rethrow_as_config("config", [&] { c.scenario.validate(); });
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

json to_json(const RunConfig& c) {
  const auto& s = c.scenario;
  json j;
  j["params"] = {{"s_max", s.params.s_max},
                 {"sigma_min", s.params.sigma_min},
                 {"decision_stake", s.params.decision_stake},
                 {"list_size", s.params.list_size},
                 {"tau", s.params.tau},
                 {"majority_threshold", s.params.majority_threshold},
                 {"tri_state", s.params.tri_state}};
  j["stream"] = {{"p_true", s.stream.p_true},
                 {"bounty_min", s.stream.bounty_min},
                 {"bounty_max", s.stream.bounty_max},
                 {"undecidable_fraction", s.stream.undecidable_fraction}};
  j["initial_pools"] = {{"r_true", s.initial_pools.r_true}, {"r_false", s.initial_pools.r_false}};

  json agents_json = json::array();
  for (const auto& g : s.agents) {
    const auto& p = g.profile;
    json voter;
    if (p.voter.kind == agents::VoterKind::Adversary) {
      const auto& a = p.voter.adversary;
      voter = {{"strategy", "adversary"}, {"budget", a.budget}, {"mode", adversary_mode_tag(a.mode)}};
      if (a.target) voter["target"] = to_underlying(*a.target);
      if (a.direction) voter["direction"] = std::string(to_string(*a.direction));
    } else {
      voter = agents::voter_tag(p.voter);
    }
    agents_json.push_back({{"count", g.count},
                           {"cohort", p.cohort},
                           {"accuracy", p.accuracy},
                           {"initial_balance", p.initial_balance},
                           {"voter", voter},
                           {"certifier", std::string(agents::certifier_tag(p.certifier.kind))},
                           {"candidates", p.certifier.candidates},
                           {"vote_stake", p.vote_stake},
                           {"cert_stake", p.cert_stake},
                           {"participation", p.participation},
                           {"seats", p.seats}});
  }
  j["agents"] = std::move(agents_json);
  j["rounds"] = s.rounds;
  j["trials"] = s.trials;
  j["seed"] = s.master_seed;
  j["replenish"] = s.replenish;
  j["stop_after_decided"] = s.stop_after_decided;
  j["vote_slots_per_round"] = s.vote_slots_per_round;
  j["trajectory_stride"] = s.trajectory_stride;
  j["keep_results"] = s.keep_results;
  j["record_events"] = s.record_events;
  j["threads"] = s.threads;

  if (c.grid) {
    json grid = json::array();
    for (const auto& m : *c.grid) {
      grid.push_back(
          {{"dv_over_smax", m.dv_over_smax}, {"list_size", m.list_size}, {"q", m.q}, {"fraction", m.fraction}});
    }
    j["grid"] = std::move(grid);
  }
  json caps = json::array();
  for (const auto& b : c.bounty_caps) caps.push_back({{"q", b.q}, {"decision_stake", b.decision_stake}});
  j["bounty_caps"] = std::move(caps);
  j["verify"] = {{"decided_per_trial", c.verify.decided_per_trial},
                 {"trials", c.verify.trials},
                 {"seat_weight", c.verify.seat_weight},
                 {"seed", c.verify.master_seed},
                 {"threads", c.verify.threads}};
  j["menu"] = c.menu;
  return j;
}

}  // namespace oraclesim::io
