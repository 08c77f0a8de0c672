#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "oraclesim/analysis/table5.hpp"
#include "oraclesim/sim/experiments.hpp"
#include "oraclesim/sim/scenario.hpp"

namespace oraclesim::io {

/// A configuration problem. `where` is "line:column" for syntax errors and a
/// field path such as "agents[2].accuracy" for semantic ones.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// One row of the bounty-cap table.
struct BountyCapQuery {
  double q = 0.8;
  Money decision_stake = 1000;

  friend bool operator==(const BountyCapQuery&, const BountyCapQuery&) = default;
};

/// Everything one CLI invocation can be configured with.
struct RunConfig {
  sim::ScenarioConfig scenario;
  std::optional<std::vector<analysis::ManipulationParams>> grid;  // absent = the published grid
  std::vector<BountyCapQuery> bounty_caps;
  sim::VerifyOptions verify;
  std::vector<std::string> menu = sim::default_deviation_menu();

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a JSON document. Unknown keys are errors; absent keys keep defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Complete serialization; parse_config(to_json(c).dump()) == c.
nlohmann::json to_json(const RunConfig& config);

}  // namespace oraclesim::io
