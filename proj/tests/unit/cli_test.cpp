#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "oraclesim_cli/cli.hpp"

namespace oraclesim::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "oraclesim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path path = fs::path(ORACLESIM_TEST_TMP) / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

constexpr const char* kSmallScenario = R"({
  "params": {"list_size": 5},
  "initial_pools": {"r_true": 100, "r_false": 100},
  "agents": [
    {"count": 20, "cohort": "honest", "accuracy": 0.8, "voter": "honest"},
    {"count": 3, "cohort": "cert", "voter": "abstain", "certifier": "pool-aware", "accuracy": 0.9}
  ],
  "rounds": 60, "trials": 2
})";

TEST(Cli, AnalyzeDefaultGridWritesTwelveRows) {
  const Result r = run({"analyze"});
  EXPECT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 13);
}

TEST(Cli, AnalyzeEmptyGrid) {
  const std::string cfg = write_file("empty_grid.json", R"({"grid": []})");
  const Result r = run({"analyze", "--config", cfg});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "D_v_over_smax,P,q,fraction,p_specific,p_any\n");
}

TEST(Cli, AnalyzeBountyCap) {
  const std::string cfg = write_file("caps.json", R"({"grid": [], "bounty_caps": [{"q": 0.8, "decision_stake": 1000}]})");
  const Result r = run({"analyze", "--config", cfg});
  EXPECT_NE(r.out.find("0.8,1000,250,0.8"), std::string::npos);
}

TEST(Cli, BuiltinTableReportsRowStatus) {
  const Result r = run({"analyze", "--builtin-table5", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.at("rows").size(), 12u);
  bool all_pass = true;
  for (const auto& row : j.at("rows")) all_pass = all_pass && row.at("status") == "PASS";
  EXPECT_EQ(r.code, all_pass ? kExitOk : kExitFailedRows);
}

TEST(Cli, JsonReportsCarrySchema) {
  const Result r = run({"analyze", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "oraclesim.report/1");
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j.contains("version"));
}

TEST(Cli, SimulateTwiceWithSameSeedIsIdentical) {
  const std::string cfg = write_file("small.json", kSmallScenario);
  const std::string a = (fs::path(ORACLESIM_TEST_TMP) / "sim_a.csv").string();
  const std::string b = (fs::path(ORACLESIM_TEST_TMP) / "sim_b.csv").string();
  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "42", "--out", a}).code, kExitOk);
  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "42", "--out", b, "--threads", "2"}).code, kExitOk);
  EXPECT_FALSE(read_file(a).empty());
  EXPECT_EQ(read_file(a), read_file(b));
  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "43", "--out", b}).code, kExitOk);
  EXPECT_NE(read_file(a), read_file(b));
}

TEST(Cli, SeedAndTrialOverridesReachTheEcho) {
  const std::string cfg = write_file("small2.json", kSmallScenario);
  const Result r = run({"simulate", "--config", cfg, "--seed", "7", "--trials", "1", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("config").at("seed"), 7);
  EXPECT_EQ(j.at("config").at("trials"), 1);
}

TEST(Cli, EventLogReplays) {
  const std::string cfg = write_file("small3.json", kSmallScenario);
  const std::string log = (fs::path(ORACLESIM_TEST_TMP) / "events.ndjson").string();
  ASSERT_EQ(run({"simulate", "--config", cfg, "--events", log}).code, kExitOk);
  const Result r = run({"replay", "--config", cfg, "--log", log});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("settlements"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  const std::string bad = write_file("bad.json", "{\"rounds\": 5,\n \"oops\": 1}");
  const Result r = run({"simulate", "--config", bad});
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("oops"), std::string::npos);

  const std::string broken = write_file("broken.json", "{\n\"rounds\": }");
  EXPECT_EQ(run({"analyze", "--config", broken}).code, kExitConfigError);
  EXPECT_EQ(run({"analyze", "--config", "/nonexistent/x.json"}).code, kExitConfigError);
  EXPECT_EQ(run({"analyze", "--format", "xml"}).code, kExitConfigError);
  EXPECT_EQ(run({"bogus"}).code, kExitConfigError);
  EXPECT_EQ(run({}).code, kExitConfigError);
  EXPECT_EQ(run({"simulate"}).code, kExitConfigError);
}

TEST(Cli, EquilibriumAssumptionViolationIsAWarning) {
  const std::string cfg = write_file("eq_bad.json", R"({
    "params": {"list_size": 5},
    "agents": [{"count": 10, "accuracy": 0.3, "voter": "honest"}],
    "rounds": 20, "trials": 3, "menu": ["honest", "abstain"]
  })");
  const Result r = run({"equilibrium", "--config", cfg});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("AssumptionViolated"), std::string::npos);
  EXPECT_NE(r.out.find("AssumptionViolated"), std::string::npos);
}

TEST(Cli, VersionFlag) {
  const Result r = run({"--version"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("v", 0), 0u);
}

}  // namespace
}  // namespace oraclesim::cli
