#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "oraclesim/analysis/table5.hpp"
#include "oraclesim/io/config.hpp"
#include "oraclesim/sim/experiments.hpp"

namespace oraclesim::io {

inline constexpr std::string_view kReportSchema = "oraclesim.report/1";

enum class Format { Csv, Json };
Format parse_format(std::string_view s);

/// Shared JSON envelope: schema, tool version, command and configuration echo.
nlohmann::json report_envelope(std::string_view command, const RunConfig& config);

/// Manipulation table; when bounty caps are configured the CSV gains a
/// second block (q,D_v,max_bounty,min_accuracy) after a blank line.
void write_manipulation(std::ostream& out, Format f, const RunConfig& config,
                        std::span<const analysis::ManipulationRow> rows);
void write_published_check(std::ostream& out, Format f, const RunConfig& config,
                           std::span<const analysis::PublishedCheck> rows);
void write_experiment(std::ostream& out, Format f, const RunConfig& config, const sim::ExperimentStats& stats);
void write_verify(std::ostream& out, Format f, const RunConfig& config, std::span<const sim::VerifyRow> rows);
void write_equilibrium(std::ostream& out, Format f, const RunConfig& config, const sim::EquilibriumReport& report);
void write_pool_bias(std::ostream& out, Format f, const RunConfig& config, const sim::PoolBiasReport& report);

/// Shortest round-trip decimal for CSV cells.
std::string format_double(double x);

}  // namespace oraclesim::io
