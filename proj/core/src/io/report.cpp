#include "oraclesim/io/report.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#include "oraclesim/analysis/security.hpp"
#include "oraclesim/version.hpp"

namespace oraclesim::io {

using nlohmann::json;

namespace {

json params_json(const analysis::ManipulationParams& p) {
  return {{"D_v_over_smax", p.dv_over_smax}, {"P", p.list_size}, {"q", p.q}, {"fraction", p.fraction}};
}

void csv_params(std::ostream& out, const analysis::ManipulationParams& p) {
  out << p.dv_over_smax << ',' << p.list_size << ',' << format_double(p.q) << ',' << format_double(p.fraction);
}

json mean_json(const sim::MeanStat& m) { return {{"mean", m.mean}, {"stderr", m.stderr_mean}, {"n", m.n}}; }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected csv or json)");
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

json report_envelope(std::string_view command, const RunConfig& config) {
  return {{"schema", kReportSchema}, {"version", kVersion}, {"command", command}, {"config", to_json(config)}};
}

void write_manipulation(std::ostream& out, Format f, const RunConfig& config,
                        std::span<const analysis::ManipulationRow> rows) {
  if (f == Format::Csv) {
    out << "D_v_over_smax,P,q,fraction,p_specific,p_any\n";
    for (const auto& r : rows) {
      csv_params(out, r.params);
      out << ',' << format_double(r.p_specific) << ',' << format_double(r.p_any) << '\n';
    }
    if (!config.bounty_caps.empty()) {
      out << "\nq,D_v,max_bounty,min_accuracy\n";
      for (const auto& b : config.bounty_caps) {
        const Money cap = analysis::max_bounty(b.q, b.decision_stake);
        out << format_double(b.q) << ',' << b.decision_stake << ',' << cap << ','
            << format_double(analysis::min_accuracy(cap, b.decision_stake)) << '\n';
      }
    }
    return;
  }
  json j = report_envelope("analyze", config);
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json row = params_json(r.params);
    row["p_specific"] = r.p_specific;
    row["p_any"] = r.p_any;
    j["rows"].push_back(std::move(row));
  }
  j["bounty_caps"] = json::array();
  for (const auto& b : config.bounty_caps) {
    const Money cap = analysis::max_bounty(b.q, b.decision_stake);
    j["bounty_caps"].push_back({{"q", b.q},
                                {"D_v", b.decision_stake},
                                {"max_bounty", cap},
                                {"min_accuracy", analysis::min_accuracy(cap, b.decision_stake)}});
  }
  emit(out, j);
}

void write_published_check(std::ostream& out, Format f, const RunConfig& config,
                           std::span<const analysis::PublishedCheck> rows) {
  if (f == Format::Csv) {
    out << "D_v_over_smax,P,q,fraction,p_specific,p_any,printed_specific,printed_any,status\n";
    for (const auto& r : rows) {
      csv_params(out, r.computed.params);
      out << ',' << format_double(r.computed.p_specific) << ',' << format_double(r.computed.p_any) << ','
          << r.published.p_specific.text() << ',' << r.published.p_any.text() << ',' << (r.ok() ? "PASS" : "FAIL")
          << '\n';
    }
    return;
  }
  json j = report_envelope("analyze", config);
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json row = params_json(r.computed.params);
    row["p_specific"] = r.computed.p_specific;
    row["p_any"] = r.computed.p_any;
    row["printed_specific"] = r.published.p_specific.text();
    row["printed_any"] = r.published.p_any.text();
    row["specific_ok"] = r.specific_ok;
    row["any_ok"] = r.any_ok;
    row["status"] = r.ok() ? "PASS" : "FAIL";
    j["rows"].push_back(std::move(row));
  }
  emit(out, j);
}

void write_experiment(std::ostream& out, Format f, const RunConfig& config, const sim::ExperimentStats& stats) {
  if (f == Format::Csv) {
    out << "trial,seed,rounds,decided,incorrect,incorrect_rate,certified_true,certified_false,certified_unknown,"
           "r_true,r_false,adversary_spent\n";
    for (const auto& t : stats.trials) {
      out << t.trial << ',' << t.seed << ',' << t.rounds << ',' << t.decided << ',' << t.incorrect_voting << ','
          << format_double(t.incorrect_rate()) << ',' << t.certification_outcomes[sim::outcome_index(Outcome::True)] << ','
          << t.certification_outcomes[sim::outcome_index(Outcome::False)] << ','
          << t.certification_outcomes[sim::outcome_index(Outcome::Unknown)] << ',' << t.final_pools.r_true << ','
          << t.final_pools.r_false << ',' << t.adversary_spent << '\n';
    }
    return;
  }
  json j = report_envelope("simulate", config);
  const auto ci = stats.incorrect_interval();
  j["summary"] = {{"decided", stats.decided()},
                  {"incorrect", stats.incorrect()},
                  {"incorrect_rate", stats.incorrect_rate()},
                  {"incorrect_ci95", {ci.lo, ci.hi}}};
  json cohorts = json::object();
  for (const auto& [name, m] : stats.cohort_payoffs()) cohorts[name] = mean_json(m);
  j["summary"]["cohort_payoffs"] = std::move(cohorts);
  j["trials"] = json::array();
  for (const auto& t : stats.trials) j["trials"].push_back(sim::to_json(t));
  emit(out, j);
}

void write_verify(std::ostream& out, Format f, const RunConfig& config, std::span<const sim::VerifyRow> rows) {
  if (f == Format::Csv) {
    out << "D_v_over_smax,P,q,fraction,realized_fraction,closed_form,decided,incorrect,empirical,ci_lo,ci_hi,status\n";
    for (const auto& r : rows) {
      csv_params(out, r.params);
      out << ',' << format_double(r.realized_fraction) << ',' << format_double(r.closed_form) << ',' << r.decided
          << ',' << r.incorrect << ',' << format_double(r.empirical) << ',' << format_double(r.interval.lo) << ','
          << format_double(r.interval.hi) << ',' << (r.within ? "PASS" : "FAIL") << '\n';
    }
    return;
  }
  json j = report_envelope("verify", config);
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json row = params_json(r.params);
    row["realized_fraction"] = r.realized_fraction;
    row["closed_form"] = r.closed_form;
    row["decided"] = r.decided;
    row["incorrect"] = r.incorrect;
    row["empirical"] = r.empirical;
    row["ci95"] = {r.interval.lo, r.interval.hi};
    row["status"] = r.within ? "PASS" : "FAIL";
    j["rows"].push_back(std::move(row));
  }
  emit(out, j);
}

void write_equilibrium(std::ostream& out, Format f, const RunConfig& config, const sim::EquilibriumReport& report) {
  if (f == Format::Csv) {
    out << "strategy,mean_payoff,stderr,trials,violation\n";
    for (const auto& r : report.rows) {
      out << r.strategy << ',' << format_double(r.payoff.mean) << ',' << format_double(r.payoff.stderr_mean) << ','
          << r.payoff.n << ',' << (r.violation ? "VIOLATION" : "ok") << '\n';
    }
    if (report.assumption_violated) {
      out << "AssumptionViolated," << format_double(report.incorrect_vote_prob) << ",,,inapplicable\n";
    }
    return;
  }
  json j = report_envelope("equilibrium", config);
  j["deviator"] = to_underlying(report.deviator);
  j["incorrect_vote_prob"] = report.incorrect_vote_prob;
  j["assumption_violated"] = report.assumption_violated;
  j["rows"] = json::array();
  for (const auto& r : report.rows) {
    json row = mean_json(r.payoff);
    row["strategy"] = r.strategy;
    row["violation"] = r.violation;
    j["rows"].push_back(std::move(row));
  }
  emit(out, j);
}

void write_pool_bias(std::ostream& out, Format f, const RunConfig& config, const sim::PoolBiasReport& report) {
  if (f == Format::Csv) {
    out << "round,r_true,r_false,drained_true,drained_false,decided\n";
    for (const auto& s : report.trajectory) {
      out << s.round << ',' << s.r_true << ',' << s.r_false << ',' << s.drained_true << ',' << s.drained_false << ','
          << s.decided << '\n';
    }
    return;
  }
  json j = report_envelope("pools", config);
  j["burn_in_rounds"] = report.burn_in_rounds;
  j["burn_in_drain_rate"] = {{"true", report.burn_in_drain_rate_true}, {"false", report.burn_in_drain_rate_false}};
  j["burn_in_drained_per_round"] = {{"true", report.burn_in_drained_true}, {"false", report.burn_in_drained_false}};
  j["late_certified"] = {{"true", report.late_certified_true}, {"false", report.late_certified_false}};
  j["late_relative_difference"] = report.late_relative_difference;
  json cohorts = json::object();
  for (const auto& [name, m] : report.cohort_payoffs) cohorts[name] = mean_json(m);
  j["cohort_payoffs"] = std::move(cohorts);
  j["mean_final_pools"] = {{"r_true", report.mean_final_pools.r_true}, {"r_false", report.mean_final_pools.r_false}};
  json traj = json::array();
  for (const auto& s : report.trajectory) {
    traj.push_back({{"round", s.round},
                    {"r_true", s.r_true},
                    {"r_false", s.r_false},
                    {"drained_true", s.drained_true},
                    {"drained_false", s.drained_false},
                    {"decided", s.decided}});
  }
  j["trajectory"] = std::move(traj);
  emit(out, j);
}

}  // namespace oraclesim::io
