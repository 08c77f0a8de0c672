#include "oraclesim/analysis/table5.hpp"

#include <cmath>
#include <cstdio>

#include "oraclesim/analysis/security.hpp"

namespace oraclesim::analysis {

std::vector<ManipulationRow> manipulation_table(std::span<const ManipulationParams> grid) {
  std::vector<ManipulationRow> rows;
  rows.reserve(grid.size());
  for (const ManipulationParams& p : grid) {
    ManipulationRow row;
    row.params = p;
    row.p_specific = p_manipulate_specific_from_fraction(p.q, p.fraction, p.dv_over_smax);
    row.p_any = p_manipulate_any(row.p_specific, p.list_size);
    rows.push_back(row);
  }
  return rows;
}

std::string round_half_up_4dp(double value) {
  const double scaled = std::floor(value * 1e4 + 0.5);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", scaled / 1e4);
  return buf;
}

bool PrintedValue::matches(double value) const {
  switch (kind) {
    case Kind::Decimal:
      return round_half_up_4dp(value) == decimal;
    case Kind::BelowPower:
      return value < std::pow(10.0, exponent + 1);
    case Kind::ApproxOne:
      return value > 0.999;
    case Kind::ApproxZero:
      return value < 1e-12;
  }
  return false;
}

std::string PrintedValue::text() const {
  switch (kind) {
    case Kind::Decimal:
      return decimal;
    case Kind::BelowPower:
      return "~1e" + std::to_string(exponent);
    case Kind::ApproxOne:
      return "~1";
    case Kind::ApproxZero:
      return "~0";
  }
  return "?";
}

const std::vector<PublishedRow>& table5_fixture() {
  using P = PrintedValue;
  static const std::vector<PublishedRow> rows = {
      {{20, 100, 0.80, 0.00}, P::fixed("0.0006"), P::fixed("0.0548")},
      {{20, 100, 0.80, 0.05}, P::fixed("0.0028"), P::fixed("0.2438")},
      {{20, 100, 0.80, 0.25}, P::fixed("0.1275"), P::approx_one()},
      {{20, 100, 0.95, 0.00}, P::below_power(-9), P::below_power(-7)},
      {{20, 100, 0.95, 0.05}, P::below_power(-6), P::below_power(-4)},
      {{20, 100, 0.95, 0.25}, P::fixed("0.0123"), P::fixed("0.7100")},
      {{100, 100, 0.80, 0.00}, P::below_power(-11), P::below_power(-9)},
      {{100, 100, 0.80, 0.05}, P::below_power(-8), P::below_power(-6)},
      {{100, 100, 0.80, 0.25}, P::fixed("0.0168"), P::fixed("0.8156")},
      {{100, 100, 0.95, 0.00}, P::approx_zero(), P::approx_zero()},
      {{100, 100, 0.95, 0.05}, P::approx_zero(), P::approx_zero()},
      {{100, 100, 0.95, 0.25}, P::below_power(-5), P::fixed("0.0002")},
  };
  return rows;
}

std::vector<PublishedCheck> check_published_table() {
  std::vector<PublishedCheck> out;
  for (const PublishedRow& row : table5_fixture()) {
    const ManipulationParams grid[] = {row.params};
    PublishedCheck c;
    c.published = row;
    c.computed = manipulation_table(grid).front();
    c.specific_ok = row.p_specific.matches(c.computed.p_specific);
    c.any_ok = row.p_any.matches(c.computed.p_any);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace oraclesim::analysis
