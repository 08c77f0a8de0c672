#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace oraclesim::analysis {

struct ManipulationParams {
  std::uint64_t dv_over_smax = 20;  // D_v in units of s_max
  std::size_t list_size = 100;
  double q = 0.8;
  double fraction = 0.0;            // n / (|P| D_v)

  friend bool operator==(const ManipulationParams&, const ManipulationParams&) = default;
};

struct ManipulationRow {
  ManipulationParams params;
  double p_specific = 0.0;
  double p_any = 0.0;
};

std::vector<ManipulationRow> manipulation_table(std::span<const ManipulationParams> grid);

/// A probability as printed in the published manipulation table.
struct PrintedValue {
  enum class Kind { Decimal, BelowPower, ApproxOne, ApproxZero };

  Kind kind = Kind::Decimal;
  std::string decimal;  // "0.0548" for Kind::Decimal
  int exponent = 0;     // printed order of magnitude for Kind::BelowPower

  static PrintedValue fixed(std::string text) { return {Kind::Decimal, std::move(text), 0}; }
  static PrintedValue below_power(int e) { return {Kind::BelowPower, {}, e}; }
  static PrintedValue approx_one() { return {Kind::ApproxOne, {}, 0}; }
  static PrintedValue approx_zero() { return {Kind::ApproxZero, {}, 0}; }

  /// Comparison rules: a decimal must equal the value rounded half-up to
  /// 4 places; an order of magnitude 10^e accepts values below 10^(e+1);
  /// "~1" accepts values above 0.999 and "~0" values below 1e-12.
  bool matches(double value) const;
  std::string text() const;
};

struct PublishedRow {
  ManipulationParams params;
  PrintedValue p_specific;
  PrintedValue p_any;
};

/// The twelve published parameter tuples with their printed probabilities.
const std::vector<PublishedRow>& table5_fixture();

struct PublishedCheck {
  PublishedRow published;
  ManipulationRow computed;
  bool specific_ok = false;
  bool any_ok = false;
  bool ok() const noexcept { return specific_ok && any_ok; }
};

/// Recomputes every published row and compares it with the printed values.
std::vector<PublishedCheck> check_published_table();

/// Round half-up to 4 decimal places, formatted "0.dddd".
std::string round_half_up_4dp(double value);

}  // namespace oraclesim::analysis
