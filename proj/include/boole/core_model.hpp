#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boole/rational.hpp"

namespace boole {

/// Data-level failure: malformed outcomes, empty samples, broken run indexing.
/// Messages start with a stable key ("empty sample", "invalid outcome", ...).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A dichotomic measurement result, exactly +1 or -1.
class Outcome {
public:
  constexpr Outcome() = default;  // +1
  static constexpr Outcome plus() { return Outcome(1); }
  static constexpr Outcome minus() { return Outcome(-1); }

  /// Throws DataError("invalid outcome") for anything but +1 / -1.
  static Outcome from_int(int v);

  constexpr int value() const { return value_; }
  constexpr Outcome operator-() const { return Outcome(static_cast<std::int8_t>(-value_)); }
  friend constexpr int operator*(Outcome a, Outcome b) { return a.value_ * b.value_; }
  friend constexpr bool operator==(Outcome, Outcome) = default;

private:
  constexpr explicit Outcome(int v) : value_(static_cast<std::int8_t>(v)) {}
  std::int8_t value_ = 1;
};

/// One run of the triple-collection regime: all three settings observed.
struct TripleRun {
  std::size_t alpha = 1;
  Outcome a1 = Outcome::plus();
  Outcome a2 = Outcome::plus();
  Outcome a3 = Outcome::plus();

  friend bool operator==(const TripleRun&, const TripleRun&) = default;
};

class TripleDataset {
public:
  /// Validates m >= 1 and alpha == 1..m in order.
  explicit TripleDataset(std::vector<TripleRun> runs);

  /// Builds runs with alpha assigned 1..m from bare outcome triples.
  static TripleDataset from_outcomes(std::span<const std::array<Outcome, 3>> triples);

  const std::vector<TripleRun>& runs() const { return runs_; }
  std::size_t m() const { return runs_.size(); }

  friend bool operator==(const TripleDataset&, const TripleDataset&) = default;

private:
  std::vector<TripleRun> runs_;
};

enum class GroupLabel : std::uint8_t { g12 = 0, g13 = 1, g23 = 2 };

inline constexpr std::array<GroupLabel, 3> kAllGroups{GroupLabel::g12, GroupLabel::g13,
                                                      GroupLabel::g23};

/// The two (1-based) setting indices measured together, lower first.
constexpr std::pair<int, int> settings_of(GroupLabel g) {
  switch (g) {
    case GroupLabel::g12: return {1, 2};
    case GroupLabel::g13: return {1, 3};
    case GroupLabel::g23: return {2, 3};
  }
  return {0, 0};
}

constexpr std::size_t index_of(GroupLabel g) { return static_cast<std::size_t>(g); }

/// "12", "13" or "23".
std::string_view to_string(GroupLabel g);
/// Inverse of to_string; throws DataError("invalid group") otherwise.
GroupLabel parse_group(std::string_view text);

/// One run of the pair-collection regime. Outcomes are ordered by ascending
/// setting index within the group.
struct PairRun {
  GroupLabel group = GroupLabel::g12;
  std::size_t alpha = 1;
  Outcome out_first = Outcome::plus();
  Outcome out_second = Outcome::plus();
  std::optional<double> t_first;
  std::optional<double> t_second;

  /// Checks the time-stamp invariant; throws DataError("incomplete timestamps")
  /// or DataError("timestamps out of order").
  void validate() const;

  friend bool operator==(const PairRun&, const PairRun&) = default;
};

class PairDataset {
public:
  /// Each list must be nonempty, carry its own group label and have alpha 1..m_g.
  PairDataset(std::vector<PairRun> runs_12, std::vector<PairRun> runs_13,
              std::vector<PairRun> runs_23);

  /// Splits runs by group label keeping their relative order.
  static PairDataset from_runs(std::span<const PairRun> runs);

  const std::vector<PairRun>& runs(GroupLabel g) const { return groups_[index_of(g)]; }
  std::size_t count(GroupLabel g) const { return groups_[index_of(g)].size(); }
  std::array<std::size_t, 3> counts() const { return {count(GroupLabel::g12), count(GroupLabel::g13), count(GroupLabel::g23)}; }

  friend bool operator==(const PairDataset&, const PairDataset&) = default;

private:
  std::array<std::vector<PairRun>, 3> groups_;
};

/// Pair average kept as an exact (sum of products, count) pair.
class ExactCorrelation {
public:
  /// Enforces count >= 1, |sum| <= count and sum == count (mod 2).
  ExactCorrelation(std::int64_t sum, std::int64_t count);

  std::int64_t sum() const { return sum_; }
  std::int64_t count() const { return count_; }
  double value() const { return static_cast<double>(sum_) / static_cast<double>(count_); }
  Rational as_rational() const { return Rational(sum_, count_); }

  friend bool operator==(const ExactCorrelation&, const ExactCorrelation&) = default;

private:
  std::int64_t sum_;
  std::int64_t count_;
};

enum class Representation { exact, approximate };

/// (F12, F13, F23), either exact or real valued.
class CorrelationTriple {
public:
  static CorrelationTriple exact(ExactCorrelation f12, ExactCorrelation f13, ExactCorrelation f23);

  /// Components must lie in [-1 - tol, 1 + tol]; throws DataError("correlation out of range").
  static CorrelationTriple approximate(double f12, double f13, double f23, double tol = kRangeTolerance);

  Representation representation() const { return exact_ ? Representation::exact : Representation::approximate; }
  bool is_exact() const { return exact_.has_value(); }

  /// Exact components; only valid when is_exact().
  const std::array<ExactCorrelation, 3>& exact_components() const;
  /// Exact components as reduced fractions; only valid when is_exact().
  std::array<Rational, 3> rational_components() const;

  const std::array<double, 3>& values() const { return values_; }
  double f12() const { return values_[0]; }
  double f13() const { return values_[1]; }
  double f23() const { return values_[2]; }

  static constexpr double kRangeTolerance = 1e-12;

private:
  CorrelationTriple() = default;
  std::optional<std::array<ExactCorrelation, 3>> exact_;
  std::array<double, 3> values_{};
};

/// Exact average of a list of outcome products (+1 / -1 each).
ExactCorrelation pair_correlation(std::span<const int> products);

/// F12, F13, F23 over the same M runs.
CorrelationTriple correlations_from_triples(const TripleDataset& ds);

/// F12 from G12 only, F13 from G13 only, F23 from G23 only.
CorrelationTriple correlations_from_pairs(const PairDataset& ds);

}  // namespace boole
