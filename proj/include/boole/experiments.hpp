#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boole/boole_engine.hpp"
#include "boole/core_model.hpp"
#include "boole/rational.hpp"

namespace boole {

/// SplitMix64 generator; used for per-run substreams.
class SplitMix64 {
public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

private:
  std::uint64_t state_;
};

/// Independent substream for (master seed, stream, index). Stream ids 0..2
/// are the pair groups; higher ids are free for other protocols.
SplitMix64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Opaque preparation state handed to every measurement of a run.
using Lambda = std::uint64_t;

/// A measurement strategy. Context-free models see only (setting, lambda);
/// contextual models additionally see the group and the measurement time.
class MeasurementModel {
public:
  using Sampler = std::function<Lambda(SplitMix64&)>;
  using ContextFreeRule = std::function<Outcome(int setting, Lambda)>;
  using ContextualRule = std::function<Outcome(int setting, Lambda, GroupLabel, std::optional<double> t)>;

  static MeasurementModel context_free(std::string description, Sampler sampler, ContextFreeRule rule);
  static MeasurementModel contextual(std::string description, Sampler sampler, ContextualRule rule);

  bool is_context_free() const { return static_cast<bool>(free_rule_); }
  const std::string& description() const { return description_; }

  Lambda sample(SplitMix64& rng) const { return sampler_(rng); }

  /// Group and time are forwarded only to contextual rules.
  Outcome outcome(int setting, Lambda lambda, GroupLabel group, std::optional<double> t) const;

private:
  MeasurementModel() = default;
  std::string description_;
  Sampler sampler_;
  ContextFreeRule free_rule_;
  ContextualRule contextual_rule_;
};

struct ScheduledRun {
  GroupLabel group = GroupLabel::g12;
  std::optional<double> t_first;
  std::optional<double> t_second;
};

/// Which group (and at which times) each run alpha = 1..N measures.
class Schedule {
public:
  explicit Schedule(std::vector<ScheduledRun> runs);

  /// Round-robin G12, G13, G23 until every group has its count. Optional
  /// per-group (t_first, t_second).
  static Schedule balanced(std::array<std::size_t, 3> counts,
                           std::array<std::optional<std::pair<double, double>>, 3> times = {});

  const std::vector<ScheduledRun>& runs() const { return runs_; }
  std::array<std::size_t, 3> counts() const { return counts_; }

private:
  std::vector<ScheduledRun> runs_;
  std::array<std::size_t, 3> counts_{};
};

struct ExperimentReport {
  CorrelationTriple correlations;
  BooleReport boole;
  std::array<std::size_t, 3> counts{};
  std::string description;
  std::uint64_t seed = 0;
};

struct PairExperiment {
  PairDataset dataset;
  ExperimentReport report;
};

ExperimentReport make_report(const PairDataset& ds, std::string description, std::uint64_t seed);

/// One fresh lambda per scheduled run, drawn from substream(seed, group, alpha).
PairExperiment run_pair_protocol(const MeasurementModel& model, const Schedule& schedule, std::uint64_t seed);

/// Triple collection of a context-free model: one lambda per run, all three
/// settings measured on it.
TripleDataset run_triple_protocol(const MeasurementModel& model, std::size_t m, std::uint64_t seed);

// Doctors and patients --------------------------------------------------------

using DoctorRule = std::function<Outcome(int doctor, std::int64_t date)>;

/// Group examining on a date: d mod 3 = 0 -> G12, 1 -> G13, 2 -> G23.
GroupLabel doctors_group_on(std::int64_t date);

/// Doctors 1 and 3 always report +1; doctor 2 reports -1 on G23 dates only.
Outcome doctors_rule(int doctor, std::int64_t date);

/// The rule wrapped as a contextual model: the date arrives as measurement time.
MeasurementModel doctors_model(DoctorRule rule = doctors_rule);

PairExperiment doctors_scenario(std::int64_t num_dates, std::int64_t m_per_date, std::uint64_t seed = 0,
                                DoctorRule rule = doctors_rule);

// Random telegraph process with an apparatus clock ---------------------------

/// Apparatus sign applied to each outcome: signs[group][position], position 0
/// for the lower setting of the group.
struct SignSchedule {
  std::array<std::array<int, 2>, 3> signs{{{1, 1}, {1, 1}, {1, 1}}};

  static SignSchedule identity() { return {}; }
  /// Flips the second (setting 3) outcome of G23 only.
  static SignSchedule flip_g23();
  int product(GroupLabel g) const { return signs[index_of(g)][0] * signs[index_of(g)][1]; }
};

struct TelegraphParams {
  double gamma = 0.1;
  double delta = 0.5;
  SignSchedule signs = SignSchedule::flip_g23();
  std::size_t m_per_group = 100000;
  std::uint64_t seed = 42;
};

/// Settings are read at times t_i = (i - 1) * delta from a +-1 process that
/// starts uniform and flips at Poisson rate gamma.
MeasurementModel telegraph_model(const TelegraphParams& p);

/// sign product * exp(-2 gamma tau) for each group's time gap tau.
std::array<double, 3> telegraph_expected_correlations(const TelegraphParams& p);

/// x^2 + 2x - 1 with x = exp(-2 gamma delta), clamped at 0; the flip_g23 schedule's
/// expected violation.
double telegraph_expected_violation(double gamma, double delta);

/// exp(-2 gamma delta) above this value violates with the flip_g23 schedule.
double telegraph_violation_threshold();

PairExperiment telegraph_scenario(const TelegraphParams& p);

// Exhaustive deterministic search -------------------------------------------

/// One deterministic outcome pair per group (ordered by setting).
struct GroupStrategy {
  std::array<std::array<Outcome, 2>, 3> outcomes{};

  /// Single run per group.
  PairDataset induced_dataset() const;
  /// True iff every setting gets the same outcome in both groups that measure it.
  bool is_context_free() const;
  std::string to_string() const;
};

/// All 4^3 = 64 group strategies.
std::vector<GroupStrategy> enumerate_group_strategies();
/// The 8 strategies induced by fixed (a1, a2, a3).
std::vector<GroupStrategy> enumerate_context_free_strategies();

struct SearchResult {
  GroupStrategy best;
  Rational violation_amount;
  std::vector<GroupStrategy> maximizers;
};

SearchResult search_strategies(std::span<const GroupStrategy> strategies);
SearchResult violation_search_deterministic();

// Statement-S restoration ----------------------------------------------------

/// Random finite lambda alphabet (1..8 letters) with random weights and a
/// uniformly drawn +-1 rule table.
MeasurementModel random_context_free_model(SplitMix64& rng, std::string description);

std::vector<MeasurementModel> random_context_free_models(std::size_t count, std::uint64_t seed);

struct ContextFreeSummary {
  double worst_pair_margin = 0.0;
  Rational worst_triple_margin;
  double bound = 0.0;  // -5 sqrt(3) / sqrt(m)
  std::size_t trials = 0;
  std::size_t m_per_group = 0;

  bool within_bound() const { return worst_pair_margin >= bound; }
};

/// -5 sqrt(3) / sqrt(m).
double context_free_margin_bound(std::size_t m_per_group);

/// Runs each model in pair mode (m per group) and in triple mode (m runs).
ContextFreeSummary context_free_property_run(std::span<const MeasurementModel> models, std::size_t m_per_group,
                                             std::uint64_t seed);
ContextFreeSummary context_free_property_run(std::size_t trials, std::size_t m_per_group, std::uint64_t seed);

}  // namespace boole
