#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "boole/experiments.hpp"
#include "boole/representability.hpp"
#include "oracles.hpp"

namespace boole {
namespace {

MeasurementModel constant_plus() {
  return MeasurementModel::context_free(
      "constant", [](SplitMix64&) -> Lambda { return 0; }, [](int, Lambda) { return Outcome::plus(); });
}

MeasurementModel shared_sign() {
  return MeasurementModel::context_free(
      "shared-sign", [](SplitMix64& r) -> Lambda { return r() & 1U; },
      [](int, Lambda l) { return l ? Outcome::minus() : Outcome::plus(); });
}

TEST(Substream, DeterministicAndDistinct) {
  EXPECT_EQ(substream(42, 0, 1)(), substream(42, 0, 1)());
  EXPECT_NE(substream(42, 0, 1)(), substream(42, 1, 1)());
  EXPECT_NE(substream(42, 0, 1)(), substream(42, 0, 2)());
  EXPECT_NE(substream(42, 0, 1)(), substream(43, 0, 1)());
}

TEST(Schedule, BalancedCountsAndValidation) {
  const Schedule s = Schedule::balanced({3, 1, 2});
  EXPECT_EQ(s.counts(), (std::array<std::size_t, 3>{3, 1, 2}));
  EXPECT_EQ(s.runs().size(), 6u);
  EXPECT_THROW(Schedule::balanced({1, 0, 1}), DataError);
  EXPECT_THROW(Schedule({{GroupLabel::g12, 2.0, 1.0}, {GroupLabel::g13, {}, {}}, {GroupLabel::g23, {}, {}}}),
               DataError);
}

TEST(RunPairProtocol, ConstantRule) {
  const auto e = run_pair_protocol(constant_plus(), Schedule::balanced({5, 7, 3}), 1);
  EXPECT_EQ(e.report.correlations.values(), (std::array<double, 3>{1, 1, 1}));
  EXPECT_EQ(e.report.boole.verdict, Verdict::satisfied);
  EXPECT_EQ(e.report.counts, (std::array<std::size_t, 3>{5, 7, 3}));
}

TEST(RunPairProtocol, SharedSignGivesPerfectCorrelation) {
  const auto e = run_pair_protocol(shared_sign(), Schedule::balanced({100000, 100000, 100000}), 3);
  for (const auto& c : e.report.correlations.exact_components()) {
    EXPECT_EQ(c.sum(), 100000);
    EXPECT_EQ(c.count(), 100000);
  }
  // Lambda really is random: both signs appear.
  std::set<int> seen;
  for (const auto& r : e.dataset.runs(GroupLabel::g12)) seen.insert(r.out_first.value());
  EXPECT_EQ(seen.size(), 2u);
}

TEST(RunPairProtocol, DeterministicInSeed) {
  const auto schedule = Schedule::balanced({50, 50, 50});
  const auto model = random_context_free_models(1, 9).front();
  const auto a = run_pair_protocol(model, schedule, 17);
  const auto b = run_pair_protocol(model, schedule, 17);
  const auto c = run_pair_protocol(model, schedule, 18);
  EXPECT_EQ(a.dataset, b.dataset);
  EXPECT_NE(a.dataset, c.dataset);
  EXPECT_EQ(a.report.seed, 17u);
}

TEST(RunPairProtocol, ScheduleOrderDoesNotMatter) {
  // Substreams are keyed by (seed, group, alpha), so interleaving is irrelevant.
  const auto model = random_context_free_models(1, 4).front();
  std::vector<ScheduledRun> blocked;
  for (GroupLabel g : kAllGroups) {
    for (int i = 0; i < 40; ++i) blocked.push_back({g, {}, {}});
  }
  const auto a = run_pair_protocol(model, Schedule(blocked), 5);
  const auto b = run_pair_protocol(model, Schedule::balanced({40, 40, 40}), 5);
  EXPECT_EQ(a.dataset, b.dataset);
}

TEST(RunTripleProtocol, RejectsContextualModels) {
  EXPECT_THROW(run_triple_protocol(doctors_model(), 10, 1), DataError);
  const auto ds = run_triple_protocol(shared_sign(), 1000, 2);
  EXPECT_EQ(correlations_from_triples(ds).values(), (std::array<double, 3>{1, 1, 1}));
}

TEST(Doctors, RuleTable) {
  for (std::int64_t d = 0; d < 30; ++d) {
    EXPECT_EQ(doctors_rule(1, d), Outcome::plus());
    EXPECT_EQ(doctors_rule(3, d), Outcome::plus());
    EXPECT_EQ(doctors_rule(2, d), d % 3 == 2 ? Outcome::minus() : Outcome::plus());
  }
  EXPECT_EQ(doctors_group_on(3), GroupLabel::g12);
  EXPECT_EQ(doctors_group_on(4), GroupLabel::g13);
  EXPECT_EQ(doctors_group_on(5), GroupLabel::g23);
}

TEST(Doctors, ModelDependsOnlyOnDoctorAndDate) {
  const auto model = doctors_model();
  EXPECT_FALSE(model.is_context_free());
  for (int doctor = 1; doctor <= 3; ++doctor) {
    for (std::int64_t d = 0; d < 12; ++d) {
      for (Lambda l : {Lambda{0}, Lambda{1}, Lambda{0xdeadbeef}}) {
        for (GroupLabel g : kAllGroups) {
          EXPECT_EQ(model.outcome(doctor, l, g, static_cast<double>(d)), doctors_rule(doctor, d));
        }
      }
    }
  }
}

TEST(Doctors, ScenarioViolatesMaximally) {
  for (auto [dates, patients] : {std::pair{3, 1}, std::pair{300, 7}, std::pair{30, 2}}) {
    const auto e = doctors_scenario(dates, patients);
    EXPECT_EQ(e.report.correlations.values(), (std::array<double, 3>{1, 1, -1}));
    EXPECT_EQ(e.report.boole.verdict, Verdict::violated);
    EXPECT_EQ(*e.report.boole.violation_amount.exact, Rational(2));
    const std::size_t per_group = static_cast<std::size_t>(dates / 3 * patients);
    EXPECT_EQ(e.report.counts, (std::array<std::size_t, 3>{per_group, per_group, per_group}));
  }
}

TEST(Doctors, ConstantDoctorTwoRestoresInequality) {
  const auto e = doctors_scenario(3, 1, 0, [](int, std::int64_t) { return Outcome::plus(); });
  EXPECT_EQ(e.report.correlations.values(), (std::array<double, 3>{1, 1, 1}));
  EXPECT_EQ(e.report.boole.verdict, Verdict::satisfied);
}

TEST(Doctors, InvalidArguments) {
  EXPECT_THROW(doctors_scenario(4, 1), DataError);
  EXPECT_THROW(doctors_scenario(0, 1), DataError);
  EXPECT_THROW(doctors_scenario(3, 0), DataError);
}

TEST(Telegraph, FrozenProcess) {
  TelegraphParams p;
  p.gamma = 0.0;
  p.delta = 0.7;
  p.signs = SignSchedule::identity();
  p.m_per_group = 2000;
  const auto e = telegraph_scenario(p);
  EXPECT_EQ(e.report.correlations.values(), (std::array<double, 3>{1, 1, 1}));
  EXPECT_EQ(e.report.boole.verdict, Verdict::satisfied);
}

TEST(Telegraph, ExpectedCorrelationsMatchPoissonParityOracle) {
  TelegraphParams p;
  p.gamma = 0.3;
  p.delta = 0.8;
  p.signs = SignSchedule::identity();
  const auto expected = telegraph_expected_correlations(p);
  EXPECT_NEAR(expected[0], oracle::telegraph_correlation(0.3, 0.8), 1e-14);
  EXPECT_NEAR(expected[1], oracle::telegraph_correlation(0.3, 1.6), 1e-14);
  EXPECT_NEAR(expected[2], oracle::telegraph_correlation(0.3, 0.8), 1e-14);
  p.signs = SignSchedule::flip_g23();
  EXPECT_NEAR(telegraph_expected_correlations(p)[2], -expected[2], 1e-15);
}

TEST(Telegraph, ThresholdIsRootOfFacet) {
  // With (x, x^2, -x) the ppm margin is 1 - 2x - x^2.
  const double t = telegraph_violation_threshold();
  EXPECT_NEAR(1.0 - 2.0 * t - t * t, 0.0, 1e-15);
  for (double x = 0.0; x <= 1.0; x += 1.0 / 512) {
    const auto r = boole_margins(CorrelationTriple::approximate(x, x * x, -x));
    EXPECT_EQ(r.verdict == Verdict::violated, x > t + 1e-12) << x;
    // Identity schedule: (x, x^2, x) never violates since 2x - x^2 <= 1.
    EXPECT_EQ(boole_margins(CorrelationTriple::approximate(x, x * x, x)).verdict, Verdict::satisfied) << x;
  }
}

TEST(Telegraph, ModelConsultsClockAndGroup) {
  TelegraphParams p;
  p.delta = 1.0;
  const auto model = telegraph_model(p);
  EXPECT_FALSE(model.is_context_free());
  const Lambda all_plus = 0;
  EXPECT_EQ(model.outcome(3, all_plus, GroupLabel::g13, 2.0), Outcome::plus());
  EXPECT_EQ(model.outcome(3, all_plus, GroupLabel::g23, 2.0), Outcome::minus());  // apparatus sign
  const Lambda flipped_late = 0b100;
  EXPECT_EQ(model.outcome(3, flipped_late, GroupLabel::g13, 2.0), Outcome::minus());
  EXPECT_EQ(model.outcome(1, flipped_late, GroupLabel::g13, 0.0), Outcome::plus());
  EXPECT_THROW(model.outcome(1, all_plus, GroupLabel::g12, std::nullopt), DataError);
  p.delta = -1.0;
  EXPECT_THROW(telegraph_model(p), DataError);
}

TEST(Telegraph, MonteCarloNearAnalytic) {
  TelegraphParams p;
  p.m_per_group = 20000;
  p.seed = 3;
  const auto e = telegraph_scenario(p);
  const auto expected = telegraph_expected_correlations(p);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(e.report.correlations.values()[i], expected[i], 5.0 / std::sqrt(20000.0));
  }
  EXPECT_EQ(e.report.boole.verdict, Verdict::violated);
  EXPECT_EQ(e.report.boole.worst_pattern, kPpm);
}

TEST(Search, ExhaustiveMaximum) {
  const auto r = violation_search_deterministic();
  EXPECT_EQ(r.violation_amount, Rational(2));

  // Independent count on raw ints: a strategy hits 2 iff its product signs
  // (p12, p13, p23) equal one of the four facet patterns.
  int oracle_count = 0;
  for (int code = 0; code < 64; ++code) {
    auto bit = [&](int b) { return (code >> b) & 1 ? -1 : 1; };
    const int p12 = bit(5) * bit(4), p13 = bit(3) * bit(2), p23 = bit(1) * bit(0);
    if (p12 * p13 * p23 == -1) ++oracle_count;
  }
  EXPECT_EQ(static_cast<int>(r.maximizers.size()), oracle_count);
  EXPECT_EQ(r.maximizers.size(), 32u);

  for (const GroupStrategy& s : r.maximizers) EXPECT_FALSE(s.is_context_free()) << s.to_string();
  EXPECT_EQ(boole_margins(correlations_from_pairs(r.best.induced_dataset())).violation_amount.value, 2.0);
}

TEST(Search, ContextFreeFamilyNeverViolates) {
  const auto family = enumerate_context_free_strategies();
  ASSERT_EQ(family.size(), 8u);
  for (const GroupStrategy& s : family) EXPECT_TRUE(s.is_context_free());
  EXPECT_EQ(search_strategies(family).violation_amount, Rational(0));

  int context_free_in_all = 0;
  for (const GroupStrategy& s : enumerate_group_strategies()) context_free_in_all += s.is_context_free();
  EXPECT_EQ(context_free_in_all, 8);
}

TEST(ContextFree, ConstantRuleMargins) {
  const std::vector<MeasurementModel> models{constant_plus()};
  const auto s = context_free_property_run(models, 100, 1);
  EXPECT_EQ(s.worst_pair_margin, 0.0);
  EXPECT_EQ(s.worst_triple_margin, Rational(0));
  const auto e = run_pair_protocol(constant_plus(), Schedule::balanced({100, 100, 100}), 1);
  EXPECT_EQ(*e.report.boole.margin(kMmm).exact, Rational(4));
}

TEST(ContextFree, RandomModelsStayWithinBound) {
  const auto s = context_free_property_run(20, 2000, 8);
  EXPECT_EQ(s.trials, 20u);
  EXPECT_TRUE(s.within_bound()) << s.worst_pair_margin << " vs " << s.bound;
  EXPECT_GE(s.worst_triple_margin, Rational(0));
}

TEST(ContextFree, ExpectedCorrelationsAreRepresentable) {
  // Expected correlations of a finite context-free model are exact mixtures
  // of vertices, hence inside every facet.
  for (const auto& model : random_context_free_models(30, 12)) {
    std::array<double, 3> f{};
    std::array<double, 8> mass{};
    SplitMix64 rng(99);
    for (int i = 0; i < 4000; ++i) {
      const Lambda l = model.sample(rng);
      int k = 0;
      for (int s = 1; s <= 3; ++s) k = 2 * k + (model.outcome(s, l, GroupLabel::g12, {}).value() < 0);
      mass[k] += 1.0 / 4000;
    }
    for (std::size_t k = 0; k < 8; ++k) {
      const auto t = sign_triple(k);
      f[0] += mass[k] * (t[0] * t[1]);
      f[1] += mass[k] * (t[0] * t[2]);
      f[2] += mass[k] * (t[1] * t[2]);
    }
    EXPECT_TRUE(is_triple_representable(CorrelationTriple::approximate(f[0], f[1], f[2]), 1e-12));
  }
}

TEST(ContextFree, Preconditions) {
  const std::vector<MeasurementModel> contextual{doctors_model()};
  EXPECT_THROW(context_free_property_run(contextual, 100, 1), DataError);
  EXPECT_THROW(context_free_property_run(1, 99, 1), DataError);
}

}  // namespace
}  // namespace boole
