#include <gtest/gtest.h>

#include <map>
#include <random>

#include "boole/boole_engine.hpp"
#include "oracles.hpp"

namespace boole {
namespace {

const Outcome P = Outcome::plus();
const Outcome M = Outcome::minus();

CorrelationTriple exact_unit(int a, int b, int c) {
  return CorrelationTriple::exact(ExactCorrelation(a, 1), ExactCorrelation(b, 1), ExactCorrelation(c, 1));
}

TEST(SignPattern, KeysAndProducts) {
  for (SignPattern s : kAllPatterns) {
    EXPECT_EQ(s.s12 * s.s13 * s.s23, -1);
    EXPECT_EQ(parse_pattern(s.key()), s);
  }
  EXPECT_EQ(kPpm.key(), "ppm");
  EXPECT_EQ(kMmm.key(), "mmm");
  EXPECT_THROW(parse_pattern("ppp"), DataError);
}

TEST(BooleMargins, Center) {
  const auto r = boole_margins(CorrelationTriple::exact(ExactCorrelation(0, 2), ExactCorrelation(0, 2), ExactCorrelation(0, 2)));
  for (const Margin& m : r.margins) EXPECT_EQ(*m.exact, Rational(1));
  EXPECT_EQ(r.verdict, Verdict::satisfied);
  EXPECT_EQ(*r.violation_amount.exact, Rational(0));
}

TEST(BooleMargins, PerfectlyCorrelatedBoundary) {
  const auto r = boole_margins(exact_unit(1, 1, 1));
  EXPECT_EQ(*r.margin(kPpm).exact, Rational(0));
  EXPECT_EQ(*r.margin(kPmp).exact, Rational(0));
  EXPECT_EQ(*r.margin(kMpp).exact, Rational(0));
  EXPECT_EQ(*r.margin(kMmm).exact, Rational(4));
  EXPECT_EQ(r.verdict, Verdict::satisfied);
}

TEST(BooleMargins, MaximalViolation) {
  const auto r = boole_margins(exact_unit(1, 1, -1));
  EXPECT_EQ(r.worst_pattern, kPpm);
  EXPECT_EQ(*r.worst_margin().exact, Rational(-2));
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_EQ(*r.violation_amount.exact, Rational(2));

  const auto approx = boole_margins(CorrelationTriple::approximate(1, 1, -1));
  EXPECT_EQ(approx.worst_pattern, kPpm);
  EXPECT_DOUBLE_EQ(approx.violation_amount.value, 2.0);
  EXPECT_FALSE(approx.violation_amount.exact);
}

TEST(BooleMargins, ApproximateTiesAreSatisfied) {
  EXPECT_EQ(boole_margins(CorrelationTriple::approximate(1, 1, 1)).verdict, Verdict::satisfied);
  EXPECT_EQ(boole_margins(CorrelationTriple::approximate(1, 1, 1 - 5e-13)).verdict, Verdict::satisfied);
  EXPECT_EQ(boole_margins(CorrelationTriple::approximate(1, 1, 1 - 1e-9)).verdict, Verdict::violated);
}

TEST(BooleMargins, MixedCountsUseCommonDenominator) {
  const auto c = CorrelationTriple::exact(ExactCorrelation(1, 3), ExactCorrelation(0, 4), ExactCorrelation(-1, 5));
  const auto r = boole_margins(c);
  // ppm: 1 - (1/3 + 0 + 1/5) = 7/15
  EXPECT_EQ(*r.margin(kPpm).exact, Rational(7, 15));
  for (const Margin& m : r.margins) EXPECT_EQ(60 % m.exact->den(), 0);
}

TEST(BooleMargins, FacetSumAndAbsoluteFormAgree) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20000; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const auto r = boole_margins(CorrelationTriple::approximate(a, b, c));
    double sum = 0.0;
    for (const Margin& m : r.margins) sum += m.value;
    EXPECT_NEAR(sum, 4.0, 1e-12);
    EXPECT_EQ(r.verdict == Verdict::satisfied, oracle::absolute_form_holds(a, b, c, kVerdictTolerance));
  }
}

TEST(PerSampleForm, Examples) {
  EXPECT_EQ(per_sample_form({1, P, P, P}, kPpm), 1);
  EXPECT_EQ(per_sample_form({1, P, M, M}, kPpm), -3);
  EXPECT_EQ(per_sample_form({1, M, P, M}, kMmm), 1);
}

TEST(ExhaustiveLemma, MatchesIntegerEnumeration) {
  const auto rows = exhaustive_lemma();
  ASSERT_EQ(rows.size(), 32u);
  std::map<std::string_view, std::map<int, int>> per_pattern;
  for (const LemmaRow& r : rows) {
    const std::array<int, 3> a{r.triple[0].value(), r.triple[1].value(), r.triple[2].value()};
    EXPECT_EQ(r.value, oracle::facet_form(a, {r.pattern.s12, r.pattern.s13, r.pattern.s23}));
    EXPECT_TRUE(r.value == 1 || r.value == -3);
    ++per_pattern[r.pattern.key()][r.value];
  }
  for (SignPattern s : kAllPatterns) {
    EXPECT_EQ(per_pattern[s.key()][1], 6);
    EXPECT_EQ(per_pattern[s.key()][-3], 2);
  }
  EXPECT_EQ(rows.front().triple, (std::array<Outcome, 3>{P, P, P}));
}

TEST(CheckTripleDataset, Examples) {
  auto r = check_triple_dataset(TripleDataset({{1, P, P, P}}));
  EXPECT_EQ(r.verdict, Verdict::satisfied);
  EXPECT_EQ(*r.worst_margin().exact, Rational(0));

  r = check_triple_dataset(TripleDataset({{1, P, P, M}, {2, M, P, P}}));
  // correlations (0, -1, 0)
  EXPECT_EQ(*r.margin(kPpm).exact, Rational(2));
  EXPECT_EQ(*r.margin(kPmp).exact, Rational(0));
  EXPECT_EQ(*r.margin(kMpp).exact, Rational(2));
  EXPECT_EQ(*r.margin(kMmm).exact, Rational(0));
  EXPECT_EQ(r.verdict, Verdict::satisfied);
}

TEST(CheckTripleDataset, TheoremOnRandomDatasets) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto runs = trial % 2 ? oracle::random_runs(rng, 1 + trial) : oracle::skewed_runs(rng, 1 + trial);
    const auto r = check_triple_dataset(oracle::to_dataset(runs));
    Rational sum(0);
    for (const Margin& m : r.margins) {
      EXPECT_GE(*m.exact, Rational(0));
      sum += *m.exact;
    }
    EXPECT_EQ(sum, Rational(4));
  }
}

TEST(CheckTripleDataset, ConcatenationIsWeightedMean) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto left = oracle::skewed_runs(rng, 1 + trial);
    const auto right = oracle::skewed_runs(rng, 3 + 2 * trial);
    auto joined = left;
    joined.insert(joined.end(), right.begin(), right.end());
    const auto a = check_triple_dataset(oracle::to_dataset(left));
    const auto b = check_triple_dataset(oracle::to_dataset(right));
    const auto c = check_triple_dataset(oracle::to_dataset(joined));
    const Rational ml(static_cast<std::int64_t>(left.size())), mr(static_cast<std::int64_t>(right.size()));
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_EQ(*c.margins[i].exact, (ml * *a.margins[i].exact + mr * *b.margins[i].exact) / (ml + mr));
    }
  }
}

TEST(CheckPairDataset, CopiesOfTripleMarginalsSatisfy) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto runs = oracle::skewed_runs(rng, 1 + trial);
    std::array<std::vector<PairRun>, 3> groups;
    for (GroupLabel g : kAllGroups) {
      const auto [i, j] = settings_of(g);
      for (const auto& r : runs) {
        groups[index_of(g)].push_back(PairRun{g, groups[index_of(g)].size() + 1, Outcome::from_int(r[i - 1]),
                                              Outcome::from_int(r[j - 1]), {}, {}});
      }
    }
    const auto r = check_pair_dataset(PairDataset(groups[0], groups[1], groups[2]));
    EXPECT_EQ(r.verdict, Verdict::satisfied);
  }
}

TEST(CheckPairDataset, MaximalViolationPoint) {
  using G = GroupLabel;
  const PairDataset ds({PairRun{G::g12, 1, P, P, {}, {}}}, {PairRun{G::g13, 1, P, P, {}, {}}},
                       {PairRun{G::g23, 1, P, M, {}, {}}});
  const auto r = check_pair_dataset(ds);
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_EQ(*r.violation_amount.exact, Rational(2));
}

}  // namespace
}  // namespace boole
