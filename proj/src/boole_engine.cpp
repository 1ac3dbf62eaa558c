#include "boole/boole_engine.hpp"

#include <algorithm>

namespace boole {

std::string_view SignPattern::key() const {
  return std::array<std::string_view, 4>{"ppm", "pmp", "mpp", "mmm"}[index_of(*this)];
}

std::size_t index_of(SignPattern s) {
  for (std::size_t i = 0; i < kAllPatterns.size(); ++i) {
    if (kAllPatterns[i] == s) return i;
  }
  throw std::invalid_argument("sign pattern with product +1");
}

SignPattern parse_pattern(std::string_view key) {
  for (SignPattern s : kAllPatterns) {
    if (s.key() == key) return s;
  }
  throw DataError("unknown facet key '" + std::string(key) + "'");
}

std::string_view to_string(Verdict v) { return v == Verdict::satisfied ? "satisfied" : "violated"; }

BooleReport boole_margins(const CorrelationTriple& c) {
  BooleReport report;
  const auto& f = c.values();
  for (double v : f) {
    if (v < -1.0 - CorrelationTriple::kRangeTolerance || v > 1.0 + CorrelationTriple::kRangeTolerance) {
      throw DataError("correlation out of range");
    }
  }

  if (c.is_exact()) {
    const auto r = c.rational_components();
    std::optional<Rational> worst;
    for (std::size_t i = 0; i < kAllPatterns.size(); ++i) {
      const SignPattern s = kAllPatterns[i];
      Rational m = Rational(1) - (Rational(s.s12) * r[0] + Rational(s.s13) * r[1] + Rational(s.s23) * r[2]);
      report.margins[i] = {m, m.to_double()};
      if (!worst || m < *worst) {
        worst = m;
        report.worst_pattern = s;
      }
    }
    report.verdict = *worst >= Rational(0) ? Verdict::satisfied : Verdict::violated;
    Rational amount = std::max(Rational(0), -*worst);
    report.violation_amount = {amount, amount.to_double()};
    return report;
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < kAllPatterns.size(); ++i) {
    const SignPattern s = kAllPatterns[i];
    double m = 1.0 - (s.s12 * f[0] + s.s13 * f[1] + s.s23 * f[2]);
    report.margins[i] = {std::nullopt, m};
    if (i == 0 || m < worst) {
      worst = m;
      report.worst_pattern = s;
    }
  }
  report.verdict = worst >= -kVerdictTolerance ? Verdict::satisfied : Verdict::violated;
  report.violation_amount = {std::nullopt, std::max(0.0, -worst)};
  return report;
}

int per_sample_form(const TripleRun& run, SignPattern s) {
  return s.s12 * (run.a1 * run.a2) + s.s13 * (run.a1 * run.a3) + s.s23 * (run.a2 * run.a3);
}

std::vector<LemmaRow> exhaustive_lemma() {
  std::vector<LemmaRow> rows;
  rows.reserve(32);
  const std::array<Outcome, 2> signs{Outcome::plus(), Outcome::minus()};
  for (Outcome a1 : signs) {
    for (Outcome a2 : signs) {
      for (Outcome a3 : signs) {
        for (SignPattern s : kAllPatterns) {
          rows.push_back({{a1, a2, a3}, s, per_sample_form(TripleRun{1, a1, a2, a3}, s)});
        }
      }
    }
  }
  return rows;
}

BooleReport check_triple_dataset(const TripleDataset& ds) { return boole_margins(correlations_from_triples(ds)); }

BooleReport check_pair_dataset(const PairDataset& ds) { return boole_margins(correlations_from_pairs(ds)); }

}  // namespace boole
