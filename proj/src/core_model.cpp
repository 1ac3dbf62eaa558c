#include "boole/core_model.hpp"

#include <cmath>

namespace boole {

Outcome Outcome::from_int(int v) {
  if (v != 1 && v != -1) throw DataError("invalid outcome: " + std::to_string(v));
  return Outcome(v);
}

TripleDataset::TripleDataset(std::vector<TripleRun> runs) : runs_(std::move(runs)) {
  if (runs_.empty()) throw DataError("empty sample");
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (runs_[i].alpha != i + 1) throw DataError("non-contiguous runs at alpha " + std::to_string(runs_[i].alpha));
  }
}

TripleDataset TripleDataset::from_outcomes(std::span<const std::array<Outcome, 3>> triples) {
  std::vector<TripleRun> runs;
  runs.reserve(triples.size());
  for (const auto& t : triples) runs.push_back({runs.size() + 1, t[0], t[1], t[2]});
  return TripleDataset(std::move(runs));
}

std::string_view to_string(GroupLabel g) {
  switch (g) {
    case GroupLabel::g12: return "12";
    case GroupLabel::g13: return "13";
    case GroupLabel::g23: return "23";
  }
  return "??";
}

GroupLabel parse_group(std::string_view text) {
  if (text == "12") return GroupLabel::g12;
  if (text == "13") return GroupLabel::g13;
  if (text == "23") return GroupLabel::g23;
  throw DataError("invalid group '" + std::string(text) + "'");
}

void PairRun::validate() const {
  if (t_first.has_value() != t_second.has_value()) throw DataError("incomplete timestamps");
  if (t_first && *t_first > *t_second) throw DataError("timestamps out of order");
}

PairDataset::PairDataset(std::vector<PairRun> runs_12, std::vector<PairRun> runs_13,
                         std::vector<PairRun> runs_23)
    : groups_{std::move(runs_12), std::move(runs_13), std::move(runs_23)} {
  for (GroupLabel g : kAllGroups) {
    const auto& runs = groups_[index_of(g)];
    if (runs.empty()) throw DataError("empty group " + std::string(to_string(g)));
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const PairRun& r = runs[i];
      if (r.group != g) throw DataError("run filed under wrong group " + std::string(to_string(g)));
      if (r.alpha != i + 1) {
        throw DataError("non-contiguous runs in group " + std::string(to_string(g)) + " at alpha " +
                        std::to_string(r.alpha));
      }
      r.validate();
    }
  }
}

PairDataset PairDataset::from_runs(std::span<const PairRun> runs) {
  std::array<std::vector<PairRun>, 3> split;
  for (const PairRun& r : runs) split[index_of(r.group)].push_back(r);
  return PairDataset(std::move(split[0]), std::move(split[1]), std::move(split[2]));
}

ExactCorrelation::ExactCorrelation(std::int64_t sum, std::int64_t count) : sum_(sum), count_(count) {
  if (count < 1) throw DataError("empty sample");
  if (sum > count || sum < -count) throw DataError("correlation sum exceeds count");
  if ((sum - count) % 2 != 0) throw DataError("correlation sum has wrong parity");
}

CorrelationTriple CorrelationTriple::exact(ExactCorrelation f12, ExactCorrelation f13, ExactCorrelation f23) {
  CorrelationTriple c;
  c.exact_ = std::array<ExactCorrelation, 3>{f12, f13, f23};
  c.values_ = {f12.value(), f13.value(), f23.value()};
  return c;
}

CorrelationTriple CorrelationTriple::approximate(double f12, double f13, double f23, double tol) {
  CorrelationTriple c;
  c.values_ = {f12, f13, f23};
  for (double v : c.values_) {
    if (!std::isfinite(v) || v < -1.0 - tol || v > 1.0 + tol) {
      throw DataError("correlation out of range: " + std::to_string(v));
    }
  }
  return c;
}

const std::array<ExactCorrelation, 3>& CorrelationTriple::exact_components() const {
  if (!exact_) throw std::logic_error("correlation triple is not exact");
  return *exact_;
}

std::array<Rational, 3> CorrelationTriple::rational_components() const {
  const auto& e = exact_components();
  return {e[0].as_rational(), e[1].as_rational(), e[2].as_rational()};
}

ExactCorrelation pair_correlation(std::span<const int> products) {
  if (products.empty()) throw DataError("empty sample");
  std::int64_t sum = 0;
  for (int p : products) {
    if (p != 1 && p != -1) throw DataError("invalid outcome product: " + std::to_string(p));
    sum += p;
  }
  return ExactCorrelation(sum, static_cast<std::int64_t>(products.size()));
}

CorrelationTriple correlations_from_triples(const TripleDataset& ds) {
  std::vector<int> p12, p13, p23;
  p12.reserve(ds.m());
  p13.reserve(ds.m());
  p23.reserve(ds.m());
  for (const TripleRun& r : ds.runs()) {
    p12.push_back(r.a1 * r.a2);
    p13.push_back(r.a1 * r.a3);
    p23.push_back(r.a2 * r.a3);
  }
  return CorrelationTriple::exact(pair_correlation(p12), pair_correlation(p13), pair_correlation(p23));
}

CorrelationTriple correlations_from_pairs(const PairDataset& ds) {
  auto group_correlation = [&](GroupLabel g) {
    std::vector<int> products;
    products.reserve(ds.count(g));
    for (const PairRun& r : ds.runs(g)) products.push_back(r.out_first * r.out_second);
    if (products.empty()) throw DataError("empty group");
    return pair_correlation(products);
  };
  return CorrelationTriple::exact(group_correlation(GroupLabel::g12), group_correlation(GroupLabel::g13),
                                  group_correlation(GroupLabel::g23));
}

}  // namespace boole
