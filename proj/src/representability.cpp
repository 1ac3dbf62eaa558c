#include "boole/representability.hpp"

#include <algorithm>
#include <set>

#include "simplex.hpp"

namespace boole {
namespace {

// Correlation vertices (a1a2, a1a3, a2a3) of the sign triples 0..3; triple k
// and its global flip 7 - k share vertex k.
std::array<int, 3> vertex_of(std::size_t k) {
  const auto t = sign_triple(k);
  return {t[0] * t[1], t[0] * t[2], t[1] * t[2]};
}

// The facet on which vertex k has margin 4.
SignPattern opposite_facet(std::size_t k) {
  const auto v = vertex_of(k);
  return SignPattern{-v[0], -v[1], -v[2]};
}

std::array<Rational, 4> rational_margins(const std::array<Rational, 3>& c) {
  std::array<Rational, 4> out;
  for (std::size_t i = 0; i < kAllPatterns.size(); ++i) {
    const SignPattern s = kAllPatterns[i];
    out[i] = Rational(1) - (Rational(s.s12) * c[0] + Rational(s.s13) * c[1] + Rational(s.s23) * c[2]);
  }
  return out;
}

void require_in_range(const std::array<Rational, 3>& c) {
  for (const Rational& v : c) {
    if (v < Rational(-1) || v > Rational(1)) throw DataError("correlation out of range: " + v.to_string());
  }
}

}  // namespace

std::array<Outcome, 3> sign_triple(std::size_t k) {
  auto bit = [k](int b) { return (k >> b) & 1U ? Outcome::minus() : Outcome::plus(); };
  return {bit(2), bit(1), bit(0)};
}

std::array<double, 3> JointDistribution::induced_correlations() const {
  std::array<double, 3> f{};
  for (std::size_t k = 0; k < 8; ++k) {
    const auto v = vertex_of(k);
    for (std::size_t i = 0; i < 3; ++i) f[i] += weights[k] * v[i];
  }
  return f;
}

bool is_triple_representable(const CorrelationTriple& c, double tol) {
  const BooleReport report = boole_margins(c);
  if (c.is_exact()) return *report.worst_margin().exact >= Rational(0);
  return report.worst_margin().value >= -tol;
}

FeasibilityResult find_joint_distribution(const CorrelationTriple& c) {
  const BooleReport report = boole_margins(c);
  FeasibilityResult result;

  if (c.is_exact()) {
    if (report.verdict == Verdict::violated) {
      result.certificate = report.worst_pattern;
      return result;
    }
    // Barycentric weight of vertex k is margin(opposite facet) / 4, split
    // evenly between the two sign triples mapping onto it.
    JointDistribution d;
    std::array<Rational, 8> w;
    for (std::size_t k = 0; k < 4; ++k) {
      const Rational half = *report.margin(opposite_facet(k)).exact / Rational(8);
      w[k] = half;
      w[7 - k] = half;
    }
    for (std::size_t k = 0; k < 8; ++k) d.weights[k] = w[k].to_double();
    d.exact_weights = w;
    result.distribution = d;
    return result;
  }

  std::vector<std::vector<double>> a(4, std::vector<double>(8, 0.0));
  for (std::size_t k = 0; k < 8; ++k) {
    const auto v = vertex_of(k);
    a[0][k] = 1.0;
    for (std::size_t i = 0; i < 3; ++i) a[i + 1][k] = v[i];
  }
  const auto& f = c.values();
  auto x = detail::find_feasible_point(a, {1.0, f[0], f[1], f[2]}, kFeasibilityTolerance);
  if (!x) {
    if (report.worst_margin().value >= 0.0) {
      throw std::logic_error("feasibility solver rejected a target inside every facet");
    }
    result.certificate = report.worst_pattern;
    return result;
  }
  JointDistribution d;
  std::copy(x->begin(), x->end(), d.weights.begin());
  result.distribution = d;
  return result;
}

bool exactly_synthesizable(const std::array<Rational, 3>& targets, std::int64_t m) {
  require_in_range(targets);
  if (m < 1) return false;
  for (const Rational& margin : rational_margins(targets)) {
    const Rational n = Rational(m) * margin / Rational(4);
    if (n < Rational(0) || n.den() != 1) return false;
  }
  return true;
}

std::array<std::int64_t, 8> synthesis_multiplicities(const std::array<Rational, 3>& targets, std::int64_t m) {
  if (m < 1) throw DataError("synthesis needs m >= 1");
  require_in_range(targets);
  const auto margins = rational_margins(targets);
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (margins[i] < Rational(0)) {
      throw InfeasibleError(kAllPatterns[i], "targets not representable: facet " +
                                                 std::string(kAllPatterns[i].key()) + " has margin " +
                                                 margins[i].to_string());
    }
  }

  std::array<std::int64_t, 4> vertex_count{};
  std::array<Rational, 4> remainder;
  std::int64_t assigned = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const Rational ideal = Rational(m) * margins[index_of(opposite_facet(k))] / Rational(4);
    vertex_count[k] = ideal.floor();
    remainder[k] = ideal - Rational(vertex_count[k]);
    assigned += vertex_count[k];
  }
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return remainder[x] > remainder[y]; });
  for (std::size_t i = 0; assigned < m; ++i, ++assigned) ++vertex_count[order[i]];

  std::array<std::int64_t, 8> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    out[k] = vertex_count[k] - vertex_count[k] / 2;
    out[7 - k] = vertex_count[k] / 2;
  }
  return out;
}

TripleDataset synthesize_triples(const std::array<Rational, 3>& targets, std::int64_t m) {
  const auto counts = synthesis_multiplicities(targets, m);
  std::vector<std::array<Outcome, 3>> triples;
  triples.reserve(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < 8; ++k) {
    for (std::int64_t i = 0; i < counts[k]; ++i) triples.push_back(sign_triple(k));
  }
  return TripleDataset::from_outcomes(triples);
}

TripleDataset synthesize_triples(const CorrelationTriple& targets, std::int64_t m) {
  if (!targets.is_exact()) throw DataError("synthesis needs rational targets");
  return synthesize_triples(targets.rational_components(), m);
}

std::vector<CorrelationTriple> achievable_set_bruteforce(int m) {
  if (m < 1 || m > 6) throw DataError("brute-force enumeration needs 1 <= m <= 6");
  std::int64_t total = 1;
  for (int i = 0; i < m; ++i) total *= 8;

  std::set<std::array<std::int64_t, 3>> sums;
  for (std::int64_t code = 0; code < total; ++code) {
    std::array<std::int64_t, 3> s{};
    std::int64_t rest = code;
    for (int run = 0; run < m; ++run, rest /= 8) {
      const auto v = vertex_of(static_cast<std::size_t>(rest % 8));
      for (std::size_t i = 0; i < 3; ++i) s[i] += v[i];
    }
    sums.insert(s);
  }

  std::vector<CorrelationTriple> out;
  out.reserve(sums.size());
  for (const auto& s : sums) {
    auto c = CorrelationTriple::exact(ExactCorrelation(s[0], m), ExactCorrelation(s[1], m), ExactCorrelation(s[2], m));
    if (boole_margins(c).verdict != Verdict::satisfied) {
      throw std::logic_error("enumerated triple dataset violates a facet");
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace boole
