#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "boole/boole_engine.hpp"
#include "boole/core_model.hpp"
#include "boole/rational.hpp"

namespace boole {

/// The 8 sign triples in lexicographic order, +1 before -1:
/// index k has a1 = -1 iff bit 2 is set, a2 iff bit 1, a3 iff bit 0.
std::array<Outcome, 3> sign_triple(std::size_t k);

/// Weights over the 8 sign triples (sign_triple order).
struct JointDistribution {
  std::array<double, 8> weights{};
  /// Present when the distribution was built on the exact rational path.
  std::optional<std::array<Rational, 8>> exact_weights;

  /// (sum w a1 a2, sum w a1 a3, sum w a2 a3).
  std::array<double, 3> induced_correlations() const;
};

struct FeasibilityResult {
  std::optional<JointDistribution> distribution;
  /// Facet with negative margin; set iff distribution is not.
  std::optional<SignPattern> certificate;

  bool feasible() const { return distribution.has_value(); }
};

/// Targets that cannot come from triple-collected data.
class InfeasibleError : public DataError {
public:
  InfeasibleError(SignPattern certificate, const std::string& what)
      : DataError(what), certificate_(certificate) {}
  SignPattern certificate() const { return certificate_; }

private:
  SignPattern certificate_;
};

inline constexpr double kFeasibilityTolerance = 1e-9;

/// True iff every facet margin is >= -tol (>= 0 exactly for exact inputs).
bool is_triple_representable(const CorrelationTriple& c, double tol = kFeasibilityTolerance);

/// Exact inputs: closed-form rational mixture over the four correlation vertices.
/// Approximate inputs: phase-one simplex on the 8-weight system.
FeasibilityResult find_joint_distribution(const CorrelationTriple& c);

/// Number of runs each sign triple receives when synthesizing `targets` with m runs.
/// Rounds at the level of the four correlation vertices (largest remainder,
/// ties to lexicographic order), then splits each vertex count between the
/// triple with a1 = +1 (ceil) and its global flip (floor).
std::array<std::int64_t, 8> synthesis_multiplicities(const std::array<Rational, 3>& targets, std::int64_t m);

/// m triples whose empirical correlations lie within 2/m of the targets.
/// Throws InfeasibleError when a facet margin is negative.
TripleDataset synthesize_triples(const std::array<Rational, 3>& targets, std::int64_t m);
TripleDataset synthesize_triples(const CorrelationTriple& targets, std::int64_t m);

/// True when some dataset of exactly m triples reproduces the targets with
/// no error: every m * margin / 4 is a nonnegative integer.
bool exactly_synthesizable(const std::array<Rational, 3>& targets, std::int64_t m);

/// Every exact correlation triple reachable by some dataset of m triples
/// (all 8^m assignments enumerated), sorted by (sum12, sum13, sum23).
std::vector<CorrelationTriple> achievable_set_bruteforce(int m);

}  // namespace boole
