#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "boole/core_model.hpp"

namespace boole {

/// Signs (s12, s13, s23) of one linear facet 1 - (s12 F12 + s13 F13 + s23 F23) >= 0.
/// Admissible patterns have s12 * s13 * s23 = -1.
struct SignPattern {
  int s12;
  int s13;
  int s23;

  /// "ppm", "pmp", "mpp" or "mmm".
  std::string_view key() const;

  friend constexpr bool operator==(SignPattern, SignPattern) = default;
};

inline constexpr SignPattern kPpm{1, 1, -1};
inline constexpr SignPattern kPmp{1, -1, 1};
inline constexpr SignPattern kMpp{-1, 1, 1};
inline constexpr SignPattern kMmm{-1, -1, -1};
inline constexpr std::array<SignPattern, 4> kAllPatterns{kPpm, kPmp, kMpp, kMmm};

std::size_t index_of(SignPattern s);
/// Throws DataError for an unknown key.
SignPattern parse_pattern(std::string_view key);

/// A facet margin. Exact inputs carry the reduced fraction as well.
struct Margin {
  std::optional<Rational> exact;
  double value = 0.0;
};

enum class Verdict { satisfied, violated };

std::string_view to_string(Verdict v);

struct BooleReport {
  std::array<Margin, 4> margins;  // in kAllPatterns order
  Verdict verdict = Verdict::satisfied;
  Margin violation_amount;
  SignPattern worst_pattern = kPpm;

  const Margin& margin(SignPattern s) const { return margins[index_of(s)]; }
  const Margin& worst_margin() const { return margin(worst_pattern); }
};

/// Verdict tolerance for approximate inputs; exact inputs compare exactly.
inline constexpr double kVerdictTolerance = 1e-12;

/// All four facet margins of |F12 +- F13| <= 1 +- F23 plus verdict and worst facet.
BooleReport boole_margins(const CorrelationTriple& c);

/// s12 a1 a2 + s13 a1 a3 + s23 a2 a3; always 1 or -3.
int per_sample_form(const TripleRun& run, SignPattern s);

struct LemmaRow {
  std::array<Outcome, 3> triple;
  SignPattern pattern;
  int value;
};

/// per_sample_form over all 8 sign triples and all 4 patterns (32 rows),
/// triples in lexicographic order with +1 before -1.
std::vector<LemmaRow> exhaustive_lemma();

/// Margins of a triple-collected dataset; always satisfied, but computed.
BooleReport check_triple_dataset(const TripleDataset& ds);

/// Margins of three separately collected group averages. Either verdict possible.
BooleReport check_pair_dataset(const PairDataset& ds);

}  // namespace boole
