#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "boole/boole_engine.hpp"
#include "boole/core_model.hpp"
#include "boole/experiments.hpp"

namespace boole {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kTripleHeader = "alpha,a1,a2,a3";
inline constexpr std::string_view kPairHeader = "group,alpha,t_first,t_second,out_first,out_second";

/// CSV row failure; carries the 1-based line number.
class ParseError : public DataError {
public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

void write_triples_csv(std::ostream& os, const TripleDataset& ds);
TripleDataset read_triples_csv(std::istream& is);
TripleDataset parse_triples(const std::filesystem::path& path);

/// Groups in order 12, 13, 23; times in shortest round-trip decimal form.
void write_pairs_csv(std::ostream& os, const PairDataset& ds);
PairDataset read_pairs_csv(std::istream& is);
PairDataset parse_pairs(const std::filesystem::path& path);

/// Fixed 15-decimal rendering (scientific below 1e-3) used for every decimal field.
std::string render_decimal(double v);

using Document = nlohmann::ordered_json;

/// The report document: correlations, four facet margins keyed by pattern,
/// verdict, violation amount, per-group counts, scenario, seed, tool version.
Document report_document(const CorrelationTriple& c, const BooleReport& b, std::array<std::size_t, 3> counts,
                         std::string_view scenario, std::uint64_t seed);
Document report_document(const ExperimentReport& r);

enum class Format { json, csv, text };

Format parse_format(std::string_view text);

/// Emits a flat document (objects nest as dotted keys for csv / text).
void emit(std::ostream& os, const Document& doc, Format format);

}  // namespace boole
