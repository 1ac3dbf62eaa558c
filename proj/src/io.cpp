#include "boole/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace boole {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

Outcome parse_outcome(std::string_view field, std::size_t line) {
  if (field == "+1") return Outcome::plus();
  if (field == "-1") return Outcome::minus();
  throw ParseError(line, "invalid outcome '" + std::string(field) + "'");
}

std::string_view render_outcome(Outcome o) { return o.value() > 0 ? "+1" : "-1"; }

std::size_t parse_alpha(std::string_view field, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || p != field.data() + field.size() || field.empty()) {
    throw ParseError(line, "invalid run index '" + std::string(field) + "'");
  }
  return v;
}

std::optional<double> parse_time(std::string_view field, std::size_t line) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || p != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError(line, "invalid time stamp '" + std::string(field) + "'");
  }
  return v;
}

std::string render_time(const std::optional<double>& t) {
  if (!t) return {};
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, *t);
  return std::string(buf, p);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

void expect_header(std::istream& is, std::string_view header) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(1, "missing header");
  if (strip_cr(line) != header) throw ParseError(1, "expected header '" + std::string(header) + "'");
}

Document exact_value(const Rational& r) {
  return Document{{"exact", r.to_string()}, {"decimal", render_decimal(r.to_double())}};
}

Document margin_value(const Margin& m) {
  if (m.exact) return exact_value(*m.exact);
  return Document{{"decimal", render_decimal(m.value)}};
}

void flatten(const Document& doc, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (doc.is_object()) {
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) flatten(doc[i], prefix + "." + std::to_string(i), out);
  } else if (doc.is_string()) {
    out.emplace_back(prefix, doc.get<std::string>());
  } else {
    out.emplace_back(prefix, doc.dump());
  }
}

}  // namespace

void write_triples_csv(std::ostream& os, const TripleDataset& ds) {
  os << kTripleHeader << '\n';
  for (const TripleRun& r : ds.runs()) {
    os << r.alpha << ',' << render_outcome(r.a1) << ',' << render_outcome(r.a2) << ',' << render_outcome(r.a3)
       << '\n';
  }
}

TripleDataset read_triples_csv(std::istream& is) {
  expect_header(is, kTripleHeader);
  std::vector<TripleRun> runs;
  std::string raw;
  for (std::size_t line = 2; std::getline(is, raw); ++line) {
    const std::string_view text = strip_cr(raw);
    if (text.empty()) continue;
    const auto f = split_fields(text);
    if (f.size() != 4) throw ParseError(line, "expected 4 fields");
    TripleRun r{parse_alpha(f[0], line), parse_outcome(f[1], line), parse_outcome(f[2], line),
                parse_outcome(f[3], line)};
    if (r.alpha != runs.size() + 1) throw ParseError(line, "non-contiguous runs");
    runs.push_back(r);
  }
  if (runs.empty()) throw DataError("empty sample");
  return TripleDataset(std::move(runs));
}

TripleDataset parse_triples(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_triples_csv(in);
}

void write_pairs_csv(std::ostream& os, const PairDataset& ds) {
  os << kPairHeader << '\n';
  for (GroupLabel g : kAllGroups) {
    for (const PairRun& r : ds.runs(g)) {
      os << to_string(g) << ',' << r.alpha << ',' << render_time(r.t_first) << ',' << render_time(r.t_second) << ','
         << render_outcome(r.out_first) << ',' << render_outcome(r.out_second) << '\n';
    }
  }
}

PairDataset read_pairs_csv(std::istream& is) {
  expect_header(is, kPairHeader);
  std::array<std::vector<PairRun>, 3> groups;
  std::string raw;
  for (std::size_t line = 2; std::getline(is, raw); ++line) {
    const std::string_view text = strip_cr(raw);
    if (text.empty()) continue;
    const auto f = split_fields(text);
    if (f.size() != 6) throw ParseError(line, "expected 6 fields");
    GroupLabel g;
    try {
      g = parse_group(f[0]);
    } catch (const DataError& e) {
      throw ParseError(line, e.what());
    }
    PairRun r{g, parse_alpha(f[1], line), parse_outcome(f[4], line), parse_outcome(f[5], line),
              parse_time(f[2], line), parse_time(f[3], line)};
    try {
      r.validate();
    } catch (const DataError& e) {
      throw ParseError(line, e.what());
    }
    auto& list = groups[index_of(g)];
    if (r.alpha != list.size() + 1) throw ParseError(line, "non-contiguous runs in group " + std::string(f[0]));
    list.push_back(r);
  }
  return PairDataset(std::move(groups[0]), std::move(groups[1]), std::move(groups[2]));
}

PairDataset parse_pairs(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_pairs_csv(in);
}

std::string render_decimal(double v) {
  char buf[64];
  if (v != 0.0 && std::abs(v) < 1e-3) {
    std::snprintf(buf, sizeof buf, "%.14e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.15f", v == 0.0 ? 0.0 : v);
  }
  return buf;
}

Document report_document(const CorrelationTriple& c, const BooleReport& b, std::array<std::size_t, 3> counts,
                         std::string_view scenario, std::uint64_t seed) {
  Document doc;
  doc["tool_version"] = std::string(kToolVersion);
  doc["scenario"] = std::string(scenario);
  doc["seed"] = seed;
  doc["counts"] = Document{{"12", counts[0]}, {"13", counts[1]}, {"23", counts[2]}};

  Document corr = Document::object();
  const std::array<std::string, 3> names{"f12", "f13", "f23"};
  for (std::size_t i = 0; i < 3; ++i) {
    if (c.is_exact()) {
      const ExactCorrelation& e = c.exact_components()[i];
      corr[names[i]] = Document{{"sum", e.sum()}, {"count", e.count()}, {"decimal", render_decimal(e.value())}};
    } else {
      corr[names[i]] = Document{{"decimal", render_decimal(c.values()[i])}};
    }
  }
  doc["correlations"] = corr;

  Document margins = Document::object();
  for (SignPattern s : kAllPatterns) margins[std::string(s.key())] = margin_value(b.margin(s));
  doc["margins"] = margins;
  doc["verdict"] = std::string(to_string(b.verdict));
  doc["worst_facet"] = std::string(b.worst_pattern.key());
  doc["violation_amount"] = margin_value(b.violation_amount);
  return doc;
}

Document report_document(const ExperimentReport& r) {
  return report_document(r.correlations, r.boole, r.counts, r.description, r.seed);
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "text") return Format::text;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

void emit(std::ostream& os, const Document& doc, Format format) {
  if (format == Format::json) {
    os << doc.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  if (format == Format::csv) {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << v << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
}

}  // namespace boole
