#include "boole/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "boole/boole_engine.hpp"
#include "boole/experiments.hpp"
#include "boole/io.hpp"
#include "boole/representability.hpp"

namespace boole {
namespace {

std::string triple_key(std::size_t k) {
  std::string s;
  for (Outcome o : sign_triple(k)) s += o.value() > 0 ? '+' : '-';
  return s;
}

Document lemma_document() {
  Document rows = Document::array();
  for (const LemmaRow& r : exhaustive_lemma()) {
    rows.push_back(Document{{"a1", r.triple[0].value()},
                            {"a2", r.triple[1].value()},
                            {"a3", r.triple[2].value()},
                            {"facet", std::string(r.pattern.key())},
                            {"value", r.value}});
  }
  return rows;
}

void emit_lemma(std::ostream& os, Format format) {
  const auto rows = exhaustive_lemma();
  auto sign = [](Outcome o) { return o.value() > 0 ? "+1" : "-1"; };
  switch (format) {
    case Format::json: os << Document{{"tool_version", std::string(kToolVersion)}, {"rows", lemma_document()}}.dump(2) << '\n'; break;
    case Format::csv:
      os << "a1,a2,a3,facet,value\n";
      for (const LemmaRow& r : rows) {
        os << sign(r.triple[0]) << ',' << sign(r.triple[1]) << ',' << sign(r.triple[2]) << ',' << r.pattern.key()
           << ',' << r.value << '\n';
      }
      break;
    case Format::text:
      os << "a1 a2 a3  facet  value\n";
      for (const LemmaRow& r : rows) {
        os << sign(r.triple[0]) << ' ' << sign(r.triple[1]) << ' ' << sign(r.triple[2]) << "  " << r.pattern.key()
           << "    " << (r.value > 0 ? " " : "") << r.value << '\n';
      }
      break;
  }
}

Document feasibility_document(const CorrelationTriple& c) {
  const FeasibilityResult result = find_joint_distribution(c);
  const BooleReport report = boole_margins(c);
  Document doc;
  doc["tool_version"] = std::string(kToolVersion);
  doc["targets"] = Document{{"f12", render_decimal(c.f12())}, {"f13", render_decimal(c.f13())}, {"f23", render_decimal(c.f23())}};
  doc["feasible"] = result.feasible();
  if (result.distribution) {
    Document weights = Document::object();
    for (std::size_t k = 0; k < 8; ++k) weights[triple_key(k)] = render_decimal(result.distribution->weights[k]);
    doc["distribution"] = weights;
  } else {
    doc["certificate"] = std::string(result.certificate->key());
    doc["certificate_margin"] = render_decimal(report.margin(*result.certificate).value);
  }
  return doc;
}

Document search_document() {
  const SearchResult all = violation_search_deterministic();
  const auto free_family = enumerate_context_free_strategies();
  const SearchResult free = search_strategies(free_family);
  Document maximizers = Document::array();
  for (const GroupStrategy& s : all.maximizers) maximizers.push_back(s.to_string());
  Document doc;
  doc["tool_version"] = std::string(kToolVersion);
  doc["strategies"] = enumerate_group_strategies().size();
  doc["violation_amount"] = all.violation_amount.to_string();
  doc["best"] = all.best.to_string();
  doc["maximizer_count"] = all.maximizers.size();
  doc["maximizers"] = maximizers;
  doc["context_free_strategies"] = free_family.size();
  doc["context_free_violation_amount"] = free.violation_amount.to_string();
  return doc;
}

Document context_free_document(const ContextFreeSummary& s, std::uint64_t seed) {
  Document doc;
  doc["tool_version"] = std::string(kToolVersion);
  doc["scenario"] = "context-free";
  doc["seed"] = seed;
  doc["trials"] = s.trials;
  doc["m_per_group"] = s.m_per_group;
  doc["worst_pair_margin"] = render_decimal(s.worst_pair_margin);
  doc["bound"] = render_decimal(s.bound);
  doc["within_bound"] = s.within_bound();
  doc["worst_triple_margin"] = s.worst_triple_margin.to_string();
  return doc;
}

void write_dataset(const std::string& path, const PairDataset& ds) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_pairs_csv(out, ds);
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boole inequality checks for dichotomic data", "boole"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::string format_name = "json";
  std::string out_path;
  app.add_option("--seed", seed, "Master seed")->capture_default_str();
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_option("--out", out_path, "Output file (default stdout)");

  std::string input;
  auto* check_triples = app.add_subcommand("check-triples", "Facet margins of a triple CSV");
  check_triples->add_option("file", input, "Triple CSV")->required();
  auto* check_pairs = app.add_subcommand("check-pairs", "Facet margins of a pair CSV");
  check_pairs->add_option("file", input, "Pair CSV")->required();

  double f12 = 0, f13 = 0, f23 = 0;
  auto* feasible = app.add_subcommand("feasible", "Joint distribution or facet certificate for targets");
  feasible->add_option("--f12", f12)->required();
  feasible->add_option("--f13", f13)->required();
  feasible->add_option("--f23", f23)->required();

  std::string r12, r13, r23;
  std::int64_t m = 0;
  auto* synthesize = app.add_subcommand("synthesize", "Triple CSV reproducing rational targets");
  synthesize->add_option("--f12", r12, "p/q or decimal")->required();
  synthesize->add_option("--f13", r13, "p/q or decimal")->required();
  synthesize->add_option("--f23", r23, "p/q or decimal")->required();
  synthesize->add_option("--m", m, "Number of runs")->required()->check(CLI::PositiveNumber);

  std::string scenario_name;
  std::int64_t dates = 3, patients = 1;
  double gamma = 0.1, dt = 0.5;
  std::optional<std::size_t> scenario_m;
  std::size_t trials = 100;
  std::string flip = "g23";
  std::string dataset_path;
  auto* scenario = app.add_subcommand("scenario", "Run a pair-collection scenario");
  scenario->add_option("name", scenario_name)->required()->check(CLI::IsMember({"doctors", "telegraph", "context-free"}));
  scenario->add_option("--dates", dates, "doctors: number of dates")->capture_default_str();
  scenario->add_option("--patients", patients, "doctors: patients per date")->capture_default_str();
  scenario->add_option("--gamma", gamma, "telegraph: flip rate")->capture_default_str();
  scenario->add_option("--dt", dt, "telegraph: time spacing")->capture_default_str();
  scenario->add_option("--m", scenario_m, "runs per group");
  scenario->add_option("--trials", trials, "context-free: random models")->capture_default_str();
  scenario->add_option("--flip", flip, "telegraph: apparatus sign schedule")->check(CLI::IsMember({"g23", "none"}))->capture_default_str();
  scenario->add_option("--dataset", dataset_path, "Also write the pair CSV here");

  auto* search = app.add_subcommand("search", "Exhaustive deterministic group strategies");
  auto* lemma = app.add_subcommand("lemma", "Per-run form over all triples and facets");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }

  const Format format = parse_format(format_name);
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return 1;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;

  try {
    if (*check_triples) {
      const TripleDataset ds = parse_triples(input);
      const std::size_t mm = ds.m();
      emit(sink, report_document(correlations_from_triples(ds), check_triple_dataset(ds), {mm, mm, mm}, "check-triples", seed), format);
    } else if (*check_pairs) {
      const PairDataset ds = parse_pairs(input);
      emit(sink, report_document(make_report(ds, "check-pairs", seed)), format);
    } else if (*feasible) {
      emit(sink, feasibility_document(CorrelationTriple::approximate(f12, f13, f23)), format);
    } else if (*synthesize) {
      const std::array<Rational, 3> targets{Rational::parse(r12), Rational::parse(r13), Rational::parse(r23)};
      write_triples_csv(sink, synthesize_triples(targets, m));
    } else if (*scenario) {
      if (scenario_name == "doctors") {
        const PairExperiment e = doctors_scenario(dates, patients, seed);
        if (!dataset_path.empty()) write_dataset(dataset_path, e.dataset);
        emit(sink, report_document(e.report), format);
      } else if (scenario_name == "telegraph") {
        TelegraphParams p;
        p.gamma = gamma;
        p.delta = dt;
        p.signs = flip == "g23" ? SignSchedule::flip_g23() : SignSchedule::identity();
        p.m_per_group = scenario_m.value_or(100000);
        p.seed = seed;
        const PairExperiment e = telegraph_scenario(p);
        if (!dataset_path.empty()) write_dataset(dataset_path, e.dataset);
        emit(sink, report_document(e.report), format);
      } else {
        emit(sink, context_free_document(context_free_property_run(trials, scenario_m.value_or(10000), seed), seed), format);
      }
    } else if (*search) {
      emit(sink, search_document(), format);
    } else if (*lemma) {
      emit_lemma(sink, format);
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace boole
