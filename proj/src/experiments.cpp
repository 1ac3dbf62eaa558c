#include "boole/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace boole {

SplitMix64::result_type SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  SplitMix64 mix(seed);
  std::uint64_t h = mix();
  h = SplitMix64(h ^ (stream * 0xd1b54a32d192ed03ULL))();
  h = SplitMix64(h ^ (index * 0x8cb92ba72f3d8dd7ULL))();
  return SplitMix64(h);
}

// MeasurementModel -----------------------------------------------------------

MeasurementModel MeasurementModel::context_free(std::string description, Sampler sampler, ContextFreeRule rule) {
  MeasurementModel m;
  m.description_ = std::move(description);
  m.sampler_ = std::move(sampler);
  m.free_rule_ = std::move(rule);
  return m;
}

MeasurementModel MeasurementModel::contextual(std::string description, Sampler sampler, ContextualRule rule) {
  MeasurementModel m;
  m.description_ = std::move(description);
  m.sampler_ = std::move(sampler);
  m.contextual_rule_ = std::move(rule);
  return m;
}

Outcome MeasurementModel::outcome(int setting, Lambda lambda, GroupLabel group, std::optional<double> t) const {
  if (free_rule_) return free_rule_(setting, lambda);
  return contextual_rule_(setting, lambda, group, t);
}

// Schedule -------------------------------------------------------------------

Schedule::Schedule(std::vector<ScheduledRun> runs) : runs_(std::move(runs)) {
  for (const ScheduledRun& r : runs_) {
    if (r.t_first.has_value() != r.t_second.has_value()) throw DataError("incomplete timestamps");
    if (r.t_first && *r.t_first > *r.t_second) throw DataError("timestamps out of order");
    ++counts_[index_of(r.group)];
  }
  for (GroupLabel g : kAllGroups) {
    if (counts_[index_of(g)] == 0) throw DataError("empty group " + std::string(to_string(g)));
  }
}

Schedule Schedule::balanced(std::array<std::size_t, 3> counts,
                            std::array<std::optional<std::pair<double, double>>, 3> times) {
  std::vector<ScheduledRun> runs;
  runs.reserve(counts[0] + counts[1] + counts[2]);
  std::array<std::size_t, 3> emitted{};
  while (emitted != counts) {
    for (GroupLabel g : kAllGroups) {
      const std::size_t i = index_of(g);
      if (emitted[i] == counts[i]) continue;
      ScheduledRun r{g, std::nullopt, std::nullopt};
      if (times[i]) {
        r.t_first = times[i]->first;
        r.t_second = times[i]->second;
      }
      runs.push_back(r);
      ++emitted[i];
    }
  }
  return Schedule(std::move(runs));
}

// Protocols ------------------------------------------------------------------

ExperimentReport make_report(const PairDataset& ds, std::string description, std::uint64_t seed) {
  CorrelationTriple c = correlations_from_pairs(ds);
  BooleReport b = boole_margins(c);
  return ExperimentReport{c, b, ds.counts(), std::move(description), seed};
}

PairExperiment run_pair_protocol(const MeasurementModel& model, const Schedule& schedule, std::uint64_t seed) {
  std::array<std::vector<PairRun>, 3> groups;
  for (GroupLabel g : kAllGroups) groups[index_of(g)].reserve(schedule.counts()[index_of(g)]);

  for (const ScheduledRun& s : schedule.runs()) {
    auto& list = groups[index_of(s.group)];
    const std::size_t alpha = list.size() + 1;
    SplitMix64 rng = substream(seed, index_of(s.group), alpha);
    const Lambda lambda = model.sample(rng);
    const auto [first, second] = settings_of(s.group);
    list.push_back(PairRun{s.group, alpha, model.outcome(first, lambda, s.group, s.t_first),
                           model.outcome(second, lambda, s.group, s.t_second), s.t_first, s.t_second});
  }

  PairDataset ds(std::move(groups[0]), std::move(groups[1]), std::move(groups[2]));
  ExperimentReport report = make_report(ds, model.description(), seed);
  return PairExperiment{std::move(ds), std::move(report)};
}

TripleDataset run_triple_protocol(const MeasurementModel& model, std::size_t m, std::uint64_t seed) {
  if (!model.is_context_free()) throw DataError("triple collection needs a context-free model");
  constexpr std::uint64_t kTripleStream = 3;
  std::vector<TripleRun> runs;
  runs.reserve(m);
  for (std::size_t alpha = 1; alpha <= m; ++alpha) {
    SplitMix64 rng = substream(seed, kTripleStream, alpha);
    const Lambda lambda = model.sample(rng);
    // The group argument is never forwarded to a context-free rule.
    auto at = [&](int setting) { return model.outcome(setting, lambda, GroupLabel::g12, std::nullopt); };
    runs.push_back(TripleRun{alpha, at(1), at(2), at(3)});
  }
  return TripleDataset(std::move(runs));
}

// Doctors --------------------------------------------------------------------

GroupLabel doctors_group_on(std::int64_t date) {
  switch (((date % 3) + 3) % 3) {
    case 0: return GroupLabel::g12;
    case 1: return GroupLabel::g13;
    default: return GroupLabel::g23;
  }
}

Outcome doctors_rule(int doctor, std::int64_t date) {
  if (doctor == 2 && doctors_group_on(date) == GroupLabel::g23) return Outcome::minus();
  return Outcome::plus();
}

MeasurementModel doctors_model(DoctorRule rule) {
  auto sampler = [](SplitMix64& rng) -> Lambda { return rng(); };  // patient; never consulted
  auto contextual = [rule = std::move(rule)](int setting, Lambda, GroupLabel, std::optional<double> t) {
    if (!t) throw DataError("doctors model needs the examination date");
    return rule(setting, static_cast<std::int64_t>(std::llround(*t)));
  };
  return MeasurementModel::contextual("doctors", sampler, contextual);
}

PairExperiment doctors_scenario(std::int64_t num_dates, std::int64_t m_per_date, std::uint64_t seed,
                                DoctorRule rule) {
  if (num_dates < 3 || num_dates % 3 != 0) throw DataError("number of dates must be a positive multiple of 3");
  if (m_per_date < 1) throw DataError("need at least one patient per date");

  std::vector<ScheduledRun> runs;
  runs.reserve(static_cast<std::size_t>(num_dates * m_per_date));
  for (std::int64_t d = 0; d < num_dates; ++d) {
    const double date = static_cast<double>(d);
    for (std::int64_t p = 0; p < m_per_date; ++p) runs.push_back({doctors_group_on(d), date, date});
  }
  return run_pair_protocol(doctors_model(std::move(rule)), Schedule(std::move(runs)), seed);
}

// Telegraph ------------------------------------------------------------------

SignSchedule SignSchedule::flip_g23() {
  SignSchedule s;
  s.signs[index_of(GroupLabel::g23)][1] = -1;
  return s;
}

MeasurementModel telegraph_model(const TelegraphParams& p) {
  if (!(p.gamma >= 0.0)) throw DataError("gamma must be >= 0");
  if (!(p.delta > 0.0)) throw DataError("delta must be > 0");

  // lambda bit k holds the process sign at time k * delta (bit set = -1).
  auto sampler = [mean = p.gamma * p.delta](SplitMix64& rng) -> Lambda {
    Lambda path = std::uniform_int_distribution<int>(0, 1)(rng);
    if (mean == 0.0) return path * 0b111;  // frozen process
    std::poisson_distribution<long> flips(mean);
    for (int k = 1; k < 3; ++k) {
      const Lambda previous = (path >> (k - 1)) & 1U;
      const Lambda flipped = static_cast<Lambda>(flips(rng) & 1L);
      path |= (previous ^ flipped) << k;
    }
    return path;
  };
  auto rule = [delta = p.delta, signs = p.signs](int setting, Lambda lambda, GroupLabel g, std::optional<double> t) {
    if (!t) throw DataError("telegraph model needs the measurement time");
    const long k = std::lround(*t / delta);
    if (k < 0 || k > 2) throw DataError("measurement time outside the sampled window");
    const int process = ((lambda >> k) & 1U) ? -1 : 1;
    const int position = setting == settings_of(g).first ? 0 : 1;
    return Outcome::from_int(process * signs.signs[index_of(g)][position]);
  };
  return MeasurementModel::contextual("telegraph", sampler, rule);
}

std::array<double, 3> telegraph_expected_correlations(const TelegraphParams& p) {
  std::array<double, 3> out{};
  for (GroupLabel g : kAllGroups) {
    const auto [i, j] = settings_of(g);
    const double tau = (j - i) * p.delta;
    out[index_of(g)] = p.signs.product(g) * std::exp(-2.0 * p.gamma * tau);
  }
  return out;
}

double telegraph_expected_violation(double gamma, double delta) {
  const double x = std::exp(-2.0 * gamma * delta);
  return std::max(0.0, x * x + 2.0 * x - 1.0);
}

double telegraph_violation_threshold() { return std::sqrt(2.0) - 1.0; }

PairExperiment telegraph_scenario(const TelegraphParams& p) {
  if (p.m_per_group < 1) throw DataError("need at least one run per group");
  std::array<std::optional<std::pair<double, double>>, 3> times;
  for (GroupLabel g : kAllGroups) {
    const auto [i, j] = settings_of(g);
    times[index_of(g)] = std::pair{(i - 1) * p.delta, (j - 1) * p.delta};
  }
  const Schedule schedule = Schedule::balanced({p.m_per_group, p.m_per_group, p.m_per_group}, times);
  return run_pair_protocol(telegraph_model(p), schedule, p.seed);
}

// Search ---------------------------------------------------------------------

PairDataset GroupStrategy::induced_dataset() const {
  std::array<std::vector<PairRun>, 3> groups;
  for (GroupLabel g : kAllGroups) {
    const auto& o = outcomes[index_of(g)];
    groups[index_of(g)].push_back(PairRun{g, 1, o[0], o[1], std::nullopt, std::nullopt});
  }
  return PairDataset(std::move(groups[0]), std::move(groups[1]), std::move(groups[2]));
}

bool GroupStrategy::is_context_free() const {
  std::array<std::optional<Outcome>, 4> seen;
  for (GroupLabel g : kAllGroups) {
    const auto [i, j] = settings_of(g);
    const auto& o = outcomes[index_of(g)];
    for (auto [setting, value] : {std::pair{i, o[0]}, std::pair{j, o[1]}}) {
      if (seen[setting] && *seen[setting] != value) return false;
      seen[setting] = value;
    }
  }
  return true;
}

std::string GroupStrategy::to_string() const {
  std::string s;
  for (GroupLabel g : kAllGroups) {
    if (!s.empty()) s += ' ';
    s += boole::to_string(g);
    s += ':';
    for (Outcome o : outcomes[index_of(g)]) s += o.value() > 0 ? '+' : '-';
  }
  return s;
}

std::vector<GroupStrategy> enumerate_group_strategies() {
  std::vector<GroupStrategy> out;
  out.reserve(64);
  auto sign = [](unsigned bits, int b) { return (bits >> b) & 1U ? Outcome::minus() : Outcome::plus(); };
  for (unsigned code = 0; code < 64; ++code) {
    GroupStrategy s;
    for (std::size_t g = 0; g < 3; ++g) {
      const unsigned bits = (code >> (2 * (2 - g))) & 3U;
      s.outcomes[g] = {sign(bits, 1), sign(bits, 0)};
    }
    out.push_back(s);
  }
  return out;
}

std::vector<GroupStrategy> enumerate_context_free_strategies() {
  std::vector<GroupStrategy> out;
  out.reserve(8);
  for (unsigned code = 0; code < 8; ++code) {
    std::array<Outcome, 4> a{};
    for (int setting = 1; setting <= 3; ++setting) {
      a[setting] = (code >> (3 - setting)) & 1U ? Outcome::minus() : Outcome::plus();
    }
    GroupStrategy s;
    for (GroupLabel g : kAllGroups) {
      const auto [i, j] = settings_of(g);
      s.outcomes[index_of(g)] = {a[i], a[j]};
    }
    out.push_back(s);
  }
  return out;
}

SearchResult search_strategies(std::span<const GroupStrategy> strategies) {
  if (strategies.empty()) throw DataError("empty strategy family");
  SearchResult result{strategies.front(), Rational(-1), {}};
  for (const GroupStrategy& s : strategies) {
    const Rational amount = *check_pair_dataset(s.induced_dataset()).violation_amount.exact;
    if (amount > result.violation_amount) {
      result.best = s;
      result.violation_amount = amount;
      result.maximizers.clear();
    }
    if (amount == result.violation_amount) result.maximizers.push_back(s);
  }
  return result;
}

SearchResult violation_search_deterministic() {
  const auto all = enumerate_group_strategies();
  return search_strategies(all);
}

// Statement S ----------------------------------------------------------------

MeasurementModel random_context_free_model(SplitMix64& rng, std::string description) {
  const std::size_t letters = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  std::vector<double> cumulative(letters);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double total = 0.0;
  for (double& c : cumulative) c = (total += unit(rng) + 1e-3);
  for (double& c : cumulative) c /= total;

  std::vector<std::array<int, 3>> table(letters);
  std::uniform_int_distribution<int> coin(0, 1);
  for (auto& row : table) {
    for (int& v : row) v = coin(rng) ? 1 : -1;
  }

  auto sampler = [cumulative](SplitMix64& r) -> Lambda {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(r);
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return static_cast<Lambda>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                        static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
  };
  auto rule = [table](int setting, Lambda lambda) { return Outcome::from_int(table.at(lambda)[setting - 1]); };
  return MeasurementModel::context_free(std::move(description), sampler, rule);
}

std::vector<MeasurementModel> random_context_free_models(std::size_t count, std::uint64_t seed) {
  constexpr std::uint64_t kModelStream = 4;
  std::vector<MeasurementModel> models;
  models.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SplitMix64 rng = substream(seed, kModelStream, i);
    models.push_back(random_context_free_model(rng, "random-context-free-" + std::to_string(i)));
  }
  return models;
}

double context_free_margin_bound(std::size_t m_per_group) {
  return -5.0 * std::sqrt(3.0) / std::sqrt(static_cast<double>(m_per_group));
}

ContextFreeSummary context_free_property_run(std::span<const MeasurementModel> models, std::size_t m_per_group,
                                             std::uint64_t seed) {
  if (m_per_group < 100) throw DataError("context-free run needs m_per_group >= 100");
  ContextFreeSummary summary;
  summary.bound = context_free_margin_bound(m_per_group);
  summary.m_per_group = m_per_group;
  summary.worst_triple_margin = Rational(4);
  summary.worst_pair_margin = 4.0;
  const Schedule schedule = Schedule::balanced({m_per_group, m_per_group, m_per_group});
  for (std::size_t i = 0; i < models.size(); ++i) {
    const MeasurementModel& model = models[i];
    if (!model.is_context_free()) throw DataError("model '" + model.description() + "' is contextual");
    const std::uint64_t trial_seed = substream(seed, 5, i)();
    const PairExperiment pairs = run_pair_protocol(model, schedule, trial_seed);
    summary.worst_pair_margin = std::min(summary.worst_pair_margin, pairs.report.boole.worst_margin().value);
    const BooleReport triples = check_triple_dataset(run_triple_protocol(model, m_per_group, trial_seed));
    summary.worst_triple_margin = std::min(summary.worst_triple_margin, *triples.worst_margin().exact);
    ++summary.trials;
  }
  return summary;
}

ContextFreeSummary context_free_property_run(std::size_t trials, std::size_t m_per_group, std::uint64_t seed) {
  const auto models = random_context_free_models(trials, seed);
  return context_free_property_run(models, m_per_group, seed);
}

}  // namespace boole
