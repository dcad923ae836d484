#include "randnil/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iostream>
#include <limits>

#include <omp.h>

#include <nlohmann/json.hpp>

#include "randnil/dist.hpp"
#include "randnil/errors.hpp"

namespace randnil {

// --- length rules -----------------------------------------------------------

namespace {

struct KindName {
  LengthRule::Kind kind;
  const char* name;
};
constexpr KindName kKindNames[] = {{LengthRule::Kind::explicit_length, "explicit"},
                                   {LengthRule::Kind::sqrt, "sqrt"},
                                   {LengthRule::Kind::linear, "linear"},
                                   {LengthRule::Kind::quadratic, "quadratic"},
                                   {LengthRule::Kind::cubic, "cubic"}};

// ceil that ignores the last few ulps, so 0.5 * sqrt(2500) stays 25.
long ceil_tolerant(long double x) {
  const long double r = std::nearbyint(x);
  if (std::fabs(x - r) <= 1e-9L * std::max<long double>(1, std::fabs(x))) return static_cast<long>(r);
  return static_cast<long>(std::ceil(x));
}

}  // namespace

long LengthRule::resolve(int n) const {
  if (n < 2) throw InvalidArgument("dimension must be >= 2");
  const long double x = n;
  switch (kind) {
    case Kind::explicit_length: return length;
    case Kind::sqrt: return ceil_tolerant(c * std::sqrt(x));
    case Kind::linear: return ceil_tolerant(c * x);
    case Kind::quadratic: return ceil_tolerant(c * x * x);
    case Kind::cubic: return ceil_tolerant(c * x * x * x);
  }
  return length;
}

std::string LengthRule::kind_name() const {
  for (const auto& k : kKindNames)
    if (k.kind == kind) return k.name;
  return "explicit";
}

std::optional<double> LengthRule::constant() const {
  if (kind == Kind::explicit_length) return std::nullopt;
  return c;
}

LengthRule LengthRule::explicit_length_of(long length) {
  if (length < 0) throw InvalidArgument("explicit length must be >= 0");
  LengthRule r;
  r.kind = Kind::explicit_length;
  r.length = length;
  return r;
}

LengthRule LengthRule::scaled(Kind kind, double c) {
  if (kind == Kind::explicit_length) throw InvalidArgument("scaled rule needs a scaling kind");
  if (!(c > 0) || !std::isfinite(c)) throw InvalidArgument("length constant c must be positive");
  LengthRule r;
  r.kind = kind;
  r.c = c;
  return r;
}

LengthRule LengthRule::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (!head.empty() && std::all_of(head.begin(), head.end(), ::isdigit) && tail.empty())
      return explicit_length_of(std::stol(head));
    for (const auto& k : kKindNames) {
      if (head != k.name) continue;
      if (k.kind == Kind::explicit_length) {
        if (tail.empty()) break;
        std::size_t used = 0;
        const long len = std::stol(tail, &used);
        if (used != tail.size()) break;
        return explicit_length_of(len);
      }
      if (tail.empty()) return scaled(k.kind, 1.0);
      std::size_t used = 0;
      const double c = std::stod(tail, &used);
      if (used != tail.size()) break;
      return scaled(k.kind, c);
    }
  } catch (const std::logic_error&) {
  }
  throw InvalidArgument("bad length rule '" + text + "' (expected sqrt|linear|quadratic|cubic[:c] or explicit:L)");
}

// --- config -----------------------------------------------------------------

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"abelian-curve", "supercommute-gap", "zero-constant", "d-statistic",
                                                 "full-step-scan", "empty-bins",      "type-i-census"};
  return names;
}

void ExperimentConfig::validate() const {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end())
    throw InvalidArgument("unknown experiment '" + experiment + "'");
  if (n_values.empty()) throw InvalidArgument("no n values given");
  for (int n : n_values)
    if (n < 2) throw InvalidArgument("n must be >= 2, got " + std::to_string(n));
  if (rules.empty()) throw InvalidArgument("no length rule given");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (workers < 0) throw InvalidArgument("workers must be >= 0");
  if (format != "csv" && format != "json") throw InvalidArgument("format must be csv or json");
  if (bracket_ceiling < 2) throw InvalidArgument("bracket ceiling must be >= 2");
  if (experiment == "zero-constant")
    for (int n : n_values)
      if (coordinate < 1 || coordinate > n - 1)
        throw InvalidArgument("coordinate k = " + std::to_string(coordinate) + " outside [1, n-1] for n = " +
                              std::to_string(n));
  for (const LengthRule& r : rules)
    for (int n : n_values)
      if (r.resolve(n) < 0) throw InvalidArgument("negative word length");
}

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["experiment"] = c.experiment;
  j["n_values"] = c.n_values;
  auto rules = nlohmann::ordered_json::array();
  for (const LengthRule& r : c.rules) {
    if (r.kind == LengthRule::Kind::explicit_length)
      rules.push_back("explicit:" + std::to_string(r.length));
    else
      rules.push_back(r.kind_name() + ":" + nlohmann::json(r.c).dump());
  }
  j["rules"] = rules;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["output"] = c.output;
  j["format"] = c.format;
  j["records"] = c.records;
  j["coordinate"] = c.coordinate;
  j["bracket_ceiling"] = c.bracket_ceiling;
  j["census_ratio_min"] = c.census_ratio_min;
  j["census_ratio_max"] = c.census_ratio_max;
  return j.dump();
}

ExperimentConfig config_from_json(const std::string& text, ExperimentConfig c) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  static const std::vector<std::string> known = {"experiment", "n_values", "rules",      "trials",
                                                 "seed",       "workers",  "output",     "format",
                                                 "records",    "coordinate", "bracket_ceiling",
                                                 "census_ratio_min", "census_ratio_max"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw InvalidArgument("unknown config key '" + item.key() + "'");
  try {
    if (j.contains("experiment")) c.experiment = j["experiment"].get<std::string>();
    if (j.contains("n_values")) c.n_values = j["n_values"].get<std::vector<int>>();
    if (j.contains("rules")) {
      c.rules.clear();
      for (const auto& r : j["rules"]) c.rules.push_back(LengthRule::parse(r.get<std::string>()));
    }
    if (j.contains("trials")) c.trials = j["trials"].get<long>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("workers")) c.workers = j["workers"].get<int>();
    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("records")) c.records = j["records"].get<std::string>();
    if (j.contains("coordinate")) c.coordinate = j["coordinate"].get<int>();
    if (j.contains("bracket_ceiling")) c.bracket_ceiling = j["bracket_ceiling"].get<int>();
    if (j.contains("census_ratio_min")) c.census_ratio_min = j["census_ratio_min"].get<double>();
    if (j.contains("census_ratio_max")) c.census_ratio_max = j["census_ratio_max"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad config value: ") + e.what());
  }
  return c;
}

// --- trials -----------------------------------------------------------------

TrialRecord run_trial(int n, long length, std::uint64_t seed, long trial, const TrialOptions& options) {
  if (length > std::numeric_limits<int>::max()) throw InvalidArgument("word length too large");
  const auto stream = 2 * static_cast<std::uint64_t>(trial);
  Word v = sample_word({n, static_cast<int>(length), seed, stream});
  Word w = sample_word({n, static_cast<int>(length), seed, stream + 1});

  TrialRecord r;
  r.trial = trial;
  r.n = n;
  r.length = length;
  r.supercommute = supercommutes(v, w);
  const BinStatistics s = bin_statistics(v, w);
  r.F = s.F;
  r.B = s.B;
  r.D = s.D;
  r.empty_bins = s.empty_bins;
  r.type_i = find_type_i_configuration(v, w);
  r.type_i_count = count_type_i_configurations(v, w);
  if (options.coordinate >= 1) r.zero_coordinate = sgn(superdiagonal_of_word(v).at(options.coordinate)) == 0;

  if (options.abelian || options.full_step) {
    const GroupSample g(std::move(v), std::move(w));
    if (options.abelian) {
      r.abelian = is_abelian(g);
      if (r.supercommute && !*r.abelian)
        throw InvariantViolation("trial " + std::to_string(trial) + ": supercommuting pair does not commute");
      if (r.type_i && *r.abelian)
        throw InvariantViolation("trial " + std::to_string(trial) + ": type-i configuration on an abelian pair");
    }
    if (options.full_step) {
      r.full_step = full_step_status(g, options.full_step_options);
      if (n >= 3) r.corner_probe_zero = sgn(corner_probe(g)) == 0;
    }
  }
  return r;
}

std::vector<TrialRecord> run_trials(int n, long length, long count, std::uint64_t seed, const TrialOptions& options,
                                    int workers) {
  if (count < 0) throw InvalidArgument("trial count must be >= 0");
  std::vector<TrialRecord> out(static_cast<std::size_t>(count));
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  std::exception_ptr failure;
  long failed_at = count;

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (long k = 0; k < count; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = run_trial(n, length, seed, k, options);
    } catch (...) {
#pragma omp critical(randnil_trial_failure)
      if (k < failed_at) {
        failed_at = k;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<TrialRecord> run_trials_serial(int n, long length, long count, std::uint64_t seed,
                                           const TrialOptions& options) {
  if (count < 0) throw InvalidArgument("trial count must be >= 0");
  std::vector<TrialRecord> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) out.push_back(run_trial(n, length, seed, k, options));
  return out;
}

// --- statistics -------------------------------------------------------------

Proportion proportion(long successes, long trials) {
  if (trials < 1) throw InvalidArgument("proportion needs trials >= 1");
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1 - p) / static_cast<double>(trials))};
}

Proportion sample_mean(const std::vector<double>& xs) {
  if (xs.empty()) throw InvalidArgument("mean of an empty sample");
  const double m = static_cast<double>(xs.size());
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / m;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (m - 1)) / std::sqrt(m)};
}

double d_statistic_closed_form(int n, long length) {
  if (n < 3) throw InvalidArgument("closed form for D needs n >= 3");
  const double l = static_cast<double>(length);
  return 2 * l - (n - 1) * (1 - std::pow(1 - 2.0 / (n - 1), l));
}

// Bins 1 and n-1 have a single neighbor index, so they stay empty with
// probability (1 - 1/(n-1))^l rather than (1 - 2/(n-1))^l.
double d_statistic_boundary_exact(int n, long length) {
  if (n < 4) throw InvalidArgument("boundary-exact D needs n >= 4");
  const double l = static_cast<double>(length);
  const double interior = (n - 3) * (1 - std::pow(1 - 2.0 / (n - 1), l));
  const double ends = 2 * (1 - std::pow(1 - 1.0 / (n - 1), l));
  return 2 * l - interior - ends;
}

double expected_empty_bins(int n, long length) {
  return (n - 1) * std::pow(1 - 1.0 / (n - 1), 2.0 * static_cast<double>(length));
}

double expected_type_i_count(int n, long length) {
  if (n < 3 || length < 2) return 0.0;
  const double l = static_cast<double>(length);
  const double m = n - 1;
  const double odd_slots = std::floor(m / 2);  // odd i with i + 1 <= n - 1
  return odd_slots * l * l * (l - 1) / (m * m * m) * std::pow(1 - 2 / m, 2 * l - 3);
}

// --- experiments ------------------------------------------------------------

namespace {

struct Cell {
  int n;
  long length;
  const LengthRule* rule;
};

std::vector<Cell> cells(const ExperimentConfig& config) {
  config.validate();
  std::vector<Cell> out;
  for (const LengthRule& r : config.rules)
    for (int n : config.n_values) out.push_back({n, r.resolve(n), &r});
  return out;
}

SummaryRow make_row(const ExperimentConfig& config, const Cell& cell, const std::string& metric, Proportion p,
                    std::optional<double> theory) {
  SummaryRow row;
  row.experiment = config.experiment + ":" + metric;
  row.n = cell.n;
  row.length = cell.length;
  row.c = cell.rule->constant();
  row.trials = config.trials;
  row.estimate = p.estimate;
  row.stderr_ = p.stderr_;
  row.theory = theory;
  row.seed = config.seed;
  return row;
}

TrialOptions base_options(const ExperimentConfig& config) {
  TrialOptions o;
  o.full_step_options.bracket_ceiling = config.bracket_ceiling;
  return o;
}

std::vector<TrialRecord> trials_for(const ExperimentConfig& config, const Cell& cell, const TrialOptions& options,
                                    std::vector<TrialRecord>* sink) {
  auto recs = run_trials(cell.n, cell.length, config.trials, config.seed, options, config.workers);
  if (sink) sink->insert(sink->end(), recs.begin(), recs.end());
  return recs;
}

template <class Pred>
long count_if_records(const std::vector<TrialRecord>& recs, Pred pred) {
  return static_cast<long>(std::count_if(recs.begin(), recs.end(), pred));
}

template <class Field>
std::vector<double> column(const std::vector<TrialRecord>& recs, Field field) {
  std::vector<double> xs;
  xs.reserve(recs.size());
  for (const TrialRecord& r : recs) xs.push_back(static_cast<double>(field(r)));
  return xs;
}

std::optional<double> sqrt_rule_limit(const Cell& cell) {
  if (cell.rule->kind != LengthRule::Kind::sqrt) return std::nullopt;
  return std::exp(-2 * cell.rule->c * cell.rule->c);
}

}  // namespace

std::vector<SummaryRow> run_abelian_curve(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  TrialOptions o = base_options(config);
  o.abelian = true;
  std::vector<SummaryRow> rows;
  for (const Cell& cell : cells(config)) {
    const auto recs = trials_for(config, cell, o, records);
    const long ab = count_if_records(recs, [](const TrialRecord& r) { return *r.abelian; });
    const long sc = count_if_records(recs, [](const TrialRecord& r) { return r.supercommute; });
    rows.push_back(make_row(config, cell, "abelian", proportion(ab, config.trials), sqrt_rule_limit(cell)));
    rows.push_back(make_row(config, cell, "supercommute", proportion(sc, config.trials), sqrt_rule_limit(cell)));
  }
  return rows;
}

std::vector<SummaryRow> run_supercommute_gap(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  TrialOptions o = base_options(config);
  o.abelian = true;
  std::vector<SummaryRow> rows;
  for (const Cell& cell : cells(config)) {
    const auto recs = trials_for(config, cell, o, records);
    const long gap = count_if_records(recs, [](const TrialRecord& r) { return *r.abelian && !r.supercommute; });
    const std::optional<double> limit =
        cell.rule->kind == LengthRule::Kind::sqrt ? std::optional<double>(0.0) : std::nullopt;
    rows.push_back(make_row(config, cell, "gap", proportion(gap, config.trials), limit));
  }
  return rows;
}

std::vector<SummaryRow> run_zero_constant(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  TrialOptions o = base_options(config);
  o.coordinate = config.coordinate;
  std::vector<SummaryRow> rows;
  for (const Cell& cell : cells(config)) {
    const auto recs = trials_for(config, cell, o, records);
    const long zeros = count_if_records(recs, [](const TrialRecord& r) { return *r.zero_coordinate; });
    const Proportion p = proportion(zeros, config.trials);
    const auto params = LazyWalkParams::letter_model(cell.n, cell.length);
    rows.push_back(make_row(config, cell, "p_zero", p, quadrature_zero_probability(params).value));
    if (cell.length > 0) {
      const double scale = std::sqrt(static_cast<double>(cell.length) / cell.n);
      rows.push_back(make_row(config, cell, "scaled", {p.estimate * scale, p.stderr_ * scale}, kLocalLimitConstant));
    }
  }
  return rows;
}

std::vector<SummaryRow> run_d_statistic(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  const TrialOptions o = base_options(config);
  std::vector<SummaryRow> rows;
  for (const Cell& cell : cells(config)) {
    const auto recs = trials_for(config, cell, o, records);
    const Proportion mean = sample_mean(column(recs, [](const TrialRecord& r) { return r.D; }));
    rows.push_back(make_row(config, cell, "mean_D", mean,
                            cell.n >= 3 ? std::optional<double>(d_statistic_closed_form(cell.n, cell.length))
                                        : std::nullopt));
    if (cell.rule->kind == LengthRule::Kind::sqrt)
      rows.push_back(make_row(config, cell, "mean_D_limit", mean, 2 * cell.rule->c * cell.rule->c));
    if (cell.n >= 4)
      rows.push_back(make_row(config, cell, "mean_D_boundary", mean, d_statistic_boundary_exact(cell.n, cell.length)));
  }
  return rows;
}

std::vector<SummaryRow> run_full_step_scan(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  TrialOptions o = base_options(config);
  o.abelian = true;
  o.full_step = true;
  std::vector<SummaryRow> rows;
  for (const Cell& cell : cells(config)) {
    const auto recs = trials_for(config, cell, o, records);
    const long yes = count_if_records(recs, [](const TrialRecord& r) { return *r.full_step == FullStep::yes; });
    const long und =
        count_if_records(recs, [](const TrialRecord& r) { return *r.full_step == FullStep::undetermined; });
    const long ab = count_if_records(recs, [](const TrialRecord& r) { return *r.abelian; });
    rows.push_back(make_row(config, cell, "full_step", proportion(yes, config.trials), std::nullopt));
    rows.push_back(make_row(config, cell, "undetermined", proportion(und, config.trials), std::nullopt));
    rows.push_back(make_row(config, cell, "abelian", proportion(ab, config.trials), std::nullopt));
  }
  return rows;
}

std::vector<SummaryRow> run_empty_bins(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  const TrialOptions o = base_options(config);
  std::vector<SummaryRow> rows;
  for (const Cell& cell : cells(config)) {
    const auto recs = trials_for(config, cell, o, records);
    const long any = count_if_records(recs, [](const TrialRecord& r) { return r.empty_bins > 0; });
    rows.push_back(make_row(config, cell, "any_empty", proportion(any, config.trials), std::nullopt));
    rows.push_back(make_row(config, cell, "mean_empty",
                            sample_mean(column(recs, [](const TrialRecord& r) { return r.empty_bins; })),
                            expected_empty_bins(cell.n, cell.length)));
  }
  return rows;
}

std::vector<SummaryRow> run_type_i_census(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  TrialOptions o = base_options(config);
  o.abelian = true;
  std::vector<SummaryRow> rows;
  for (const Cell& cell : cells(config)) {
    const double ratio = static_cast<double>(cell.length) / cell.n;
    if (ratio < config.census_ratio_min || ratio > config.census_ratio_max)
      std::cerr << "warning: type-i census at n=" << cell.n << " ell=" << cell.length << " has ell/n=" << ratio
                << " outside [" << config.census_ratio_min << ", " << config.census_ratio_max << "]\n";
    const auto recs = trials_for(config, cell, o, records);
    rows.push_back(make_row(config, cell, "mean_X",
                            sample_mean(column(recs, [](const TrialRecord& r) { return r.type_i_count; })),
                            expected_type_i_count(cell.n, cell.length)));
    const long any = count_if_records(recs, [](const TrialRecord& r) { return r.type_i.has_value(); });
    rows.push_back(make_row(config, cell, "any_type_i", proportion(any, config.trials), std::nullopt));
  }
  return rows;
}

std::vector<SummaryRow> run_experiment(const ExperimentConfig& config, std::vector<TrialRecord>* records) {
  const std::string& e = config.experiment;
  if (e == "abelian-curve") return run_abelian_curve(config, records);
  if (e == "supercommute-gap") return run_supercommute_gap(config, records);
  if (e == "zero-constant") return run_zero_constant(config, records);
  if (e == "d-statistic") return run_d_statistic(config, records);
  if (e == "full-step-scan") return run_full_step_scan(config, records);
  if (e == "empty-bins") return run_empty_bins(config, records);
  if (e == "type-i-census") return run_type_i_census(config, records);
  throw InvalidArgument("unknown experiment '" + e + "'");
}

std::vector<SummaryRow> oracle_rows(const ExhaustiveResult& r) {
  std::vector<SummaryRow> rows;
  auto add = [&](const std::string& metric, std::uint64_t count) {
    SummaryRow row;
    row.experiment = "oracle-enumerate:" + metric;
    row.n = r.n;
    row.length = r.length;
    row.trials = static_cast<long>(r.total_pairs);
    row.exact = r.probability(count);
    row.estimate = row.exact->get_d();
    row.theory = row.estimate;
    rows.push_back(row);
  };
  add("abelian", r.abelian);
  add("supercommute", r.supercommute);
  add("gap", r.gap);
  add("full_step", r.full_step);
  for (const auto& [s, c] : r.step_counts) add("step_" + std::to_string(s), c);
  return rows;
}

}  // namespace randnil
