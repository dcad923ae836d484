#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "randnil/analysis.hpp"
#include "randnil/oracle.hpp"

namespace randnil {

/// How a trial's word length follows from n: an explicit value or
/// ceil(c * n^e) for e in {1/2, 1, 2, 3}.
struct LengthRule {
  enum class Kind { explicit_length, sqrt, linear, quadratic, cubic };
  Kind kind = Kind::sqrt;
  double c = 1.0;
  long length = 0;  // explicit_length only

  long resolve(int n) const;
  /// "sqrt", "linear", "quadratic", "cubic" or "explicit".
  std::string kind_name() const;
  /// c for scaled rules, nullopt for explicit lengths.
  std::optional<double> constant() const;

  /// Parses "sqrt:0.5", "linear", "cubic:2", "explicit:40" or a bare integer.
  static LengthRule parse(const std::string& text);
  static LengthRule explicit_length_of(long length);
  static LengthRule scaled(Kind kind, double c);
};

struct ExperimentConfig {
  std::string experiment;
  std::vector<int> n_values;
  std::vector<LengthRule> rules;
  long trials = 10000;
  std::uint64_t seed = 0;
  int workers = 0;  // 0: all available threads
  std::string output;
  std::string format = "csv";
  std::string records;          // optional raw TrialRecord CSV
  int coordinate = 1;           // superdiagonal index k for zero-constant
  int bracket_ceiling = 22;     // full-step exhaustive bracket search
  double census_ratio_min = 0.25;  // type-i census regime on l / n
  double census_ratio_max = 4.0;

  /// Throws InvalidArgument on an unknown experiment, no n values, no rules,
  /// trials < 1, n < 2 or a bad format.
  void validate() const;
};

std::string config_to_json(const ExperimentConfig& config);
/// Fields absent from `json` keep the values already in `base`.
ExperimentConfig config_from_json(const std::string& json, ExperimentConfig base = {});

const std::vector<std::string>& experiment_names();

/// Which per-trial quantities to compute beyond the O(l + n) letter counts.
struct TrialOptions {
  bool abelian = false;       // exact matrix test
  bool full_step = false;     // certificate, corner probe, bracket search
  int coordinate = 0;         // record v_k == 0 when k >= 1
  FullStepOptions full_step_options;
};

struct TrialRecord {
  long trial = 0;
  int n = 2;
  long length = 0;
  std::optional<bool> abelian;
  bool supercommute = false;
  long F = 0, B = 0, D = 0, empty_bins = 0;
  std::optional<FullStep> full_step;
  std::optional<bool> corner_probe_zero;
  std::optional<int> type_i;
  int type_i_count = 0;
  std::optional<bool> zero_coordinate;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Trial `trial` draws V from stream 2 trial and W from stream 2 trial + 1.
/// Throws InvariantViolation if a supercommuting pair fails to commute.
TrialRecord run_trial(int n, long length, std::uint64_t seed, long trial, const TrialOptions& options);

/// Trials 0..count-1 on an OpenMP team of `workers` threads (0: default).
/// The records are identical to run_trials_serial for any worker count.
std::vector<TrialRecord> run_trials(int n, long length, long count, std::uint64_t seed, const TrialOptions& options,
                                    int workers = 0);
std::vector<TrialRecord> run_trials_serial(int n, long length, long count, std::uint64_t seed,
                                           const TrialOptions& options);

/// One estimate per (experiment metric, n, rule).
struct SummaryRow {
  std::string experiment;  // "name:metric"
  int n = 2;
  long length = 0;
  std::optional<double> c;
  long trials = 0;
  double estimate = 0;
  double stderr_ = 0;
  std::optional<double> theory;
  std::uint64_t seed = 0;
  std::optional<mpq_class> exact;  // oracle rows only
};

struct Proportion {
  double estimate = 0;
  double stderr_ = 0;
};
/// Binomial proportion with stderr sqrt(p (1 - p) / trials).
Proportion proportion(long successes, long trials);
/// Sample mean with stderr = sample standard deviation / sqrt(trials).
Proportion sample_mean(const std::vector<double>& xs);

/// Closed forms used as theory columns.
double d_statistic_closed_form(int n, long length);
double d_statistic_boundary_exact(int n, long length);
double expected_empty_bins(int n, long length);
double expected_type_i_count(int n, long length);

std::vector<SummaryRow> run_abelian_curve(const ExperimentConfig& config, std::vector<TrialRecord>* records = nullptr);
std::vector<SummaryRow> run_supercommute_gap(const ExperimentConfig& config,
                                             std::vector<TrialRecord>* records = nullptr);
std::vector<SummaryRow> run_zero_constant(const ExperimentConfig& config, std::vector<TrialRecord>* records = nullptr);
std::vector<SummaryRow> run_d_statistic(const ExperimentConfig& config, std::vector<TrialRecord>* records = nullptr);
std::vector<SummaryRow> run_full_step_scan(const ExperimentConfig& config,
                                           std::vector<TrialRecord>* records = nullptr);
std::vector<SummaryRow> run_empty_bins(const ExperimentConfig& config, std::vector<TrialRecord>* records = nullptr);
std::vector<SummaryRow> run_type_i_census(const ExperimentConfig& config, std::vector<TrialRecord>* records = nullptr);

/// Dispatches on config.experiment.
std::vector<SummaryRow> run_experiment(const ExperimentConfig& config, std::vector<TrialRecord>* records = nullptr);

/// Summary rows for an exhaustive enumeration, with `exact` filled in.
std::vector<SummaryRow> oracle_rows(const ExhaustiveResult& result);

// --- output -----------------------------------------------------------------

struct RunHeader {
  std::string config_json;
  std::uint64_t seed = 0;
  bool exact = false;
  std::string timestamp;  // filled by emit when empty
};

std::string code_version();

/// CSV: '#' header lines, then experiment,n,ell,c,trials,estimate,stderr,theory,seed.
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows, const RunHeader& header);
void write_summary_json(std::ostream& os, const std::vector<SummaryRow>& rows, const RunHeader& header);
void write_records_csv(std::ostream& os, const std::vector<TrialRecord>& records);

/// One data line as it appears in the CSV (no newline).
std::string format_csv_row(const SummaryRow& row);

/// Writes rows to `path` ("-" for stdout) in "csv" or "json". Throws
/// std::runtime_error naming the path on I/O failure and InvalidArgument on
/// empty results.
void emit(const std::vector<SummaryRow>& rows, const RunHeader& header, const std::string& format,
          const std::string& path);
void emit_records(const std::vector<TrialRecord>& records, const std::string& path);

}  // namespace randnil
