// randnil: experiments, oracles and one-shot queries on random subgroups of U_n(Z).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "randnil/analysis.hpp"
#include "randnil/dist.hpp"
#include "randnil/errors.hpp"
#include "randnil/experiments.hpp"
#include "randnil/oracle.hpp"

namespace {

using namespace randnil;

enum Exit { kOk = 0, kInvariant = 1, kBadArgs = 2, kBudget = 3 };

struct ExperimentFlags {
  std::string config_path;
  std::vector<int> n;
  std::vector<double> c;
  std::vector<long> ell;
  std::vector<std::string> rule;
  long trials = 10000;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
  std::string format = "csv";
  std::string records;
  int k = 1;
  int bracket_ceiling = 22;
};

struct ExperimentSpec {
  const char* name;
  const char* claim;
  LengthRule::Kind default_kind;
};

const ExperimentSpec kExperiments[] = {
    {"abelian-curve",
     "P(<V,W> abelian) at l = ceil(c sqrt n); expected limit e^{-2c^2}. Also logs P(supercommute).",
     LengthRule::Kind::sqrt},
    {"supercommute-gap",
     "P(V, W commute but do not supercommute); it vanishes as n grows with l in o(n).", LengthRule::Kind::sqrt},
    {"zero-constant",
     "P(v_k = 0) sqrt(l/n) against K = 1/sqrt(2 pi), plus the quadrature value of P(v_k = 0).",
     LengthRule::Kind::quadratic},
    {"d-statistic",
     "Mean of D = 2l - B at l = ceil(c sqrt n) against 2l - (n-1)(1 - (1 - 2/(n-1))^l) and the limit 2c^2.",
     LengthRule::Kind::sqrt},
    {"full-step-scan",
     "P(step = n - 1) across length rules; full step sets in between l ~ n^2 and l ~ n^3. "
     "Undecided trials are reported separately.",
     LengthRule::Kind::cubic},
    {"empty-bins",
     "P(some index is used by neither word) and the mean empty count against (n-1)(1 - 1/(n-1))^{2l}.",
     LengthRule::Kind::linear},
    {"type-i-census",
     "Mean number X of odd type-i configurations at l = ceil(c n) against "
     "n' l^2 (l-1)/(n-1)^3 (1 - 2/(n-1))^{2l-3}.",
     LengthRule::Kind::linear},
};

void add_experiment_flags(CLI::App* sub, ExperimentFlags& f, const std::string& name) {
  sub->add_option("--config", f.config_path, "JSON config file; flags given on the command line override it");
  sub->add_option("--n", f.n, "Dimension(s) n >= 2");
  sub->add_option("--c", f.c, "Length constant(s) c for the default rule of this experiment");
  sub->add_option("--ell", f.ell, "Explicit word length(s), instead of a rule");
  sub->add_option("--rule", f.rule, "Length rule(s): sqrt|linear|quadratic|cubic[:c] or explicit:L");
  sub->add_option("--trials", f.trials, "Trials per (n, rule)")->capture_default_str();
  sub->add_option("--seed", f.seed, "64-bit seed")->capture_default_str();
  sub->add_option("--workers", f.workers, "Worker threads (0: all available)")->capture_default_str();
  sub->add_option("--out", f.out, "Summary output path ('-' for stdout); omitted: summary lines only");
  sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--records", f.records, "Also write every TrialRecord as CSV to this path");
  if (name == "zero-constant")
    sub->add_option("--k", f.k, "Superdiagonal coordinate k in [1, n-1]")->capture_default_str();
  if (name == "full-step-scan")
    sub->add_option("--bracket-ceiling", f.bracket_ceiling, "Largest n for the exhaustive top-corner search")
        ->capture_default_str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig build_config(const CLI::App* sub, const ExperimentFlags& f, const ExperimentSpec& spec) {
  ExperimentConfig c;
  c.experiment = spec.name;
  if (!f.config_path.empty()) {
    c = config_from_json(read_file(f.config_path), c);
    if (c.experiment != spec.name)
      throw InvalidArgument("config names experiment '" + c.experiment + "' but the subcommand is " + spec.name);
  }
  auto given = [&](const char* flag) { return sub->count(flag) > 0; };
  if (given("--n")) c.n_values = f.n;
  if (given("--rule") || given("--ell") || given("--c")) {
    c.rules.clear();
    for (const auto& r : f.rule) c.rules.push_back(LengthRule::parse(r));
    for (long l : f.ell) c.rules.push_back(LengthRule::explicit_length_of(l));
    for (double x : f.c) c.rules.push_back(LengthRule::scaled(spec.default_kind, x));
  }
  if (c.rules.empty()) c.rules.push_back(LengthRule::scaled(spec.default_kind, 1.0));
  if (given("--trials")) c.trials = f.trials;
  if (given("--seed")) c.seed = f.seed;
  if (given("--workers")) c.workers = f.workers;
  if (given("--out")) c.output = f.out;
  if (given("--format")) c.format = f.format;
  if (given("--records")) c.records = f.records;
  if (sub->get_option_no_throw("--k") && given("--k")) c.coordinate = f.k;
  if (sub->get_option_no_throw("--bracket-ceiling") && given("--bracket-ceiling"))
    c.bracket_ceiling = f.bracket_ceiling;
  c.validate();
  return c;
}

std::string fmt(double x, int digits = 6) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void print_summary(const SummaryRow& r) {
  std::cout << r.experiment << " n=" << r.n << " ell=" << r.length;
  if (r.c) std::cout << " c=" << fmt(*r.c);
  std::cout << " trials=" << r.trials << " estimate=" << fmt(r.estimate) << " stderr=" << fmt(r.stderr_);
  if (r.theory) std::cout << " theory=" << fmt(*r.theory);
  if (r.exact) std::cout << " exact=" << r.exact->get_str();
  std::cout << '\n';
}

int run_experiment_command(const CLI::App* sub, const ExperimentFlags& f, const ExperimentSpec& spec) {
  const ExperimentConfig config = build_config(sub, f, spec);
  std::cout << "# " << config.experiment << " seed=" << config.seed << " trials=" << config.trials
            << " workers=" << (config.workers > 0 ? std::to_string(config.workers) : "auto") << '\n';
  std::vector<TrialRecord> records;
  const auto rows = run_experiment(config, config.records.empty() ? nullptr : &records);
  for (const SummaryRow& r : rows) print_summary(r);
  if (!config.output.empty()) emit(rows, {config_to_json(config), config.seed, false, {}}, config.format, config.output);
  if (!config.records.empty()) emit_records(records, config.records);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random subgroups of U_n(Z): Monte Carlo experiments, exact oracles and group queries"};
  app.set_version_flag("--version", code_version());
  app.require_subcommand(1);

  std::vector<std::unique_ptr<ExperimentFlags>> flags;
  std::vector<std::pair<CLI::App*, const ExperimentSpec*>> experiments;
  for (const ExperimentSpec& spec : kExperiments) {
    flags.push_back(std::make_unique<ExperimentFlags>());
    CLI::App* sub = app.add_subcommand(spec.name, spec.claim);
    add_experiment_flags(sub, *flags.back(), spec.name);
    experiments.emplace_back(sub, &spec);
  }

  // oracle-enumerate
  int o_n = 0, o_ell = 0, o_workers = 0;
  std::uint64_t o_budget = 10'000'000;
  std::string o_order = "v-outer", o_format = "text", o_out;
  CLI::App* oracle = app.add_subcommand(
      "oracle-enumerate", "Exact P(abelian), P(supercommute), P(full step) and the step law over all word pairs");
  oracle->add_option("--n", o_n, "Dimension n >= 2")->required();
  oracle->add_option("--ell", o_ell, "Word length l >= 0")->required();
  oracle->add_option("--budget", o_budget, "Largest number of pairs to visit")->capture_default_str();
  oracle->add_option("--order", o_order, "Enumeration order")
      ->check(CLI::IsMember({"v-outer", "w-outer"}))
      ->capture_default_str();
  oracle->add_option("--workers", o_workers, "Worker threads (0: all available)")->capture_default_str();
  oracle->add_option("--format", o_format, "Output format for --out")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  oracle->add_option("--out", o_out, "Write results to this path ('-' for stdout)");

  // step
  int s_n = 0, s_depth = -1;
  std::string s_v, s_w;
  bool s_json = false;
  CLI::App* stepcmd = app.add_subcommand(
      "step", "Exact step of <V, W> with a witness commutator, matching-zero certificate and full-step status");
  stepcmd->add_option("--n", s_n, "Dimension n >= 2")->required();
  stepcmd->add_option("--v", s_v, "Letters of V, e.g. \"1^+1,2^-1\" (empty for the identity)")->required();
  stepcmd->add_option("--w", s_w, "Letters of W")->required();
  stepcmd->add_option("--max-depth", s_depth, "Stop the search at this depth (default n - 1)");
  stepcmd->add_flag("--json", s_json, "Print the StepReport as JSON");

  // dist
  int d_n = 0;
  long d_ell = 0;
  std::string d_model = "letter", d_p, d_out;
  bool d_pair = false;
  long d_ceiling = 10000;
  CLI::App* distcmd = app.add_subcommand(
      "dist", "Law of a lazy-walk coordinate: exact DP, quadrature and K sqrt(n/l) for P(v_k = 0)");
  distcmd->add_option("--n", d_n, "Dimension n")->required();
  distcmd->add_option("--ell", d_ell, "Steps l >= 0")->required();
  distcmd->add_option("--model", d_model, "letter: p = 1/(2(n-1)); dimension: p = 1/(2n)")
      ->check(CLI::IsMember({"letter", "dimension"}))
      ->capture_default_str();
  distcmd->add_option("--p", d_p, "Explicit rational step probability p (overrides --model)");
  distcmd->add_flag("--pair", d_pair, "Also report P(two coordinates are both 0)");
  distcmd->add_option("--exact-ceiling", d_ceiling, "DP runs exactly up to this many steps")->capture_default_str();
  distcmd->add_option("--out", d_out, "Write the full distribution as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArgs;
  }

  try {
    for (std::size_t k = 0; k < experiments.size(); ++k)
      if (experiments[k].first->parsed()) return run_experiment_command(experiments[k].first, *flags[k], *experiments[k].second);

    if (oracle->parsed()) {
      OracleOptions opt;
      opt.budget = o_budget;
      opt.workers = o_workers;
      opt.order = o_order == "w-outer" ? EnumerationOrder::w_outer : EnumerationOrder::v_outer;
      const ExhaustiveResult r = enumerate_all(o_n, o_ell, opt);
      std::cout << "n=" << r.n << " ell=" << r.length << " pairs=" << r.total_pairs << '\n';
      auto line = [&](const char* name, std::uint64_t c) {
        const mpq_class q = r.probability(c);
        std::cout << "P(" << name << ")=" << q.get_str() << " (" << fmt(q.get_d()) << ")\n";
      };
      line("abelian", r.abelian);
      line("supercommute", r.supercommute);
      line("gap", r.gap);
      line("full_step", r.full_step);
      for (const auto& [s, c] : r.step_counts) line(("step=" + std::to_string(s)).c_str(), c);
      if (!o_out.empty()) {
        if (o_format == "json") {
          std::ofstream f;
          std::ostream* os = &std::cout;
          if (o_out != "-") {
            f.open(o_out);
            if (!f) throw std::runtime_error("cannot open '" + o_out + "' for writing");
            os = &f;
          }
          write_oracle_json(*os, r);
        } else {
          nlohmann::json cfg{{"n", o_n}, {"ell", o_ell}, {"budget", o_budget}, {"order", o_order}};
          emit(oracle_rows(r), {cfg.dump(), 0, true, {}}, "csv", o_out);
        }
      }
      return kOk;
    }

    if (stepcmd->parsed()) {
      const GroupSample g(parse_letters(s_n, s_v), parse_letters(s_n, s_w));
      const StepReport rep = step(g, s_depth >= 0 ? std::optional<int>(s_depth) : std::nullopt);
      if (s_json) {
        std::cout << to_json(rep) << '\n';
      } else {
        std::cout << "step=" << rep.step << " witness=" << rep.witness.value_or("none")
                  << " certificate_d=" << (rep.certificate_d ? std::to_string(*rep.certificate_d) : "none")
                  << " decided=" << (rep.decided ? "true" : "false");
        if (g.n() >= 3) std::cout << " corner_probe=" << corner_probe(g).get_str();
        std::cout << " full_step=" << to_string(full_step_status(g)) << " abelian=" << (is_abelian(g) ? "true" : "false")
                  << '\n';
      }
      return kOk;
    }

    if (distcmd->parsed()) {
      LazyWalkParams params;
      if (!d_p.empty()) {
        mpq_class p;
        try {
          p = mpq_class(d_p);
        } catch (const std::invalid_argument&) {
          throw InvalidArgument("--p must be a rational such as 1/4");
        }
        p.canonicalize();
        params = LazyWalkParams::symmetric(p, d_ell);
      } else if (d_model == "letter") {
        params = LazyWalkParams::letter_model(d_n, d_ell);
      } else {
        params = LazyWalkParams::dimension_model(d_n, d_ell);
      }
      const EndpointDistribution dist = dp_distribution(params, {d_ceiling});
      std::cout << "p=" << params.p_plus.get_str() << " ell=" << d_ell << " exact=" << (dist.is_exact() ? "true" : "false")
                << '\n';
      std::cout << "P(0) dp=" << dist.decimal(0);
      if (dist.is_exact()) {
        const std::string q = dist.rational(0)->get_str();
        if (q.size() <= 80)
          std::cout << " rational=" << q;
        else
          std::cout << " rational=<" << q.size() << " chars, see --out>";
      }
      std::cout << '\n';
      const QuadratureResult q = quadrature_zero_probability(params);
      std::cout << "P(0) quadrature=" << fmt(q.value, 17) << " error_estimate=" << fmt(q.error_estimate) << '\n';
      if (d_ell > 0) std::cout << "asymptotic K sqrt(n/ell)=" << fmt(asymptotic_zero_law(d_n, d_ell)) << '\n';
      if (d_pair) {
        const QuadratureResult pq = pair_zero_probability(params);
        std::cout << "P(both 0) quadrature=" << fmt(pq.value, 17) << " error_estimate=" << fmt(pq.error_estimate) << '\n';
      }
      if (!d_out.empty()) {
        std::ofstream f(d_out);
        if (!f) throw std::runtime_error("cannot open '" + d_out + "' for writing");
        write_distribution_csv(f, dist);
      }
      return kOk;
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kInvariant;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature failed: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  }
  return kBadArgs;
}
