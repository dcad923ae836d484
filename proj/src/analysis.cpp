#include "randnil/analysis.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "randnil/errors.hpp"

namespace randnil {

GroupSample::GroupSample(Word v, Word w)
    : v_word_(std::move(v)),
      w_word_(std::move(w)),
      v_sd_(superdiagonal_of_word(v_word_)),
      w_sd_(superdiagonal_of_word(w_word_)),
      cache_(std::make_shared<Cache>()) {
  if (v_word_.n != w_word_.n) throw InvalidArgument("V and W must live in the same U_n");
}

GroupSample::GroupSample(Word v, Word w, UnipotentMatrix v_matrix, UnipotentMatrix w_matrix)
    : GroupSample(std::move(v), std::move(w)) {
  if (v_matrix.dim() != n() || w_matrix.dim() != n()) throw InvalidArgument("matrix dimension differs from the words");
  std::call_once(cache_->once, [&] {
    cache_->v.emplace(std::move(v_matrix));
    cache_->w.emplace(std::move(w_matrix));
  });
}

const GroupSample::Cache& GroupSample::materialized() const {
  std::call_once(cache_->once, [this] {
    cache_->v.emplace(evaluate(v_word_));
    cache_->w.emplace(evaluate(w_word_));
  });
  return *cache_;
}

const UnipotentMatrix& GroupSample::v_matrix() const { return *materialized().v; }
const UnipotentMatrix& GroupSample::w_matrix() const { return *materialized().w; }

const UnipotentMatrix& GroupSample::generator(char which) const {
  if (which == 'V') return v_matrix();
  if (which == 'W') return w_matrix();
  throw InvalidArgument(std::string("pattern letter must be V or W, got '") + which + "'");
}

const SuperdiagonalVector& GroupSample::generator_sd(char which) const {
  if (which == 'V') return v_sd_;
  if (which == 'W') return w_sd_;
  throw InvalidArgument(std::string("pattern letter must be V or W, got '") + which + "'");
}

std::string to_json(const StepReport& r) {
  nlohmann::ordered_json j;
  j["step"] = r.step;
  j["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
  j["certificate_d"] = r.certificate_d ? nlohmann::ordered_json(*r.certificate_d) : nlohmann::ordered_json(nullptr);
  j["decided"] = r.decided;
  return j.dump();
}

std::string_view to_string(FullStep f) {
  switch (f) {
    case FullStep::yes: return "true";
    case FullStep::no: return "false";
    case FullStep::undetermined: return "undetermined";
  }
  return "undetermined";
}

// --- commuting --------------------------------------------------------------

bool is_abelian(const GroupSample& g) {
  return evaluate(concat(g.v_word(), g.w_word())) == evaluate(concat(g.w_word(), g.v_word()));
}

namespace {

std::vector<long> index_counts(const Word& w) {
  std::vector<long> c(static_cast<std::size_t>(w.n + 1), 0);  // slots 0..n, letters use 1..n-1
  for (const Letter& x : w.letters) ++c[static_cast<std::size_t>(x.index)];
  return c;
}

void require_same_n(const Word& v, const Word& w) {
  if (v.n != w.n) throw InvalidArgument("words from different dimensions");
}

}  // namespace

bool supercommutes(const Word& v, const Word& w) {
  require_same_n(v, w);
  std::vector<char> used(static_cast<std::size_t>(v.n + 1), 0);
  for (const Letter& x : v.letters) used[static_cast<std::size_t>(x.index)] = 1;
  for (const Letter& y : w.letters)
    if (used[static_cast<std::size_t>(y.index - 1)] || used[static_cast<std::size_t>(y.index + 1)]) return false;
  return true;
}

long count_noncommuting_pairs(const Word& v, const Word& w) {
  require_same_n(v, w);
  const auto cv = index_counts(v);
  long f = 0;
  for (const Letter& y : w.letters)
    f += cv[static_cast<std::size_t>(y.index - 1)] + cv[static_cast<std::size_t>(y.index + 1)];
  return f;
}

BinStatistics bin_statistics(const Word& v) {
  const int n = v.n;
  std::vector<char> hit(static_cast<std::size_t>(n + 1), 0);
  std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
  for (const Letter& x : v.letters) {
    used[static_cast<std::size_t>(x.index)] = 1;
    if (x.index - 1 >= 1) hit[static_cast<std::size_t>(x.index - 1)] = 1;
    if (x.index + 1 <= n - 1) hit[static_cast<std::size_t>(x.index + 1)] = 1;
  }
  BinStatistics s;
  for (int k = 1; k <= n - 1; ++k) {
    s.B += hit[static_cast<std::size_t>(k)];
    s.empty_bins += used[static_cast<std::size_t>(k)] ? 0 : 1;
  }
  s.D = 2L * v.length() - s.B;
  return s;
}

BinStatistics bin_statistics(const Word& v, const Word& w) {
  require_same_n(v, w);
  BinStatistics s = bin_statistics(v);
  s.F = count_noncommuting_pairs(v, w);
  std::vector<char> used(static_cast<std::size_t>(v.n + 1), 0);
  for (const Letter& x : v.letters) used[static_cast<std::size_t>(x.index)] = 1;
  for (const Letter& x : w.letters) used[static_cast<std::size_t>(x.index)] = 1;
  s.empty_bins = 0;
  for (int k = 1; k <= v.n - 1; ++k) s.empty_bins += used[static_cast<std::size_t>(k)] ? 0 : 1;
  return s;
}

// --- step -------------------------------------------------------------------

namespace {

struct Node {
  UnipotentMatrix m;
  std::string pattern;
};

// Distinct nontrivial matrices in insertion order.
class Level {
 public:
  bool insert(UnipotentMatrix m, std::string pattern) {
    if (m.is_identity()) return false;
    auto& bucket = index_[m.hash()];
    for (std::size_t k : bucket)
      if (nodes_[k].m == m) return false;
    bucket.push_back(nodes_.size());
    nodes_.push_back({std::move(m), std::move(pattern)});
    return true;
  }
  bool empty() const { return nodes_.empty(); }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> index_;
};

}  // namespace

StepReport step(const GroupSample& g, std::optional<int> max_depth) {
  const int n = g.n();
  const int limit = max_depth.value_or(n - 1);
  if (limit < 0) throw InvalidArgument("max_depth must be >= 0");

  StepReport report;
  report.certificate_d = matching_zero_certificate(g);

  Level level;
  level.insert(g.v_matrix(), "V");
  level.insert(g.w_matrix(), "W");
  if (level.empty()) return report;  // trivial group

  std::vector<char> outer;
  for (char c : {'V', 'W'})
    if (!g.generator(c).is_identity()) outer.push_back(c);

  for (int k = 1;; ++k) {
    if (k > limit) {
      report.step = k;
      report.witness = level.nodes().front().pattern;
      report.decided = false;
      return report;
    }
    Level next;
    for (char c : outer)
      for (const Node& inner : level.nodes()) next.insert(commutator(g.generator(c), inner.m), c + inner.pattern);
    if (next.empty()) {
      report.step = k;
      report.witness = level.nodes().front().pattern;
      return report;
    }
    level = std::move(next);
  }
}

// --- full step --------------------------------------------------------------

Integer corner_probe(const GroupSample& g) {
  const int n = g.n();
  if (n < 3) throw InvalidArgument("corner probe needs n >= 3");
  std::vector<BracketOperand> ops(static_cast<std::size_t>(n - 2), g.w_sd().values);
  ops.push_back(g.v_sd().values);
  return iterated_bracket(ops).front();
}

std::optional<int> matching_zero_certificate(const GroupSample& g) {
  for (int d = 1; d <= g.n() - 1; ++d)
    if (sgn(g.v_sd().at(d)) == 0 && sgn(g.w_sd().at(d)) == 0) return d;
  return std::nullopt;
}

namespace {

bool all_zero(const BracketOperand& x) {
  return std::all_of(x.begin(), x.end(), [](const Integer& v) { return sgn(v) == 0; });
}

std::optional<std::string> extend_outward(const GroupSample& g, const BracketOperand& acc, std::string& pattern,
                                          int remaining) {
  if (remaining == 0) return pattern;  // acc has one entry and it is nonzero
  for (char c : {'V', 'W'}) {
    BracketOperand next = bracket(g.generator_sd(c).values, acc);
    if (all_zero(next)) continue;
    pattern.insert(pattern.begin(), c);
    if (auto found = extend_outward(g, next, pattern, remaining - 1)) return found;
    pattern.erase(pattern.begin());
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> nonvanishing_top_pattern(const GroupSample& g) {
  const int n = g.n();
  for (char c : {'V', 'W'}) {
    const BracketOperand& start = g.generator_sd(c).values;
    if (all_zero(start)) continue;
    std::string pattern(1, c);
    if (auto found = extend_outward(g, start, pattern, n - 2)) return found;
  }
  return std::nullopt;
}

FullStep full_step_status(const GroupSample& g, const FullStepOptions& options) {
  if (matching_zero_certificate(g)) return FullStep::no;
  if (g.n() >= 3 && sgn(corner_probe(g)) != 0) return FullStep::yes;
  if (g.n() > options.bracket_ceiling) return FullStep::undetermined;
  return nonvanishing_top_pattern(g) ? FullStep::yes : FullStep::no;
}

bool has_full_step(const GroupSample& g, const FullStepOptions& options) {
  const FullStep f = full_step_status(g, options);
  if (f == FullStep::undetermined)
    throw BudgetExceeded("full step undetermined: n = " + std::to_string(g.n()) + " exceeds the enumeration ceiling " +
                         std::to_string(options.bracket_ceiling) + " and neither fast path applies");
  return f == FullStep::yes;
}

// --- type i -----------------------------------------------------------------

namespace {

bool type_i_at(const std::vector<long>& cv, const std::vector<long>& cw, int i) {
  const auto k = static_cast<std::size_t>(i);
  return cv[k] == 1 && cv[k + 1] == 0 && cw[k] == 1 && cw[k + 1] == 1;
}

}  // namespace

std::optional<int> find_type_i_configuration(const Word& v, const Word& w) {
  require_same_n(v, w);
  const auto cv = index_counts(v);
  const auto cw = index_counts(w);
  for (int i = 1; i <= v.n - 2; i += 2)
    if (type_i_at(cv, cw, i)) return i;
  return std::nullopt;
}

int count_type_i_configurations(const Word& v, const Word& w) {
  require_same_n(v, w);
  const auto cv = index_counts(v);
  const auto cw = index_counts(w);
  int x = 0;
  for (int i = 1; i <= v.n - 2; i += 2) x += type_i_at(cv, cw, i) ? 1 : 0;
  return x;
}

// --- patterns ---------------------------------------------------------------

UnipotentMatrix pattern_commutator(const GroupSample& g, std::string_view pattern) {
  if (pattern.empty()) throw InvalidArgument("empty commutator pattern");
  UnipotentMatrix acc = g.generator(pattern.back());
  for (std::size_t j = pattern.size() - 1; j-- > 0;) acc = commutator(g.generator(pattern[j]), acc);
  return acc;
}

BracketOperand pattern_bracket(const GroupSample& g, std::string_view pattern) {
  if (pattern.empty()) throw InvalidArgument("empty commutator pattern");
  if (pattern.size() == 1) return g.generator_sd(pattern[0]).values;
  std::vector<BracketOperand> ops;
  ops.reserve(pattern.size());
  for (char c : pattern) ops.push_back(g.generator_sd(c).values);
  return iterated_bracket(ops);
}

}  // namespace randnil
