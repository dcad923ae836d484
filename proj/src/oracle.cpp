#include "randnil/oracle.hpp"

#include <exception>
#include <limits>
#include <ostream>
#include <vector>

#include <omp.h>

#include <nlohmann/json.hpp>

#include "randnil/analysis.hpp"
#include "randnil/errors.hpp"

namespace randnil {

mpq_class ExhaustiveResult::probability(std::uint64_t count) const {
  if (total_pairs == 0) throw InvalidArgument("empty enumeration");
  mpq_class q{mpz_class(std::to_string(count)), mpz_class(std::to_string(total_pairs))};
  q.canonicalize();
  return q;
}

std::map<int, mpq_class> ExhaustiveResult::step_distribution() const {
  std::map<int, mpq_class> out;
  for (const auto& [s, c] : step_counts) out[s] = probability(c);
  return out;
}

std::uint64_t word_count(int n, int length) {
  if (n < 2) throw InvalidArgument("dimension must be >= 2");
  if (length < 0) throw InvalidArgument("length must be >= 0");
  const std::uint64_t radix = 2 * static_cast<std::uint64_t>(n - 1);
  std::uint64_t c = 1;
  for (int k = 0; k < length; ++k) {
    if (c > std::numeric_limits<std::uint64_t>::max() / radix) throw BudgetExceeded("word count overflows 64 bits");
    c *= radix;
  }
  return c;
}

Word word_from_rank(int n, int length, std::uint64_t rank) {
  const std::uint64_t radix = 2 * static_cast<std::uint64_t>(n - 1);
  std::vector<Letter> letters(static_cast<std::size_t>(length));
  for (int k = length - 1; k >= 0; --k) {
    const auto r = static_cast<int>(rank % radix);
    rank /= radix;
    letters[static_cast<std::size_t>(k)] = Letter{r / 2 + 1, r % 2 == 0 ? 1 : -1};
  }
  return Word(n, std::move(letters));
}

namespace {

struct Tally {
  std::uint64_t abelian = 0, supercommute = 0, full_step = 0, gap = 0;
  std::map<int, std::uint64_t> steps;

  void add(const Tally& o) {
    abelian += o.abelian;
    supercommute += o.supercommute;
    full_step += o.full_step;
    gap += o.gap;
    for (const auto& [s, c] : o.steps) steps[s] += c;
  }
};

struct Prepared {
  std::uint64_t words = 0;
  std::vector<Word> word;
  std::vector<UnipotentMatrix> matrix;
};

Prepared prepare(int n, int length, const OracleOptions& options) {
  Prepared p;
  p.words = word_count(n, length);
  if (p.words > options.budget / std::max<std::uint64_t>(p.words, 1))
    throw BudgetExceeded("exhaustive enumeration of " + std::to_string(p.words) + "^2 pairs exceeds the budget of " +
                         std::to_string(options.budget));
  p.word.reserve(p.words);
  p.matrix.reserve(p.words);
  for (std::uint64_t r = 0; r < p.words; ++r) {
    p.word.push_back(word_from_rank(n, length, r));
    p.matrix.push_back(evaluate(p.word.back()));
  }
  return p;
}

void visit(const Prepared& p, std::uint64_t vi, std::uint64_t wi, Tally& t) {
  const GroupSample g(p.word[vi], p.word[wi], p.matrix[vi], p.matrix[wi]);
  const bool ab = is_abelian(g);
  const bool sc = supercommutes(g.v_word(), g.w_word());
  if (sc && !ab) throw InvariantViolation("supercommuting pair failed to commute: " + format_word(g.v_word()) + " / " +
                                          format_word(g.w_word()));
  const StepReport s = step(g);
  t.abelian += ab;
  t.supercommute += sc;
  t.gap += ab && !sc;
  t.full_step += s.step == g.n() - 1;
  ++t.steps[s.step];
}

void visit_outer(const Prepared& p, std::uint64_t outer, EnumerationOrder order, Tally& t) {
  for (std::uint64_t inner = 0; inner < p.words; ++inner) {
    if (order == EnumerationOrder::v_outer)
      visit(p, outer, inner, t);
    else
      visit(p, inner, outer, t);
  }
}

ExhaustiveResult finish(int n, int length, const Prepared& p, const Tally& t) {
  ExhaustiveResult r;
  r.n = n;
  r.length = length;
  r.total_pairs = p.words * p.words;
  r.abelian = t.abelian;
  r.supercommute = t.supercommute;
  r.full_step = t.full_step;
  r.gap = t.gap;
  r.step_counts = t.steps;
  return r;
}

}  // namespace

ExhaustiveResult enumerate_all(int n, int length, const OracleOptions& options) {
  const Prepared p = prepare(n, length, options);
  const int threads = options.workers > 0 ? options.workers : omp_get_max_threads();
  std::vector<Tally> partial(static_cast<std::size_t>(threads));
  std::exception_ptr failure;

#pragma omp parallel num_threads(threads)
  {
    Tally& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t outer = 0; outer < static_cast<std::int64_t>(p.words); ++outer) {
      try {
        visit_outer(p, static_cast<std::uint64_t>(outer), options.order, mine);
      } catch (...) {
#pragma omp critical(randnil_oracle_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  Tally total;
  for (const Tally& t : partial) total.add(t);
  return finish(n, length, p, total);
}

ExhaustiveResult enumerate_all_serial(int n, int length, const OracleOptions& options) {
  const Prepared p = prepare(n, length, options);
  Tally total;
  for (std::uint64_t outer = 0; outer < p.words; ++outer) visit_outer(p, outer, options.order, total);
  return finish(n, length, p, total);
}

std::map<int, mpq_class> step_histogram(int n, int length, const OracleOptions& options) {
  return enumerate_all(n, length, options).step_distribution();
}

void write_oracle_json(std::ostream& os, const ExhaustiveResult& r) {
  nlohmann::ordered_json j;
  j["exact"] = true;
  j["n"] = r.n;
  j["ell"] = r.length;
  j["total_pairs"] = r.total_pairs;
  auto event = [&](std::uint64_t count) {
    const mpq_class q = r.probability(count);
    return nlohmann::ordered_json{{"count", count}, {"probability", q.get_str()}, {"decimal", q.get_d()}};
  };
  j["abelian"] = event(r.abelian);
  j["supercommute"] = event(r.supercommute);
  j["gap"] = event(r.gap);
  j["full_step"] = event(r.full_step);
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [s, c] : r.step_counts) hist[std::to_string(s)] = event(c);
  j["step_histogram"] = hist;
  os << j.dump(2) << '\n';
}

}  // namespace randnil
