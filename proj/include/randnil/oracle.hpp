#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>

#include <gmpxx.h>

#include "randnil/words.hpp"

namespace randnil {

/// Exact tallies over every (V, W) pair of words of length `length` in U_n.
struct ExhaustiveResult {
  int n = 2;
  int length = 0;
  std::uint64_t total_pairs = 0;
  std::uint64_t abelian = 0;
  std::uint64_t supercommute = 0;
  std::uint64_t full_step = 0;
  std::uint64_t gap = 0;  // abelian but not supercommuting
  std::map<int, std::uint64_t> step_counts;

  mpq_class probability(std::uint64_t count) const;
  std::map<int, mpq_class> step_distribution() const;

  friend bool operator==(const ExhaustiveResult&, const ExhaustiveResult&) = default;
};

enum class EnumerationOrder { v_outer, w_outer };

struct OracleOptions {
  std::uint64_t budget = 10'000'000;
  EnumerationOrder order = EnumerationOrder::v_outer;
  int workers = 0;  // 0: OpenMP default
};

/// Number of words of length `length` over the 2(n-1) signed generators.
std::uint64_t word_count(int n, int length);

/// The word with mixed-radix rank `rank` (first letter most significant,
/// digit r is A_{r/2+1}^{+1} for even r and A_{r/2+1}^{-1} for odd r).
Word word_from_rank(int n, int length, std::uint64_t rank);

/// Visits every pair and tallies is_abelian, supercommutes and step().
/// Full step means step == n - 1. The outer loop runs on OpenMP threads and
/// tallies merge by summation. Throws BudgetExceeded when the pair count
/// exceeds options.budget.
ExhaustiveResult enumerate_all(int n, int length, const OracleOptions& options = {});

/// Single-threaded reference for enumerate_all.
ExhaustiveResult enumerate_all_serial(int n, int length, const OracleOptions& options = {});

/// Exact distribution of the step over all pairs.
std::map<int, mpq_class> step_histogram(int n, int length, const OracleOptions& options = {});

void write_oracle_json(std::ostream& os, const ExhaustiveResult& r);

}  // namespace randnil
