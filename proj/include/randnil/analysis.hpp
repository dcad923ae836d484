#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "randnil/brackets.hpp"
#include "randnil/unipotent.hpp"
#include "randnil/words.hpp"

namespace randnil {

/// The subgroup <V, W> of U_n(Z) given by two words.
///
/// Superdiagonals are computed eagerly from letter counts; the matrices are
/// materialized on first use and cached. Copies share the cache, and the
/// cache is safe to fill from several threads.
class GroupSample {
 public:
  GroupSample(Word v, Word w);
  /// Takes already evaluated matrices; they must equal evaluate(v), evaluate(w).
  GroupSample(Word v, Word w, UnipotentMatrix v_matrix, UnipotentMatrix w_matrix);

  int n() const noexcept { return v_word_.n; }
  const Word& v_word() const noexcept { return v_word_; }
  const Word& w_word() const noexcept { return w_word_; }
  const SuperdiagonalVector& v_sd() const noexcept { return v_sd_; }
  const SuperdiagonalVector& w_sd() const noexcept { return w_sd_; }

  const UnipotentMatrix& v_matrix() const;
  const UnipotentMatrix& w_matrix() const;

  /// 'V' or 'W'.
  const UnipotentMatrix& generator(char which) const;
  const SuperdiagonalVector& generator_sd(char which) const;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<UnipotentMatrix> v, w;
  };
  const Cache& materialized() const;

  Word v_word_, w_word_;
  SuperdiagonalVector v_sd_, w_sd_;
  std::shared_ptr<Cache> cache_;
};

/// Outcome of the exact step computation.
///
/// `step` is the smallest r for which every r-fold left-nested commutator of
/// {V, W} is trivial. <I, I> has step 0. `witness` names a nontrivial
/// commutator at depth step - 1 (for instance "VW" is [V, W], "WWV" is
/// [W, [W, V]]). When `decided` is false the search hit its depth bound and
/// `step` is only a lower bound.
struct StepReport {
  int step = 0;
  std::optional<std::string> witness;
  std::optional<int> certificate_d;
  bool decided = true;
};

std::string to_json(const StepReport& report);

struct BinStatistics {
  long F = 0;           // letter pairs (V_i, W_j) that fail to commute
  long B = 0;           // bins hit by the neighbor balls of V's letters
  long D = 0;           // 2 l - B
  long empty_bins = 0;  // indices never used by any letter
};

enum class FullStep { yes, no, undetermined };
std::string_view to_string(FullStep f);

/// Exact: compares V W and W V entry by entry.
bool is_abelian(const GroupSample& g);

/// No letter of v has an index adjacent to a letter of w. O(l + n).
bool supercommutes(const Word& v, const Word& w);

long count_noncommuting_pairs(const Word& v, const Word& w);

/// B and D from the letters of v: each A_k^{+-1} drops a ball in bins k-1
/// and k+1 when they exist (bins are 1..n-1). F is left 0 and empty_bins
/// counts indices v never uses.
BinStatistics bin_statistics(const Word& v);

/// As above, plus F for the pair and empty_bins over the letters of both
/// words.
BinStatistics bin_statistics(const Word& v, const Word& w);

/// Exhaustive left-nested commutator search with exact matrices. Inner
/// commutators are deduplicated by value at each depth, so depth k costs at
/// most two commutators per distinct depth-(k-1) value. Stops at depth
/// `max_depth` (default n - 1, which always decides).
StepReport step(const GroupSample& g, std::optional<int> max_depth = std::nullopt);

/// Corner entry of [W, [W, ..., [W, V]]] with n - 2 copies of W, via the
/// bracket calculus. Nonzero certifies full step; zero proves nothing.
Integer corner_probe(const GroupSample& g);

/// Smallest d with v_d = w_d = 0. Its presence bounds the step by
/// max(d - 1, n - 1 - d).
std::optional<int> matching_zero_certificate(const GroupSample& g);

/// A pattern over {V, W} of length n - 1 whose iterated bracket (the corner
/// of the matching (n-2)-fold commutator) is nonzero, or nullopt if every
/// such corner vanishes. Depth-first over patterns, pruning zero inner
/// vectors. Exact.
std::optional<std::string> nonvanishing_top_pattern(const GroupSample& g);

struct FullStepOptions {
  /// Largest n for which the exhaustive bracket enumeration runs.
  int bracket_ceiling = 22;
};

/// Matching-zero certificate first, then the corner probe, then exhaustive
/// enumeration of the top-depth corners. Only n above the ceiling with
/// neither fast path firing is left undetermined.
FullStep full_step_status(const GroupSample& g, const FullStepOptions& options = {});

/// step == n - 1. Throws BudgetExceeded when the decision is undetermined.
bool has_full_step(const GroupSample& g, const FullStepOptions& options = {});

/// Smallest odd i <= n-2 such that v has exactly one index-i letter and no
/// index-(i+1) letter while w has exactly one of each.
std::optional<int> find_type_i_configuration(const Word& v, const Word& w);

/// Number of odd i for which the configuration above occurs.
int count_type_i_configurations(const Word& v, const Word& w);

/// [B_1, [B_2, ..., [B_k, B_{k+1}]]] for a pattern string over {V, W}.
UnipotentMatrix pattern_commutator(const GroupSample& g, std::string_view pattern);

/// Iterated bracket of the superdiagonals selected by the pattern.
BracketOperand pattern_bracket(const GroupSample& g, std::string_view pattern);

}  // namespace randnil
