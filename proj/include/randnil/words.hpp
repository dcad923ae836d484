#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "randnil/unipotent.hpp"

namespace randnil {

/// A_index^sign from the standard generating set of U_n(Z).
struct Letter {
  int index = 1;
  int sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
  int n = 2;
  std::vector<Letter> letters;

  Word() = default;
  /// Validates every letter index against [1, n-1].
  Word(int n, std::vector<Letter> letters);

  int length() const noexcept { return static_cast<int>(letters.size()); }
  friend bool operator==(const Word&, const Word&) = default;
};

/// Reproducible source of uniform random words. Word pairs for trial k use
/// streams 2k and 2k+1, so any trial can be regenerated from (seed, k) alone.
struct WalkSampler {
  int n = 2;
  int length = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Draws `length` letters independently and uniformly from the 2(n-1) signed
/// generators. Identical samplers give identical words.
Word sample_word(const WalkSampler& sampler);

/// Uniform word drawn from the generators whose index is not in `excluded`.
Word sample_word_avoiding(const WalkSampler& sampler, const std::vector<int>& excluded);

/// The product of the letters' elementary matrices, left to right.
UnipotentMatrix evaluate(const Word& word);

/// Concatenation; both words must share n.
Word concat(const Word& a, const Word& b);

/// +1 if the letter is A_i, -1 if A_i^-1, else 0.
int sigma(int i, const Letter& letter);

/// Signed index counts, equal to superdiagonal(evaluate(word)) without any
/// matrix arithmetic.
SuperdiagonalVector superdiagonal_of_word(const Word& word);

/// Serialization `n:len:i1^s1,i2^s2,...`, e.g. `4:3:1^+1,2^+1,1^-1`.
std::string format_word(const Word& word);
Word parse_word(std::string_view text);

/// Letter list only (`1^+1,2^-1`), as accepted on the command line.
std::string format_letters(const Word& word);
Word parse_letters(int n, std::string_view text);

}  // namespace randnil
