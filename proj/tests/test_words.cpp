#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "randnil/errors.hpp"
#include "randnil/words.hpp"

using namespace randnil;

TEST_CASE("word construction validates letters") {
  CHECK_NOTHROW(Word(4, {{1, 1}, {3, -1}}));
  CHECK_THROWS_AS(Word(4, {{4, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Word(4, {{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Word(4, {{1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(Word(1, {}), InvalidArgument);
}

TEST_CASE("empty word") {
  const Word w = sample_word({5, 0, 1, 0});
  CHECK(w.length() == 0);
  CHECK(is_identity(evaluate(w)));
  CHECK(superdiagonal_of_word(w).is_zero());
}

TEST_CASE("sampler determinism") {
  const WalkSampler s{9, 40, 1, 7};
  CHECK(sample_word(s) == sample_word(s));
  CHECK_FALSE(sample_word(s) == sample_word({9, 40, 1, 8}));
  CHECK_FALSE(sample_word(s) == sample_word({9, 40, 2, 7}));
}

TEST_CASE("letter frequencies are uniform over the 2(n-1) signed generators") {
  const int n = 11, cells = 2 * (n - 1);
  const int per_word = 1000, words = 1000;
  std::vector<long> counts(cells, 0);
  for (int k = 0; k < words; ++k)
    for (const Letter& l : sample_word({n, per_word, 123, static_cast<std::uint64_t>(k)}).letters)
      ++counts[2 * (l.index - 1) + (l.sign > 0 ? 0 : 1)];
  const double total = double(per_word) * words;
  const double expect = total / cells;
  double chi2 = 0;
  for (long c : counts) {
    chi2 += (c - expect) * (c - expect) / expect;
    // each cell within 3 binomial sigma of 0.05
    CHECK(std::abs(c / total - 0.05) <= 3 * std::sqrt(0.05 * 0.95 / total) * 1.5);
  }
  // chi-square with 19 degrees of freedom; 60 is far beyond the 1e-6 quantile (about 57).
  CHECK(chi2 < 60);
}

TEST_CASE("distinct streams show no position correlation") {
  // Correlation between the index at position j of stream 2k and of stream 2k+1.
  const int n = 6, len = 50, trials = 4000;
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  long m = 0;
  for (int k = 0; k < trials; ++k) {
    const Word a = sample_word({n, len, 77, std::uint64_t(2 * k)});
    const Word b = sample_word({n, len, 77, std::uint64_t(2 * k + 1)});
    for (int j = 0; j < len; ++j) {
      const double x = a.letters[j].index * a.letters[j].sign, y = b.letters[j].index * b.letters[j].sign;
      sxy += x * y, sx += x, sy += y, sxx += x * x, syy += y * y, ++m;
    }
  }
  const double cov = sxy / m - (sx / m) * (sy / m);
  const double r = cov / std::sqrt((sxx / m - sx * sx / m / m) * (syy / m - sy * sy / m / m));
  CHECK(std::abs(r) < 3 / std::sqrt(double(m)));
}

TEST_CASE("evaluate A1 A2 in U3") {
  const auto m = evaluate(Word(3, {{1, 1}, {2, 1}}));
  CHECK(m.entry(1, 2) == 1);
  CHECK(m.entry(2, 3) == 1);
  CHECK(m.entry(1, 3) == 1);
}

TEST_CASE("sigma") {
  CHECK(sigma(3, {3, 1}) == 1);
  CHECK(sigma(3, {3, -1}) == -1);
  CHECK(sigma(2, {5, 1}) == 0);
}

TEST_CASE("superdiagonal of a word is its signed index count") {
  const Word w(4, {{1, 1}, {2, 1}, {1, -1}});
  CHECK(superdiagonal_of_word(w).values == std::vector<Integer>{0, 1, 0});
  CHECK(superdiagonal(evaluate(w)).values == std::vector<Integer>{0, 1, 0});

  std::mt19937_64 rng(4);
  for (int k = 0; k < 1000; ++k) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const int len = static_cast<int>(rng() % 21);
    const Word x = sample_word({n, len, rng(), 0});
    REQUIRE(superdiagonal_of_word(x) == superdiagonal(evaluate(x)));
    for (int i = 1; i <= n - 1; ++i) {
      long s = 0;
      for (const Letter& l : x.letters) s += sigma(i, l);
      REQUIRE(superdiagonal_of_word(x).at(i) == s);
    }
  }
}

TEST_CASE("exhaustive agreement of the two superdiagonal computations for tiny words") {
  for (int n = 2; n <= 4; ++n)
    for (int len = 0; len <= 3; ++len) {
      const int radix = 2 * (n - 1);
      int total = 1;
      for (int j = 0; j < len; ++j) total *= radix;
      for (int r = 0; r < total; ++r) {
        std::vector<Letter> ls;
        int x = r;
        for (int j = 0; j < len; ++j, x /= radix) ls.push_back({x % radix / 2 + 1, x % 2 ? -1 : 1});
        const Word w(n, ls);
        REQUIRE(superdiagonal_of_word(w) == superdiagonal(evaluate(w)));
      }
    }
}

TEST_CASE("avoiding sampler never uses excluded indices") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const Word w = sample_word_avoiding({7, 30, 5, k}, {2, 5});
    for (const Letter& l : w.letters) REQUIRE((l.index != 2 && l.index != 5));
  }
  CHECK_THROWS_AS(sample_word_avoiding({3, 2, 0, 0}, {1, 2}), InvalidArgument);
}

TEST_CASE("text format round trip") {
  const Word w(4, {{1, 1}, {2, 1}, {1, -1}});
  CHECK(format_word(w) == "4:3:1^+1,2^+1,1^-1");
  CHECK(parse_word("4:3:1^+1,2^+1,1^-1") == w);
  CHECK(format_letters(w) == "1^+1,2^+1,1^-1");
  CHECK(parse_letters(4, "1^+1,2^+1,1^-1") == w);
  CHECK(parse_letters(4, "1^1,2^+,1^-") == w);
  CHECK(parse_letters(4, "").length() == 0);
  CHECK(parse_word("5:0:").length() == 0);
  CHECK_THROWS_AS(parse_word("4:2:1^+1"), InvalidArgument);
  CHECK_THROWS_AS(parse_letters(4, "4^+1"), InvalidArgument);
  CHECK_THROWS_AS(parse_letters(4, "1^2"), InvalidArgument);
  CHECK_THROWS_AS(parse_letters(4, "x"), InvalidArgument);
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const Word x = sample_word({6, static_cast<int>(rng() % 12), rng(), 3});
    REQUIRE(parse_word(format_word(x)) == x);
  }
}

TEST_CASE("concat") {
  const Word a(3, {{1, 1}}), b(3, {{2, -1}});
  CHECK(concat(a, b) == Word(3, {{1, 1}, {2, -1}}));
  CHECK_THROWS_AS(concat(a, Word(4, {})), InvalidArgument);
}
