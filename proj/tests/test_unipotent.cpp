#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "randnil/errors.hpp"
#include "randnil/unipotent.hpp"
#include "randnil/words.hpp"
#include "support/dense_oracle.hpp"

using namespace randnil;

namespace {

Word random_word(int n, int len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 2 * (n - 1) - 1);
  std::vector<Letter> ls;
  for (int j = 0; j < len; ++j) {
    const int r = pick(rng);
    ls.push_back({r / 2 + 1, r % 2 ? -1 : 1});
  }
  return Word(n, ls);
}

void require_matches_dense(const UnipotentMatrix& m, const oracle::Dense& d) {
  REQUIRE(m.dim() == d.n);
  for (int i = 1; i <= d.n; ++i)
    for (int j = i + 1; j <= d.n; ++j) REQUIRE(m.entry(i, j) == d.at(i, j));
}

}  // namespace

TEST_CASE("identity has no upper entries") {
  const auto id = identity(3);
  CHECK(is_identity(id));
  CHECK(id.bandwidth() == 0);
  CHECK(superdiagonal(identity(5)).values == std::vector<Integer>(4, 0));
  CHECK(is_identity(identity(7)));
  CHECK_THROWS_AS(identity(1), InvalidArgument);
}

TEST_CASE("elementary matrices") {
  const auto a = elementary(3, 1, +1);
  CHECK(a.entry(1, 2) == 1);
  CHECK(a.entry(2, 3) == 0);
  CHECK(a.entry(1, 3) == 0);
  CHECK_FALSE(is_identity(a));
  CHECK(is_identity(multiply(elementary(3, 1, +1), elementary(3, 1, -1))));
  CHECK(superdiagonal(elementary(4, 2, -1)).values == std::vector<Integer>{0, -1, 0});
  CHECK(superdiagonal(elementary(4, 3, +1)).values == std::vector<Integer>{0, 0, 1});
  CHECK_THROWS_AS(elementary(4, 4, 1), InvalidArgument);
  CHECK_THROWS_AS(elementary(4, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(elementary(4, 1, 2), InvalidArgument);
}

TEST_CASE("entry access rejects non upper positions") {
  const auto m = identity(4);
  CHECK_THROWS_AS(m.entry(2, 2), InvalidArgument);
  CHECK_THROWS_AS(m.entry(3, 1), InvalidArgument);
  CHECK_THROWS_AS(m.entry(1, 5), InvalidArgument);
}

TEST_CASE("A1 A2 in U3") {
  const auto m = multiply(elementary(3, 1, 1), elementary(3, 2, 1));
  CHECK(m.entry(1, 2) == 1);
  CHECK(m.entry(2, 3) == 1);
  CHECK(m.entry(1, 3) == 1);
}

TEST_CASE("identity law and dimension mismatch") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const auto m = evaluate(random_word(4, 6, rng));
    CHECK(multiply(identity(4), m) == m);
    CHECK(multiply(m, identity(4)) == m);
  }
  CHECK_THROWS_AS(multiply(identity(3), identity(4)), InvalidArgument);
  CHECK_THROWS_AS(commutator(identity(3), identity(4)), InvalidArgument);
}

TEST_CASE("superdiagonal is additive under multiplication") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto a = evaluate(random_word(6, 7, rng));
    const auto b = evaluate(random_word(6, 7, rng));
    const auto sa = superdiagonal(a), sb = superdiagonal(b), sab = superdiagonal(multiply(a, b));
    for (int i = 1; i <= 5; ++i) REQUIRE(sab.at(i) == sa.at(i) + sb.at(i));
  }
}

TEST_CASE("inverse") {
  CHECK(inverse(elementary(3, 1, 1)) == elementary(3, 1, -1));
  CHECK(inverse(identity(6)) == identity(6));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto w = evaluate(random_word(5, 9, rng));
    REQUIRE(is_identity(multiply(w, inverse(w))));
    REQUIRE(is_identity(multiply(inverse(w), w)));
  }
}

TEST_CASE("commutator basics") {
  const auto c = commutator(elementary(3, 1, 1), elementary(3, 2, 1));
  CHECK(c.entry(1, 2) == 0);
  CHECK(c.entry(2, 3) == 0);
  CHECK(c.entry(1, 3) == 1);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const auto m = evaluate(random_word(5, 5, rng));
    REQUIRE(is_identity(commutator(m, m)));
  }
}

TEST_CASE("elementary generators commute exactly when indices are not adjacent") {
  for (int n = 3; n <= 7; ++n)
    for (int i = 1; i <= n - 1; ++i)
      for (int j = 1; j <= n - 1; ++j)
        for (int si : {-1, 1})
          for (int sj : {-1, 1}) {
            const bool trivial = is_identity(commutator(elementary(n, i, si), elementary(n, j, sj)));
            REQUIRE(trivial == (std::abs(i - j) != 1));
          }
  CHECK(is_identity(commutator(elementary(5, 1, 1), elementary(5, 3, 1))));
}

TEST_CASE("commutator superdiagonals: first vanishes, second is w_{i+1} v_i - w_i v_{i+1}") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 500; ++k) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const auto vw = random_word(n, 1 + static_cast<int>(rng() % 8), rng);
    const auto ww = random_word(n, 1 + static_cast<int>(rng() % 8), rng);
    const auto v = evaluate(vw), w = evaluate(ww);
    const auto c = commutator(v, w);
    REQUIRE(superdiagonal(c).is_zero());
    for (int i = 1; i <= n - 2; ++i)
      REQUIRE(c.entry(i, i + 2) == w.entry(i + 1, i + 2) * v.entry(i, i + 1) - w.entry(i, i + 1) * v.entry(i + 1, i + 2));
  }
}

TEST_CASE("banded arithmetic matches dense int64 arithmetic") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 300; ++k) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const auto a = random_word(n, static_cast<int>(rng() % 10), rng);
    const auto b = random_word(n, static_cast<int>(rng() % 10), rng);
    const auto ma = evaluate(a), mb = evaluate(b);
    const auto da = oracle::eval(a), db = oracle::eval(b);
    require_matches_dense(ma, da);
    require_matches_dense(multiply(ma, mb), oracle::mul(da, db));
    require_matches_dense(inverse(ma), oracle::inv(da));
    require_matches_dense(commutator(ma, mb), oracle::comm(da, db));
  }
}

TEST_CASE("set_entry keeps the band trimmed and equality exact") {
  UnipotentMatrix m(5);
  m.set_entry(1, 4, 7);
  CHECK(m.bandwidth() == 3);
  m.set_entry(1, 4, 0);
  CHECK(m.bandwidth() == 0);
  CHECK(m == identity(5));
  CHECK(m.hash() == identity(5).hash());

  UnipotentMatrix big(4);
  Integer huge("123456789012345678901234567890");
  big.set_entry(1, 2, huge);
  big.set_entry(2, 3, huge);
  // (I + N)^2 = I + 2N + N^2 and only N^2 reaches (1, 3).
  CHECK(multiply(big, big).entry(1, 3) == huge * huge);
  CHECK(multiply(big, big).entry(1, 2) == 2 * huge);
}

TEST_CASE("entries beyond 64 bits stay exact") {
  // (A_1 A_2 ... A_{n-1})^k has entry (1, n) = C(k + n - 2, n - 1).
  const int n = 8;
  Word w(n, {});
  for (int i = 1; i < n; ++i) w.letters.push_back({i, 1});
  UnipotentMatrix m = identity(n);
  const auto step = evaluate(w);
  for (int k = 0; k < 2000; ++k) m = multiply(m, step);
  Integer expect;
  mpz_bin_uiui(expect.get_mpz_t(), 2000 + n - 2, n - 1);
  CHECK(m.entry(1, n) == expect);
  CHECK(mpz_sizeinbase(expect.get_mpz_t(), 2) > 64);
}

TEST_CASE("diagonal extraction and printing") {
  const auto m = multiply(elementary(4, 1, 1), elementary(4, 2, 1));
  CHECK(diagonal(m, 2) == std::vector<Integer>{1, 0});
  CHECK(diagonal(m, 3) == std::vector<Integer>{0});
  CHECK_THROWS_AS(diagonal(m, 4), InvalidArgument);
  std::ostringstream os;
  os << elementary(2, 1, -1);
  CHECK(os.str() == "1 -1\n0 1\n");
}
