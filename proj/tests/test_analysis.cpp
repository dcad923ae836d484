#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "randnil/analysis.hpp"
#include "randnil/errors.hpp"
#include "randnil/oracle.hpp"
#include "support/dense_oracle.hpp"

using namespace randnil;

namespace {

GroupSample pair_of(int n, std::string_view v, std::string_view w) {
  return GroupSample(parse_letters(n, v), parse_letters(n, w));
}

}  // namespace

TEST_CASE("abelian examples") {
  CHECK_FALSE(is_abelian(pair_of(3, "1^+", "2^+")));
  CHECK(is_abelian(pair_of(4, "1^+", "3^+")));
  CHECK(is_abelian(pair_of(3, "1^+,2^+", "1^+,2^+")));
  CHECK(is_abelian(pair_of(3, "", "2^-")));
  // commuting without supercommuting: V = A1 A1^-1 is the identity
  CHECK(is_abelian(pair_of(3, "1^+,1^-", "2^+")));
  CHECK_FALSE(supercommutes(parse_letters(3, "1^+,1^-"), parse_letters(3, "2^+")));
}

TEST_CASE("supercommuting implies abelian") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 2000; ++k) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const int len = 1 + static_cast<int>(rng() % 3);
    const Word v = sample_word({n, len, rng(), 0}), w = sample_word({n, len, rng(), 1});
    if (supercommutes(v, w)) REQUIRE(is_abelian(GroupSample(v, w)));
  }
}

TEST_CASE("noncommuting letter pairs and bin statistics") {
  CHECK(count_noncommuting_pairs(parse_letters(5, "2^+,2^+"), parse_letters(5, "3^+")) == 2);
  CHECK(count_noncommuting_pairs(parse_letters(5, "1^+"), parse_letters(5, "3^-,4^+")) == 0);

  const auto a1 = bin_statistics(parse_letters(5, "1^+"));
  CHECK(a1.B == 1);
  CHECK(a1.D == 1);
  CHECK(a1.empty_bins == 3);

  const auto mid = bin_statistics(parse_letters(5, "2^+,2^-"));
  CHECK(mid.B == 2);
  CHECK(mid.D == 2);

  const auto both = bin_statistics(parse_letters(5, "2^+"), parse_letters(5, "1^+,3^+"));
  CHECK(both.F == 2);
  CHECK(both.empty_bins == 1);

  const auto none = bin_statistics(Word(6, {}));
  CHECK(none.B == 0);
  CHECK(none.D == 0);
  CHECK(none.empty_bins == 5);
}

TEST_CASE("step of small groups") {
  const auto heis = step(pair_of(3, "1^+", "2^+"));
  CHECK(heis.step == 2);
  CHECK(heis.witness == "VW");
  CHECK(heis.decided);

  const auto trivial = step(pair_of(4, "", "1^+,1^-"));
  CHECK(trivial.step == 0);
  CHECK_FALSE(trivial.witness.has_value());

  const auto abelian = step(pair_of(4, "1^+", "3^+"));
  CHECK(abelian.step == 1);

  const auto full = step(pair_of(4, "1^+,3^+", "2^+"));
  CHECK(full.step == 3);
  CHECK(full.witness->size() == 3);
}

TEST_CASE("depth bound leaves a lower bound") {
  const auto r = step(pair_of(5, "1^+,3^+", "2^+,4^+"), 2);
  CHECK_FALSE(r.decided);
  CHECK(r.step == 3);
  CHECK(step(pair_of(5, "1^+,3^+", "2^+,4^+")).step == 4);
  CHECK_THROWS_AS(step(pair_of(3, "1^+", "2^+"), -1), InvalidArgument);
}

TEST_CASE("matching zero certificate") {
  const GroupSample g(Word(4, {{1, 1}, {3, 1}}), Word(4, {{1, 1}, {1, 1}}));
  // v = (1, 0, 1), w = (2, 0, 0)
  CHECK(matching_zero_certificate(g) == 2);
  const auto r = step(g);
  CHECK(r.certificate_d == 2);
  CHECK(r.step <= 1);
  CHECK_FALSE(matching_zero_certificate(pair_of(4, "1^+,2^+", "3^+")).has_value());
}

TEST_CASE("full step decisions agree with the exact step") {
  for (int n = 3; n <= 6; ++n)
    for (int len = 1; len <= (n <= 4 ? 2 : 1); ++len) {
      const auto words = word_count(n, len);
      for (std::uint64_t a = 0; a < words; ++a)
        for (std::uint64_t b = 0; b < words; ++b) {
          const GroupSample g(word_from_rank(n, len, a), word_from_rank(n, len, b));
          const bool full = step(g).step == n - 1;
          REQUIRE(full_step_status(g) == (full ? FullStep::yes : FullStep::no));
          REQUIRE(has_full_step(g) == full);
          if (sgn(corner_probe(g)) != 0) REQUIRE(full);
          REQUIRE(nonvanishing_top_pattern(g).has_value() == full);
        }
    }
}

TEST_CASE("full step above the ceiling") {
  std::mt19937_64 rng(6);
  FullStepOptions tight;
  tight.bracket_ceiling = 3;
  bool saw_undetermined = false;
  for (int k = 0; k < 400 && !saw_undetermined; ++k) {
    const GroupSample g(sample_word({6, 4, rng(), 0}), sample_word({6, 4, rng(), 1}));
    const auto status = full_step_status(g, tight);
    if (status == FullStep::undetermined) {
      saw_undetermined = true;
      CHECK_THROWS_AS(has_full_step(g, tight), BudgetExceeded);
    } else {
      CHECK((status == FullStep::yes) == (step(g).step == 5));
    }
  }
  CHECK(saw_undetermined);
}

TEST_CASE("type-i configuration") {
  const Word v(8, {{1, 1}, {5, 1}}), w(8, {{1, 1}, {2, 1}});
  CHECK(find_type_i_configuration(v, w) == 1);
  CHECK(count_type_i_configurations(v, w) == 1);
  CHECK_FALSE(find_type_i_configuration(w, v).has_value());
  CHECK_FALSE(is_abelian(GroupSample(v, w)));
  const Word v2(8, {{1, 1}, {5, -1}}), w2(8, {{1, 1}, {2, 1}, {5, 1}, {6, -1}});
  CHECK(count_type_i_configurations(v2, w2) == 2);
  CHECK_FALSE(find_type_i_configuration(Word(8, {{1, 1}, {1, 1}}), w).has_value());
}

TEST_CASE("exact step matches the brute force lower central series") {
  for (int n = 2; n <= 4; ++n)
    for (int len = 0; len <= (n == 4 ? 2 : 3); ++len) {
      const auto words = word_count(n, len);
      for (std::uint64_t a = 0; a < words; ++a)
        for (std::uint64_t b = 0; b < words; ++b) {
          const Word v = word_from_rank(n, len, a), w = word_from_rank(n, len, b);
          REQUIRE(step(GroupSample(v, w)).step == oracle::brute_force_step(oracle::eval(v), oracle::eval(w)));
        }
    }
}

TEST_CASE("random exact steps match the brute force at n = 5") {
  std::mt19937_64 rng(44);
  for (int k = 0; k < 200; ++k) {
    const Word v = sample_word({5, 3, rng(), 0}), w = sample_word({5, 3, rng(), 1});
    REQUIRE(step(GroupSample(v, w)).step == oracle::brute_force_step(oracle::eval(v), oracle::eval(w)));
  }
}

TEST_CASE("pattern commutator") {
  const auto g = pair_of(3, "1^+", "2^+");
  CHECK(pattern_commutator(g, "VW") == commutator(g.v_matrix(), g.w_matrix()));
  CHECK(pattern_commutator(g, "V") == g.v_matrix());
  CHECK(pattern_bracket(g, "VW") == BracketOperand{1});
  CHECK_THROWS_AS(pattern_commutator(g, "VX"), InvalidArgument);
}

TEST_CASE("group sample with supplied matrices") {
  const Word v(4, {{1, 1}, {2, 1}}), w(4, {{3, -1}});
  const GroupSample g(v, w, evaluate(v), evaluate(w));
  CHECK(g.v_matrix() == evaluate(v));
  CHECK_THROWS_AS(GroupSample(v, w, evaluate(v), evaluate(Word(5, {}))), InvalidArgument);
}

TEST_CASE("step report json") {
  const auto j = nlohmann::json::parse(to_json(step(pair_of(3, "1^+", "2^+"))));
  CHECK(j["step"] == 2);
  CHECK(j["witness"] == "VW");
  CHECK(j["certificate_d"].is_null());
  CHECK(j["decided"] == true);
}
