#include "randnil/words.hpp"

#include <algorithm>
#include <charconv>
#include <random>

#include "randnil/errors.hpp"

namespace randnil {

Word::Word(int n, std::vector<Letter> l) : n(n), letters(std::move(l)) {
  if (n < 2) throw InvalidArgument("dimension must be >= 2, got " + std::to_string(n));
  for (const Letter& x : letters) {
    if (x.index < 1 || x.index > n - 1)
      throw InvalidArgument("letter index " + std::to_string(x.index) + " outside [1, " + std::to_string(n - 1) + "]");
    if (x.sign != 1 && x.sign != -1) throw InvalidArgument("letter sign must be +1 or -1");
  }
}

namespace {

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Word sample_word(const WalkSampler& s) { return sample_word_avoiding(s, {}); }

Word sample_word_avoiding(const WalkSampler& s, const std::vector<int>& excluded) {
  if (s.n < 2) throw InvalidArgument("dimension must be >= 2");
  if (s.length < 0) throw InvalidArgument("word length must be >= 0");

  std::vector<int> allowed;
  for (int i = 1; i <= s.n - 1; ++i)
    if (std::find(excluded.begin(), excluded.end(), i) == excluded.end()) allowed.push_back(i);
  if (allowed.empty() && s.length > 0) throw InvalidArgument("every generator index is excluded");

  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(s.length));
  if (s.length > 0) {
    auto engine = stream_engine(s.seed, s.stream_id);
    std::uniform_int_distribution<int> pick(0, 2 * static_cast<int>(allowed.size()) - 1);
    for (int j = 0; j < s.length; ++j) {
      const int r = pick(engine);
      letters.push_back({allowed[static_cast<std::size_t>(r / 2)], r % 2 == 0 ? 1 : -1});
    }
  }
  Word w;
  w.n = s.n;
  w.letters = std::move(letters);
  return w;
}

UnipotentMatrix evaluate(const Word& word) {
  UnipotentMatrix m(word.n);
  for (const Letter& x : word.letters) m.apply_elementary_right(x.index, x.sign);
  return m;
}

Word concat(const Word& a, const Word& b) {
  if (a.n != b.n) throw InvalidArgument("cannot concatenate words from different dimensions");
  Word out;
  out.n = a.n;
  out.letters.reserve(a.letters.size() + b.letters.size());
  out.letters.insert(out.letters.end(), a.letters.begin(), a.letters.end());
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

int sigma(int i, const Letter& letter) { return letter.index == i ? letter.sign : 0; }

SuperdiagonalVector superdiagonal_of_word(const Word& word) {
  std::vector<long> counts(static_cast<std::size_t>(word.n - 1), 0);
  for (const Letter& x : word.letters) counts[static_cast<std::size_t>(x.index - 1)] += x.sign;
  SuperdiagonalVector sd(word.n);
  for (std::size_t k = 0; k < counts.size(); ++k) sd.values[k] = counts[k];
  return sd;
}

// --- text format ------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, const char* what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InvalidArgument(std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  return value;
}

Letter parse_letter(std::string_view token) {
  token = trim(token);
  const auto caret = token.find('^');
  if (caret == std::string_view::npos) return {parse_int(token, "letter index"), 1};
  const int index = parse_int(token.substr(0, caret), "letter index");
  std::string_view sign_text = trim(token.substr(caret + 1));
  int sign = 0;
  if (sign_text == "+" ) sign = 1;
  else if (sign_text == "-") sign = -1;
  else sign = parse_int(sign_text, "letter sign");
  if (sign != 1 && sign != -1) throw InvalidArgument("letter sign must be +1 or -1, got '" + std::string(sign_text) + "'");
  return {index, sign};
}

}  // namespace

std::string format_letters(const Word& word) {
  std::string out;
  for (std::size_t j = 0; j < word.letters.size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(word.letters[j].index);
    out += word.letters[j].sign > 0 ? "^+1" : "^-1";
  }
  return out;
}

std::string format_word(const Word& word) {
  return std::to_string(word.n) + ":" + std::to_string(word.length()) + ":" + format_letters(word);
}

Word parse_letters(int n, std::string_view text) {
  std::vector<Letter> letters;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    letters.push_back(parse_letter(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (trim(text).empty()) throw InvalidArgument("trailing comma in letter list");
  }
  return Word(n, std::move(letters));
}

Word parse_word(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw InvalidArgument("word must look like n:length:letters");
  const int n = parse_int(text.substr(0, c1), "dimension");
  const int length = parse_int(text.substr(c1 + 1, c2 - c1 - 1), "word length");
  Word w = parse_letters(n, text.substr(c2 + 1));
  if (w.length() != length)
    throw InvalidArgument("declared length " + std::to_string(length) + " but found " + std::to_string(w.length()) +
                          " letters");
  return w;
}

}  // namespace randnil
