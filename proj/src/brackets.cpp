#include "randnil/brackets.hpp"

#include <string>

#include "randnil/errors.hpp"

namespace randnil {

BracketOperand bracket(const BracketOperand& a, const BracketOperand& b) {
  const std::size_t s = a.size();
  const std::size_t m = b.size();
  if (m < 2) throw InvalidArgument("bracket needs an inner operand of length >= 2, got " + std::to_string(m));
  if (s < m)
    throw InvalidArgument("bracket operands out of order: outer length " + std::to_string(s) + " < inner length " +
                          std::to_string(m));
  const std::size_t p = s - m;
  BracketOperand out(m - 1);
  Integer tmp;
  for (std::size_t t = 0; t + 1 < m; ++t) {
    // 0-based: a[t] b[t+1] - a[p+t+1] b[t]
    mpz_mul(out[t].get_mpz_t(), a[t].get_mpz_t(), b[t + 1].get_mpz_t());
    mpz_mul(tmp.get_mpz_t(), a[p + t + 1].get_mpz_t(), b[t].get_mpz_t());
    out[t] -= tmp;
  }
  return out;
}

BracketOperand iterated_bracket(const std::vector<BracketOperand>& operands) {
  if (operands.size() < 2) throw InvalidArgument("iterated bracket needs at least two operands");
  const std::size_t len = operands.front().size();
  for (const auto& op : operands)
    if (op.size() != len) throw InvalidArgument("iterated bracket operands must share length n - 1");
  const std::size_t k = operands.size() - 1;
  if (k >= len)
    throw BudgetExceeded("depth exhausted: " + std::to_string(k) + "-fold commutator in U_" + std::to_string(len + 1) +
                         " has no nonzero superdiagonal left");

  BracketOperand acc = operands.back();
  for (std::size_t j = k; j-- > 0;) acc = bracket(operands[j], acc);
  return acc;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer corner_coefficient(int n, int i) {
  if (n < 3 || i < 1 || i > n - 1) throw InvalidArgument("corner coefficient needs n >= 3 and 1 <= i <= n-1");
  Integer k = binomial(n - 2, i - 1);
  if ((n - 1 - i) % 2 != 0) k = -k;
  return k;
}

Integer corner_coefficient_form(const SuperdiagonalVector& v, const SuperdiagonalVector& w) {
  if (v.n != w.n) throw InvalidArgument("dimension mismatch in corner form");
  const int n = v.n;
  if (n < 3) throw InvalidArgument("corner form needs n >= 3");

  // prefix[i] = w_1 ... w_i, suffix[i] = w_i ... w_{n-1}
  std::vector<Integer> prefix(static_cast<std::size_t>(n), 1), suffix(static_cast<std::size_t>(n + 1), 1);
  for (int i = 1; i <= n - 1; ++i) prefix[i] = prefix[i - 1] * w.at(i);
  for (int i = n - 1; i >= 1; --i) suffix[i] = suffix[i + 1] * w.at(i);

  Integer total = 0;
  for (int i = 1; i <= n - 1; ++i) {
    if (sgn(v.at(i)) == 0) continue;
    total += corner_coefficient(n, i) * v.at(i) * prefix[i - 1] * suffix[i + 1];
  }
  return total;
}

}  // namespace randnil
