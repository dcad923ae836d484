#pragma once

// Independent reference arithmetic for small cases: dense int64 matrices of
// fixed capacity and a brute-force lower central series. Nothing here shares
// code with the library beyond the Word type.

#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "randnil/words.hpp"

namespace oracle {

constexpr int kMaxDim = 12;

struct Dense {
  int n = 0;
  std::array<std::array<std::int64_t, kMaxDim>, kMaxDim> a{};

  explicit Dense(int dim = 2) : n(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::out_of_range("dense oracle dimension");
    for (int i = 0; i < n; ++i) a[i][i] = 1;
  }

  std::int64_t at(int i, int j) const { return a[i - 1][j - 1]; }  // 1-based

  bool identity() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a[i][j] != (i == j ? 1 : 0)) return false;
    return true;
  }

  friend bool operator==(const Dense& x, const Dense& y) { return x.n == y.n && x.a == y.a; }
  friend bool operator<(const Dense& x, const Dense& y) { return x.a < y.a; }
};

inline std::int64_t checked_mul_add(std::int64_t acc, std::int64_t x, std::int64_t y) {
  std::int64_t p, s;
  if (__builtin_mul_overflow(x, y, &p) || __builtin_add_overflow(acc, p, &s))
    throw std::overflow_error("dense oracle entry overflow");
  return s;
}

inline Dense mul(const Dense& x, const Dense& y) {
  Dense c(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < x.n; ++k)
        if (x.a[i][k] && y.a[k][j]) s = checked_mul_add(s, x.a[i][k], y.a[k][j]);
      c.a[i][j] = s;
    }
  return c;
}

// Unit upper triangular, so back substitution on columns.
inline Dense inv(const Dense& x) {
  Dense r(x.n);
  for (int j = 0; j < x.n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      std::int64_t s = 0;
      for (int k = i + 1; k <= j; ++k) s = checked_mul_add(s, -x.a[i][k], r.a[k][j]);
      r.a[i][j] = s;
    }
  return r;
}

inline Dense comm(const Dense& x, const Dense& y) { return mul(mul(x, y), mul(inv(x), inv(y))); }

inline Dense elem(int n, int i, int sign) {
  Dense m(n);
  m.a[i - 1][i] = sign;
  return m;
}

inline Dense eval(const randnil::Word& w) {
  Dense m(w.n);
  for (const auto& l : w.letters) m = mul(m, elem(w.n, l.index, l.sign));
  return m;
}

// Step of <V, W> from the lower central series: L_0 = {V, W} and
// L_i = {[x, y] : x in E, y in L_{i-1}}, where E holds every product of at
// most two of V, W, V^-1, W^-1. Returns the first i with L_i trivial.
inline int brute_force_step(const Dense& v, const Dense& w) {
  const int n = v.n;
  const std::vector<Dense> gens = {v, w, inv(v), inv(w)};
  std::set<Dense> e(gens.begin(), gens.end());
  for (const Dense& x : gens)
    for (const Dense& y : gens) e.insert(mul(x, y));

  std::set<Dense> level;
  for (const Dense& g : {v, w})
    if (!g.identity()) level.insert(g);
  if (level.empty()) return 0;
  for (int i = 1; i <= n; ++i) {
    std::set<Dense> next;
    for (const Dense& x : e)
      for (const Dense& y : level) {
        Dense c = comm(x, y);
        if (!c.identity()) next.insert(c);
      }
    if (next.empty()) return i;
    level = std::move(next);
  }
  throw std::logic_error("lower central series did not terminate by depth n");
}

}  // namespace oracle
