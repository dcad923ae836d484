#include "randnil/unipotent.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "randnil/errors.hpp"

namespace randnil {

namespace {

void require_dim(int n) {
  if (n < 2) throw InvalidArgument("dimension must be >= 2, got " + std::to_string(n));
}

}  // namespace

SuperdiagonalVector::SuperdiagonalVector(int n) : n(n), values(static_cast<std::size_t>(std::max(n - 1, 0))) {
  require_dim(n);
}

SuperdiagonalVector::SuperdiagonalVector(int n, std::vector<Integer> v) : n(n), values(std::move(v)) {
  require_dim(n);
  if (values.size() != static_cast<std::size_t>(n - 1))
    throw InvalidArgument("superdiagonal of U_" + std::to_string(n) + " needs " + std::to_string(n - 1) +
                          " entries, got " + std::to_string(values.size()));
}

const Integer& SuperdiagonalVector::at(int k) const {
  if (k < 1 || k > n - 1) throw InvalidArgument("superdiagonal index out of range");
  return values[k - 1];
}

Integer& SuperdiagonalVector::at(int k) {
  if (k < 1 || k > n - 1) throw InvalidArgument("superdiagonal index out of range");
  return values[k - 1];
}

bool SuperdiagonalVector::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Integer& x) { return sgn(x) == 0; });
}

// ---------------------------------------------------------------------------

UnipotentMatrix::UnipotentMatrix(int n) : n_(n) { require_dim(n); }

Integer UnipotentMatrix::entry(int i, int j) const {
  if (i < 1 || j > n_ || i >= j)
    throw InvalidArgument("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not strictly upper in U_" +
                          std::to_string(n_));
  const int d = j - i;
  if (d > bandwidth()) return 0;
  return raw(d, i);
}

void UnipotentMatrix::set_entry(int i, int j, const Integer& value) {
  if (i < 1 || j > n_ || i >= j)
    throw InvalidArgument("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not strictly upper in U_" +
                          std::to_string(n_));
  const int d = j - i;
  if (d > bandwidth()) {
    if (sgn(value) == 0) return;
    grow_to(d);
  }
  raw(d, i) = value;
  trim();
}

void UnipotentMatrix::grow_to(int band) {
  while (bandwidth() < band) {
    const int d = bandwidth() + 1;
    diags_.emplace_back(static_cast<std::size_t>(n_ - d));
  }
}

void UnipotentMatrix::trim() {
  while (!diags_.empty() &&
         std::all_of(diags_.back().begin(), diags_.back().end(), [](const Integer& x) { return sgn(x) == 0; }))
    diags_.pop_back();
}

void UnipotentMatrix::apply_elementary_right(int i, int sign) {
  if (i < 1 || i > n_ - 1) throw InvalidArgument("generator index " + std::to_string(i) + " outside [1, n-1]");
  if (sign != 1 && sign != -1) throw InvalidArgument("generator sign must be +1 or -1");

  // Column i+1 += sign * column i. Entry (r, i) sits on offset i - r and moves
  // to offset i - r + 1. Walk offsets top-down so growth happens first.
  const int top = std::min(bandwidth(), i - 1);
  int cancelled_at = 0;  // highest offset where an entry became zero
  for (int d = top; d >= 1; --d) {
    const int r = i - d;
    if (sgn(raw(d, r)) == 0) continue;
    if (d + 1 > bandwidth()) grow_to(d + 1);
    Integer& target = raw(d + 1, r);
    if (sign > 0)
      mpz_add(target.get_mpz_t(), target.get_mpz_t(), raw(d, r).get_mpz_t());
    else
      mpz_sub(target.get_mpz_t(), target.get_mpz_t(), raw(d, r).get_mpz_t());
    if (sgn(target) == 0) cancelled_at = std::max(cancelled_at, d + 1);
  }
  if (bandwidth() == 0) grow_to(1);
  raw(1, i) += sign;
  if (sgn(raw(1, i)) == 0) cancelled_at = std::max(cancelled_at, 1);

  // Only a cancellation on the top diagonal can shrink the band.
  if (cancelled_at == bandwidth()) trim();
}

std::size_t UnipotentMatrix::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ULL;
  for (const auto& diag : diags_) {
    for (const auto& v : diag) {
      const std::size_t x = mpz_get_ui(v.get_mpz_t()) ^ (static_cast<std::size_t>(sgn(v) < 0) << 63);
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    h = h * 31 + diag.size();
  }
  return h;
}

bool operator==(const UnipotentMatrix& a, const UnipotentMatrix& b) {
  return a.n_ == b.n_ && a.diags_ == b.diags_;
}

// ---------------------------------------------------------------------------

UnipotentMatrix identity(int n) { return UnipotentMatrix(n); }

UnipotentMatrix elementary(int n, int i, int sign) {
  UnipotentMatrix m(n);
  m.apply_elementary_right(i, sign);
  return m;
}

namespace {

using Band = std::vector<std::vector<Integer>>;

// Strictly-upper product: (X Y)_{i, i+d} = sum_m X_{i, i+m} Y_{i+m, i+d}.
Band strict_product(int n, const Band& x, const Band& y) {
  const int bx = static_cast<int>(x.size());
  const int by = static_cast<int>(y.size());
  const int bc = std::min(n - 1, bx + by);
  Band c;
  Integer acc;
  for (int d = 2; d <= bc; ++d) {
    std::vector<Integer> diag(static_cast<std::size_t>(n - d));
    const int m_lo = std::max(1, d - by);
    const int m_hi = std::min(bx, d - 1);
    for (int i = 1; i <= n - d; ++i) {
      acc = 0;
      for (int m = m_lo; m <= m_hi; ++m) {
        const Integer& xv = x[m - 1][i - 1];
        if (sgn(xv) == 0) continue;
        const Integer& yv = y[d - m - 1][i + m - 1];
        if (sgn(yv) == 0) continue;
        mpz_addmul(acc.get_mpz_t(), xv.get_mpz_t(), yv.get_mpz_t());
      }
      diag[i - 1] = acc;
    }
    if (c.empty()) c.emplace_back(static_cast<std::size_t>(n - 1));  // offset 1 is always zero
    c.push_back(std::move(diag));
  }
  return c;
}

void add_into(Band& acc, const Band& x) {
  if (acc.size() < x.size()) {
    const int n = static_cast<int>(x[0].size()) + 1;
    for (std::size_t d = acc.size() + 1; d <= x.size(); ++d) acc.emplace_back(static_cast<std::size_t>(n - d));
  }
  for (std::size_t d = 0; d < x.size(); ++d)
    for (std::size_t i = 0; i < x[d].size(); ++i)
      if (sgn(x[d][i]) != 0) acc[d][i] += x[d][i];
}

bool band_zero(const Band& x) {
  for (const auto& diag : x)
    for (const auto& v : diag)
      if (sgn(v) != 0) return false;
  return true;
}

}  // namespace

UnipotentMatrix multiply(const UnipotentMatrix& a, const UnipotentMatrix& b) {
  if (a.dim() != b.dim())
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  UnipotentMatrix c(a.dim());
  c.diags_ = strict_product(a.dim(), a.diags_, b.diags_);
  add_into(c.diags_, a.diags_);
  add_into(c.diags_, b.diags_);
  c.trim();
  return c;
}

UnipotentMatrix inverse(const UnipotentMatrix& a) {
  const int n = a.dim();
  UnipotentMatrix r(n);
  if (a.is_identity()) return r;

  Band minus_n = a.diags_;
  for (auto& diag : minus_n)
    for (auto& v : diag) v = -v;

  // (I + N)^-1 = sum_k (-N)^k, and N^k = 0 once k >= n.
  r.diags_ = minus_n;
  Band power = minus_n;
  for (int k = 2; k < n; ++k) {
    power = strict_product(n, power, minus_n);
    if (band_zero(power)) break;
    add_into(r.diags_, power);
  }
  r.trim();
  return r;
}

UnipotentMatrix commutator(const UnipotentMatrix& a, const UnipotentMatrix& b) {
  if (a.dim() != b.dim())
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  if (a.is_identity() || b.is_identity()) return UnipotentMatrix(a.dim());
  return multiply(multiply(a, b), inverse(multiply(b, a)));
}

SuperdiagonalVector superdiagonal(const UnipotentMatrix& a) {
  return SuperdiagonalVector(a.dim(), diagonal(a, 1));
}

std::vector<Integer> diagonal(const UnipotentMatrix& a, int offset) {
  if (offset < 1 || offset > a.dim() - 1) throw InvalidArgument("diagonal offset out of range");
  std::vector<Integer> out(static_cast<std::size_t>(a.dim() - offset));
  if (offset <= a.bandwidth())
    for (int i = 1; i <= a.dim() - offset; ++i) out[i - 1] = a.entry(i, i + offset);
  return out;
}

std::ostream& operator<<(std::ostream& os, const UnipotentMatrix& a) {
  for (int i = 1; i <= a.dim(); ++i) {
    for (int j = 1; j <= a.dim(); ++j) {
      if (j > 1) os << ' ';
      if (j < i) os << 0;
      else if (j == i) os << 1;
      else os << a.entry(i, j);
    }
    os << '\n';
  }
  return os;
}

}  // namespace randnil
