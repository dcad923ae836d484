#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

namespace randnil {

using Integer = mpz_class;

/// First-superdiagonal entries (1,2), (2,3), ..., (n-1,n) of an n x n matrix.
/// Index 0 of `values` holds entry (1,2).
struct SuperdiagonalVector {
  int n = 0;
  std::vector<Integer> values;

  SuperdiagonalVector() = default;
  explicit SuperdiagonalVector(int n);
  SuperdiagonalVector(int n, std::vector<Integer> values);

  /// 1-based access: at(k) is entry (k, k+1).
  const Integer& at(int k) const;
  Integer& at(int k);

  bool is_zero() const;
  friend bool operator==(const SuperdiagonalVector&, const SuperdiagonalVector&) = default;
};

/// Unit upper-triangular n x n integer matrix.
///
/// Only strictly-upper entries are stored. Storage is banded by diagonal
/// offset: diagonal d (1 <= d <= bandwidth()) holds entries (i, i+d) for
/// i = 1..n-d. Diagonals above the bandwidth are zero and not allocated, so a
/// product of short words costs O(n * band) memory rather than O(n^2). When
/// the band fills up the store is effectively dense.
///
/// The band is always trimmed: diagonal bandwidth() has a nonzero entry.
/// Indices in the public API are 1-based.
class UnipotentMatrix {
 public:
  /// The identity I_n. Throws InvalidArgument if n < 2.
  explicit UnipotentMatrix(int n);

  int dim() const noexcept { return n_; }
  int bandwidth() const noexcept { return static_cast<int>(diags_.size()); }

  /// Entry (i, j) for 1 <= i < j <= n. Throws InvalidArgument otherwise.
  Integer entry(int i, int j) const;
  void set_entry(int i, int j, const Integer& value);

  /// Right-multiplies in place by A_i^sign (adds sign * column i to column i+1).
  void apply_elementary_right(int i, int sign);

  bool is_identity() const noexcept { return diags_.empty(); }

  /// Hash of the entries, consistent with operator==.
  std::size_t hash() const noexcept;

  friend bool operator==(const UnipotentMatrix& a, const UnipotentMatrix& b);

 private:
  friend UnipotentMatrix multiply(const UnipotentMatrix&, const UnipotentMatrix&);
  friend UnipotentMatrix inverse(const UnipotentMatrix&);

  // offset d in [1, bandwidth], row i 1-based
  const Integer& raw(int d, int i) const { return diags_[d - 1][i - 1]; }
  Integer& raw(int d, int i) { return diags_[d - 1][i - 1]; }
  void grow_to(int band);
  void trim();

  int n_;
  std::vector<std::vector<Integer>> diags_;
};

UnipotentMatrix identity(int n);

/// A_i^sign: identity plus `sign` at (i, i+1). sign must be +1 or -1.
UnipotentMatrix elementary(int n, int i, int sign);

UnipotentMatrix multiply(const UnipotentMatrix& a, const UnipotentMatrix& b);

/// Exact inverse through the terminating series I - N + N^2 - ... where N is
/// the strictly upper part.
UnipotentMatrix inverse(const UnipotentMatrix& a);

/// a b a^-1 b^-1.
UnipotentMatrix commutator(const UnipotentMatrix& a, const UnipotentMatrix& b);

SuperdiagonalVector superdiagonal(const UnipotentMatrix& a);

/// Entries on diagonal `offset` (1 = first superdiagonal), top-left first.
std::vector<Integer> diagonal(const UnipotentMatrix& a, int offset);

inline bool is_identity(const UnipotentMatrix& a) { return a.is_identity(); }

std::ostream& operator<<(std::ostream& os, const UnipotentMatrix& a);

}  // namespace randnil
