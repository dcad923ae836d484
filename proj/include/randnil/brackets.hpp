#pragma once

#include <vector>

#include "randnil/unipotent.hpp"

namespace randnil {

/// Integer vector fed to the bracket product: either a first superdiagonal
/// or the output of an earlier bracket.
using BracketOperand = std::vector<Integer>;

/// The modified determinant product [a b] for len(a) = s >= m = len(b) >= 2.
///
/// With p = s - m, entry t (1-based, t = 1..m-1) is
///
///     | a_t        b_t     |
///     | a_{p+t+1}  b_{t+1} |  =  a_t b_{t+1} - a_{p+t+1} b_t.
///
/// `a` is the superdiagonal of the matrix applied on the outside of the
/// commutator and `b` the accumulated inner vector, so that
/// bracket(sd(A), sd(B)) is the second superdiagonal of A B A^-1 B^-1.
BracketOperand bracket(const BracketOperand& a, const BracketOperand& b);

/// [b_1 [b_2 ... [b_k b_{k+1}] ... ]] for k + 1 operands of length n - 1.
///
/// Equals the (k+1)-st superdiagonal of [B_1, [B_2, ..., [B_k, B_{k+1}]]],
/// whose first k superdiagonals vanish. The result has n - 1 - k entries.
/// Throws BudgetExceeded ("depth exhausted") when k >= n - 1 and
/// InvalidArgument on fewer than two operands or ragged lengths.
BracketOperand iterated_bracket(const std::vector<BracketOperand>& operands);

/// Corner entry of [W, [W, ..., [W, V]]] (n - 2 copies of W) in closed form:
///
///     sum_{i=1}^{n-1} K_i v_i prod_{j != i} w_j,  K_i = (-1)^{n-1-i} C(n-2, i-1).
///
/// The coefficients follow from unrolling the bracket recursion: every outer
/// application of w acts as w_t x_{t+1} - w_{t+k} x_t, a signed Pascal step.
/// They alternate in sign and K_{n-1} = +1.
Integer corner_coefficient_form(const SuperdiagonalVector& v, const SuperdiagonalVector& w);

/// K_i from corner_coefficient_form for an n x n problem, 1 <= i <= n-1.
Integer corner_coefficient(int n, int i);

/// Exact C(n, k) by the multiplicative formula; zero outside 0 <= k <= n.
Integer binomial(long n, long k);

}  // namespace randnil
