#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace randnil {

/// K = 1 / sqrt(2 pi), the local-limit constant of a lazy walk's return mass.
inline const double kLocalLimitConstant = 1.0 / std::sqrt(2.0 * M_PI);

/// One coordinate of a lazy walk on Z: each of `steps` i.i.d. increments is
/// +1 with p_plus, -1 with p_minus, 0 with p_zero. Only symmetric walks are
/// accepted.
struct LazyWalkParams {
  long steps = 0;
  mpq_class p_plus{0};
  mpq_class p_minus{0};
  mpq_class p_zero{1};

  /// Superdiagonal coordinate of a uniform word in U_n: p = 1 / (2(n-1)).
  static LazyWalkParams letter_model(int n, long steps);
  /// Per-step law with denominators n: p = 1 / (2n).
  static LazyWalkParams dimension_model(int n, long steps);
  static LazyWalkParams symmetric(const mpq_class& p_step, long steps);

  /// Throws InvalidArgument unless the probabilities lie in [0,1], sum to 1,
  /// are symmetric and steps >= 0.
  void validate() const;
};

/// Law of the endpoint of a lazy walk, on offsets -steps..steps.
///
/// Exact distributions keep integer weights over a common denominator, so
/// every mass is an exact rational. Approximate ones carry 128-bit
/// mantissa floats.
class EndpointDistribution {
 public:
  static EndpointDistribution exact(long steps, std::vector<mpz_class> weights, mpz_class denominator);
  static EndpointDistribution approximate(long steps, std::vector<mpf_class> mass);

  long steps() const noexcept { return steps_; }
  bool is_exact() const noexcept { return exact_; }

  double probability(long offset) const;
  /// Exact mass at `offset`; nullopt for approximate distributions.
  std::optional<mpq_class> rational(long offset) const;
  /// Fixed decimal rendering with `digits` significant digits.
  std::string decimal(long offset, int digits = 17) const;
  /// Exact total mass (approximate distributions round to the nearest rational of their float sum).
  mpq_class total_mass() const;

 private:
  long steps_ = 0;
  bool exact_ = true;
  std::vector<mpz_class> weights_;
  mpz_class denominator_{1};
  std::vector<mpf_class> approx_;
};

struct DpOptions {
  /// Above this many steps the convolution runs in 128-bit floating point
  /// and the result is flagged approximate.
  long exact_ceiling = 10000;
};

/// Convolution of the three-point step law, exact up to the ceiling.
EndpointDistribution dp_distribution(const LazyWalkParams& params, const DpOptions& options = {});

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
};

/// P(endpoint = 0) = (1/pi) int_0^pi phi(t)^steps dt with
/// phi(t) = 1 - 2 p (1 - cos t). Adaptive Gauss-Kronrod panels; throws
/// QuadratureError when the achieved error exceeds `tolerance`.
QuadratureResult quadrature_zero_probability(const LazyWalkParams& params, double tolerance = 1e-12);

/// Two coordinates moved by the same steps: each step moves coordinate one
/// by +-1 (p each), or coordinate two by +-1 (p each), or neither
/// (1 - 4p), where p = params.p_plus is the per-coordinate marginal.
/// Returns P(both endpoints are 0) from the 2-D characteristic function
/// 1 - 2p(1 - cos t1) - 2p(1 - cos t2).
QuadratureResult pair_zero_probability(const LazyWalkParams& params, double tolerance = 1e-12);

/// Same event as pair_zero_probability by exact 2-D convolution. Throws
/// BudgetExceeded above `max_steps`.
mpq_class pair_zero_probability_exact(const LazyWalkParams& params, long max_steps = 400);

/// K sqrt(n / steps): the asymptotic return mass. A reference curve only.
double asymptotic_zero_law(double n, double steps);

/// CSV with header offset,probability,rational (rational empty when approximate).
void write_distribution_csv(std::ostream& os, const EndpointDistribution& dist);

}  // namespace randnil
