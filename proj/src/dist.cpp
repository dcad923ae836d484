#include "randnil/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "randnil/errors.hpp"

namespace randnil {

namespace {

constexpr unsigned kFloatBits = 128;

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// out = z * mid + a * (left + right); small weights take the _ui fast path.
void three_point(mpz_class& out, const mpz_class& z, const mpz_class& a, const mpz_class& left, const mpz_class& mid,
                 const mpz_class& right, mpz_class& scratch) {
  mpz_add(scratch.get_mpz_t(), left.get_mpz_t(), right.get_mpz_t());
  if (a.fits_ulong_p())
    mpz_mul_ui(out.get_mpz_t(), scratch.get_mpz_t(), a.get_ui());
  else
    mpz_mul(out.get_mpz_t(), scratch.get_mpz_t(), a.get_mpz_t());
  if (z.fits_ulong_p())
    mpz_addmul_ui(out.get_mpz_t(), mid.get_mpz_t(), z.get_ui());
  else
    mpz_addmul(out.get_mpz_t(), mid.get_mpz_t(), z.get_mpz_t());
}

// phi(t) = 1 - 2p(1 - cos t) = 1 - 4p sin^2(t/2), raised to `steps`.
double phi_power(double four_p, double s2, long steps) {
  const double x = -four_p * s2;
  if (x > -1.0) return std::exp(static_cast<double>(steps) * std::log1p(x));
  return std::pow(1.0 + x, static_cast<double>(steps));
}

}  // namespace

// --- params -----------------------------------------------------------------

LazyWalkParams LazyWalkParams::symmetric(const mpq_class& p_step, long steps) {
  LazyWalkParams p;
  p.steps = steps;
  p.p_plus = p_step;
  p.p_minus = p_step;
  p.p_zero = 1 - 2 * p_step;
  p.p_zero.canonicalize();
  p.validate();
  return p;
}

LazyWalkParams LazyWalkParams::letter_model(int n, long steps) {
  if (n < 2) throw InvalidArgument("dimension must be >= 2");
  return symmetric(mpq_class(1, 2 * (n - 1)), steps);
}

LazyWalkParams LazyWalkParams::dimension_model(int n, long steps) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  return symmetric(mpq_class(1, 2 * n), steps);
}

void LazyWalkParams::validate() const {
  if (steps < 0) throw InvalidArgument("lazy walk needs steps >= 0");
  for (const mpq_class* p : {&p_plus, &p_minus, &p_zero})
    if (*p < 0 || *p > 1) throw InvalidArgument("step probabilities must lie in [0, 1]");
  if (p_plus + p_minus + p_zero != 1) throw InvalidArgument("step probabilities must sum to 1");
  if (p_plus != p_minus) throw InvalidArgument("only symmetric lazy walks are supported");
}

// --- distribution -----------------------------------------------------------

EndpointDistribution EndpointDistribution::exact(long steps, std::vector<mpz_class> weights, mpz_class denominator) {
  EndpointDistribution d;
  d.steps_ = steps;
  d.exact_ = true;
  d.weights_ = std::move(weights);
  d.denominator_ = std::move(denominator);
  return d;
}

EndpointDistribution EndpointDistribution::approximate(long steps, std::vector<mpf_class> mass) {
  EndpointDistribution d;
  d.steps_ = steps;
  d.exact_ = false;
  d.approx_ = std::move(mass);
  return d;
}

double EndpointDistribution::probability(long offset) const {
  if (offset < -steps_ || offset > steps_) return 0.0;
  const auto k = static_cast<std::size_t>(offset + steps_);
  if (!exact_) return approx_[k].get_d();
  return rational(offset)->get_d();
}

std::optional<mpq_class> EndpointDistribution::rational(long offset) const {
  if (!exact_) return std::nullopt;
  if (offset < -steps_ || offset > steps_) return mpq_class(0);
  mpq_class q(weights_[static_cast<std::size_t>(offset + steps_)], denominator_);
  q.canonicalize();
  return q;
}

std::string EndpointDistribution::decimal(long offset, int digits) const {
  mpf_class value(0, kFloatBits);
  if (offset >= -steps_ && offset <= steps_) {
    if (exact_)
      value = mpf_class(*rational(offset), kFloatBits);
    else
      value = approx_[static_cast<std::size_t>(offset + steps_)];
  }
  char* raw = nullptr;
  gmp_asprintf(&raw, "%.*Fg", digits, value.get_mpf_t());
  std::string out(raw);
  void (*free_fn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(raw, out.size() + 1);
  return out;
}

mpq_class EndpointDistribution::total_mass() const {
  if (exact_) {
    mpz_class sum = 0;
    for (const auto& w : weights_) sum += w;
    mpq_class q(sum, denominator_);
    q.canonicalize();
    return q;
  }
  mpf_class sum(0, kFloatBits);
  for (const auto& m : approx_) sum += m;
  return mpq_class(sum);
}

EndpointDistribution dp_distribution(const LazyWalkParams& params, const DpOptions& options) {
  params.validate();
  const long steps = params.steps;
  const auto width = static_cast<std::size_t>(2 * steps + 3);  // one guard slot on each side
  const auto centre = static_cast<std::size_t>(steps + 1);

  if (steps <= options.exact_ceiling) {
    const mpz_class denom = lcm(params.p_plus.get_den(), params.p_zero.get_den());
    const mpz_class a = params.p_plus.get_num() * (denom / params.p_plus.get_den());
    const mpz_class z = params.p_zero.get_num() * (denom / params.p_zero.get_den());

    // The law is symmetric, so only offsets 0..steps are tracked; slot
    // steps + 1 is a zero guard and offset -1 mirrors offset 1.
    std::vector<mpz_class> cur(static_cast<std::size_t>(steps + 2)), next(cur.size());
    cur[0] = 1;
    mpz_class scratch;
    for (long j = 1; j <= steps; ++j) {
      three_point(next[0], z, a, cur[1], cur[0], cur[1], scratch);
      for (std::size_t k = 1; k <= static_cast<std::size_t>(j); ++k)
        three_point(next[k], z, a, cur[k - 1], cur[k], cur[k + 1], scratch);
      std::swap(cur, next);
    }
    mpz_class total;
    mpz_pow_ui(total.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(steps));
    std::vector<mpz_class> weights(width - 2);
    for (long k = 0; k <= steps; ++k) {
      weights[static_cast<std::size_t>(steps + k)] = cur[static_cast<std::size_t>(k)];
      weights[static_cast<std::size_t>(steps - k)] = cur[static_cast<std::size_t>(k)];
    }
    return EndpointDistribution::exact(steps, std::move(weights), std::move(total));
  }

  const mpf_class pa(params.p_plus, kFloatBits);
  const mpf_class pz(params.p_zero, kFloatBits);
  std::vector<mpf_class> cur(width, mpf_class(0, kFloatBits)), next(width, mpf_class(0, kFloatBits));
  cur[centre] = 1;
  mpf_class tmp(0, kFloatBits);
  for (long j = 1; j <= steps; ++j) {
    for (std::size_t k = centre - static_cast<std::size_t>(j); k <= centre + static_cast<std::size_t>(j); ++k) {
      tmp = cur[k - 1] + cur[k + 1];
      next[k] = pa * tmp + pz * cur[k];
    }
    std::swap(cur, next);
  }
  std::vector<mpf_class> mass(cur.begin() + 1, cur.end() - 1);
  return EndpointDistribution::approximate(steps, std::move(mass));
}

// --- quadrature -------------------------------------------------------------

QuadratureResult quadrature_zero_probability(const LazyWalkParams& params, double tolerance) {
  params.validate();
  if (params.steps == 0) return {1.0, 0.0};
  const double four_p = 4.0 * params.p_plus.get_d();
  const long steps = params.steps;
  auto f = [&](double t) {
    const double s = std::sin(0.5 * t);
    return phi_power(four_p, s * s, steps);
  };
  double err = 0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, M_PI, 15, tolerance * 1e-2, &err);
  QuadratureResult r{integral / M_PI, err / M_PI};
  if (!(r.error_estimate <= tolerance))
    throw QuadratureError("one-dimensional quadrature did not reach the requested tolerance", r.error_estimate);
  return r;
}

QuadratureResult pair_zero_probability(const LazyWalkParams& params, double tolerance) {
  params.validate();
  if (params.p_plus * 4 > 1) throw InvalidArgument("pair walk needs 4 p <= 1");
  if (params.steps == 0) return {1.0, 0.0};
  const double four_p = 4.0 * params.p_plus.get_d();
  const long steps = params.steps;

  double worst_inner = 0;
  auto outer = [&](double t1) {
    const double s1 = std::sin(0.5 * t1);
    // The integrand peaks at t2 = 0; once that peak is negligible a relative
    // tolerance means nothing and the panels would split down to max depth.
    const double peak = phi_power(four_p, s1 * s1, steps);
    if (M_PI * peak < tolerance * 1e-6) {
      worst_inner = std::max(worst_inner, M_PI * peak);
      return M_PI * peak * 0.5;
    }
    auto inner = [&](double t2) {
      const double s2 = std::sin(0.5 * t2);
      return phi_power(four_p, s1 * s1 + s2 * s2, steps);
    };
    double e = 0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(inner, 0.0, M_PI, 15, tolerance * 1e-2, &e);
    worst_inner = std::max(worst_inner, e);
    return v;
  };
  double err = 0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(outer, 0.0, M_PI, 15, tolerance * 1e-2, &err);
  const double pi2 = M_PI * M_PI;
  QuadratureResult r{integral / pi2, (err + M_PI * worst_inner) / pi2};
  if (!(r.error_estimate <= tolerance))
    throw QuadratureError("two-dimensional quadrature did not reach the requested tolerance", r.error_estimate);
  return r;
}

mpq_class pair_zero_probability_exact(const LazyWalkParams& params, long max_steps) {
  params.validate();
  if (params.p_plus * 4 > 1) throw InvalidArgument("pair walk needs 4 p <= 1");
  if (params.steps > max_steps)
    throw BudgetExceeded("2-D convolution limited to " + std::to_string(max_steps) + " steps");
  const long steps = params.steps;
  mpq_class stay = 1 - 4 * params.p_plus;
  stay.canonicalize();
  const mpz_class denom = lcm(params.p_plus.get_den(), stay.get_den());
  const mpz_class a = params.p_plus.get_num() * (denom / params.p_plus.get_den());
  const mpz_class z = stay.get_num() * (denom / stay.get_den());

  const long side = 2 * steps + 3;
  auto at = [side](long x, long y) { return static_cast<std::size_t>(x * side + y); };
  std::vector<mpz_class> cur(static_cast<std::size_t>(side * side)), next(cur.size());
  const long c = steps + 1;
  cur[at(c, c)] = 1;
  mpz_class tmp;
  for (long j = 1; j <= steps; ++j) {
    for (long x = c - j; x <= c + j; ++x)
      for (long y = c - j; y <= c + j; ++y) {
        mpz_class& out = next[at(x, y)];
        tmp = cur[at(x - 1, y)] + cur[at(x + 1, y)] + cur[at(x, y - 1)] + cur[at(x, y + 1)];
        out = a * tmp + z * cur[at(x, y)];
      }
    std::swap(cur, next);
  }
  mpz_class total;
  mpz_pow_ui(total.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(steps));
  mpq_class q(cur[at(c, c)], total);
  q.canonicalize();
  return q;
}

double asymptotic_zero_law(double n, double steps) {
  if (!(steps > 0)) throw InvalidArgument("asymptotic law needs steps > 0");
  return kLocalLimitConstant * std::sqrt(n / steps);
}

void write_distribution_csv(std::ostream& os, const EndpointDistribution& dist) {
  os << "offset,probability,rational\n";
  for (long k = -dist.steps(); k <= dist.steps(); ++k) {
    os << k << ',' << dist.decimal(k) << ',';
    if (auto q = dist.rational(k)) os << q->get_str();
    os << '\n';
  }
}

}  // namespace randnil
