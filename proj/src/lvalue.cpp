#include "ecv/lvalue.hpp"

#include <algorithm>
#include <cmath>

#include "ecv/counting.hpp"
#include "ecv/errors.hpp"
#include "ecv/local_data.hpp"

namespace ecv {

AnSeries an_coefficients(const WeierstrassCurve& c, std::size_t terms) {
  if (terms < 1) throw DomainError("an_coefficients: need at least one term");
  AnSeries s;
  s.conductor = conductor_semistable(c);
  s.coefficients.assign(terms + 1, Integer(0));
  s.coefficients[1] = 1;

  std::vector<std::size_t> spf(terms + 1, 0);
  for (std::size_t i = 2; i <= terms; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t j = i; j <= terms; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }

  // Prime powers first, then multiplicativity on coprime factors.
  for (std::size_t p = 2; p <= terms; ++p) {
    if (spf[p] != p) continue;
    const Integer P(static_cast<unsigned long>(p));
    const ReductionKind kind = reduction_type(c, P);
    Integer ap;
    if (kind == ReductionKind::good) {
      ap = trace_ap(c, static_cast<std::int64_t>(p));
    } else {
      ap = kind == ReductionKind::split_multiplicative ? 1 : -1;
    }
    Integer prev = 1, cur = ap;
    for (std::size_t q = p; q <= terms; q *= p) {
      s.coefficients[q] = cur;
      const Integer next = kind == ReductionKind::good ? Integer(ap * cur - P * prev) : Integer(ap * cur);
      prev = cur;
      cur = next;
      if (q > terms / p) break;
    }
  }
  for (std::size_t n = 2; n <= terms; ++n) {
    const std::size_t p = spf[n];
    std::size_t q = p;
    while (n % (q * p) == 0) q *= p;
    if (q != n) s.coefficients[n] = s.coefficients[q] * s.coefficients[n / q];
  }
  return s;
}

Real l_series_tail_bound(const Integer& conductor, std::size_t terms, mpfr_prec_t bits) {
  // |2 a_n/n e^{-cn}| <= 4 e^{-cn}; geometric tail from n = M + 1.
  const Real c = Real(2, bits) * Real::pi(bits) / sqrt(Real(conductor, bits));
  const Real first = exp(-(c * Real(static_cast<long>(terms + 1), bits)));
  return Real(4, bits) * first / (Real(1, bits) - exp(-c));
}

RealApprox l_value_at_1(const AnSeries& series, mpfr_prec_t bits, double tolerance) {
  const std::size_t m = series.terms();
  const Real c = Real(2, bits) * Real::pi(bits) / sqrt(Real(series.conductor, bits));
  Real sum(0, bits), magnitude(0, bits);
  for (std::size_t n = 1; n <= m; ++n) {
    if (series[n] == 0) continue;
    const Real nn(static_cast<long>(n), bits);
    const Real term = Real(series[n], bits) / nn * exp(-(c * nn));
    sum += term;
    magnitude += abs(term);
  }
  RealApprox out{Real(2, bits) * sum, Real(bits)};
  const Real rounding = Real(2, bits) * magnitude * Real(static_cast<long>(m + 16), bits) *
                        Real::pow2(-static_cast<long>(bits) + 4, bits);
  out.error_bound = l_series_tail_bound(series.conductor, m, bits) + rounding;
  if (out.error_bound > Real::from_double(tolerance, bits)) {
    throw InsufficientPrecisionError("l_value_at_1: " + std::to_string(m) +
                                     " terms leave error bound " + out.error_bound.str(6) +
                                     " above tolerance " + std::to_string(tolerance));
  }
  return out;
}

RealApprox l_value_at_1(const WeierstrassCurve& c, std::size_t terms, mpfr_prec_t bits,
                        double tolerance) {
  return l_value_at_1(an_coefficients(c, terms), bits, tolerance);
}

namespace {

Real cubic(const Real& x, const Real& b2, const Real& b4, const Real& b6) {
  const mpfr_prec_t bits = x.precision();
  return ((Real(4, bits) * x + b2) * x + Real(2, bits) * b4) * x + b6;
}

Real cubic_derivative(const Real& x, const Real& b2, const Real& b4) {
  const mpfr_prec_t bits = x.precision();
  return (Real(12, bits) * x + Real(2, bits) * b2) * x + Real(2, bits) * b4;
}

}  // namespace

std::vector<Real> two_division_roots(const WeierstrassCurve& c, mpfr_prec_t bits) {
  const auto& inv = c.invariants();
  const long double B2 = inv.b2.get_d(), B4 = inv.b4.get_d(), B6 = inv.b6.get_d();

  // Seeds from the depressed cubic t^3 + pt + q, x = t - b2/12.
  const long double shift = B2 / 12.0L;
  const long double p = (2 * B4 / 4.0L) - 3 * shift * shift;
  const long double q = 2 * shift * shift * shift - (2 * B4 / 4.0L) * shift + B6 / 4.0L;
  std::vector<long double> seeds;
  if (inv.discriminant > 0) {
    const long double r = 2 * std::sqrt(-p / 3);
    const long double phi = std::acos(std::clamp(3 * q / (p * r), -1.0L, 1.0L));
    for (int k = 0; k < 3; ++k) seeds.push_back(r * std::cos((phi - 2 * M_PIl * k) / 3) - shift);
  } else {
    const long double d = q * q / 4 + p * p * p / 27;
    const long double s = std::sqrt(std::max(d, 0.0L));
    seeds.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s) - shift);
  }

  const Real b2(inv.b2, bits), b4(inv.b4, bits), b6(inv.b6, bits);
  std::vector<Real> roots;
  for (long double seed : seeds) {
    Real x = Real::from_double(seed, bits);
    // Newton refinement to full working precision.
    const Real tiny = Real::pow2(-static_cast<long>(bits) + 2, bits);
    for (int it = 0; it < 200; ++it) {
      const Real d = cubic_derivative(x, b2, b4);
      if (d.sign() == 0) break;
      const Real step = cubic(x, b2, b4, b6) / d;
      x = x - step;
      if (abs(step) <= (abs(x) + Real(1, bits)) * tiny) break;
    }
    roots.push_back(std::move(x));
  }
  std::sort(roots.begin(), roots.end(), [](const Real& a, const Real& b) { return b < a; });
  return roots;
}

RealApprox real_period(const WeierstrassCurve& c, mpfr_prec_t bits) {
  if (!c.over_rationals()) throw DomainError("real_period expects a curve over Q");
  const mpfr_prec_t work = bits + 32;
  const auto roots = two_division_roots(c, work);
  const Real two_pi = Real(2, work) * Real::pi(work);
  Real omega(work);
  if (c.discriminant() > 0) {
    const Real& e1 = roots[0];
    const Real& e2 = roots[1];
    const Real& e3 = roots[2];
    omega = two_pi / agm(sqrt(e1 - e3), sqrt(e1 - e2));
  } else {
    const Real& e1 = roots[0];
    const Real b2(c.invariants().b2, work), b4(c.invariants().b4, work);
    const Real r = sqrt(Real(3, work) * e1 * e1 + b2 * e1 / Real(2, work) + b4 / Real(2, work));
    omega = two_pi / agm(Real(2, work) * sqrt(r),
                         sqrt(Real(2, work) * r + Real(3, work) * e1 + b2 / Real(4, work)));
  }
  RealApprox out{Real(bits), Real(bits)};
  mpfr_set(out.value.get(), omega.get(), MPFR_RNDN);
  out.error_bound = abs(out.value) * Real::pow2(-static_cast<long>(bits) + 8, bits);
  return out;
}

Rational simplest_rational_between(const Rational& lo_in, const Rational& hi_in) {
  if (hi_in < lo_in) throw DomainError("simplest_rational_between: empty interval");
  // Continued-fraction walk on both endpoints.
  if (lo_in.sign() <= 0 && hi_in.sign() >= 0) return Rational(0);
  if (hi_in.sign() < 0) return -simplest_rational_between(-hi_in, -lo_in);
  Rational lo = lo_in, hi = hi_in;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.num().get_mpz_t(), lo.den().get_mpz_t());
  if (Rational(fl) == lo) return lo;
  if (Rational(Integer(fl + 1)) <= hi) return Rational(Integer(fl + 1));
  // lo and hi share the integer part fl: recurse on reciprocals of the fractional parts.
  const Rational inner = simplest_rational_between(Rational(1) / (hi - Rational(fl)),
                                                   Rational(1) / (lo - Rational(fl)));
  return Rational(fl) + Rational(1) / inner;
}

std::optional<Rational> rational_reconstruct(const RealApprox& x, const Integer& max_den) {
  if (max_den < 1) throw DomainError("rational_reconstruct: max_den must be positive");
  const Rational err = x.error_bound.to_rational();
  const Rational limit = Rational(1, 2 * max_den * max_den);
  if (!(err < limit)) return std::nullopt;
  const Rational v = x.value.to_rational();
  const Rational candidate = simplest_rational_between(v - err, v + err);
  if (candidate.den() > max_den) return std::nullopt;
  return candidate;
}

LRatio l_ratio(const WeierstrassCurve& c, std::size_t terms, mpfr_prec_t bits, const Integer& max_den) {
  LRatio out{l_value_at_1(c, terms, bits), real_period(c, bits), {Real(bits), Real(bits)}, {}, terms, bits};
  const Real& l = out.l_value.value;
  const Real& w = out.period.value;
  out.ratio.value = l / w;
  out.ratio.error_bound =
      (out.l_value.error_bound + abs(out.ratio.value) * out.period.error_bound) /
          (abs(w) - out.period.error_bound) +
      abs(out.ratio.value) * Real::pow2(-static_cast<long>(bits) + 4, bits);
  out.reconstructed = rational_reconstruct(out.ratio, max_den);
  return out;
}

}  // namespace ecv
