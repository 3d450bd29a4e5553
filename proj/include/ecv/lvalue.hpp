#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecv/arith.hpp"
#include "ecv/curve.hpp"
#include "ecv/real.hpp"

namespace ecv {

/// Dirichlet coefficients a_1..a_M of L(E, s). coefficients[0] is unused.
struct AnSeries {
  Integer conductor;
  std::vector<Integer> coefficients;

  std::size_t terms() const { return coefficients.size() - 1; }
  const Integer& operator[](std::size_t n) const { return coefficients.at(n); }
};

/// Requires semistable reduction (a_p = +1 split, -1 non-split at bad p).
AnSeries an_coefficients(const WeierstrassCurve& c, std::size_t terms);

/// Bound on |sum_{n > M} 2 a_n/n exp(-2 pi n / sqrt(N))| from |a_n| <= d(n) sqrt(n) <= 2n.
Real l_series_tail_bound(const Integer& conductor, std::size_t terms, mpfr_prec_t bits);

/// L(E, 1) = 2 sum_n a_n/n exp(-2 pi n / sqrt(N)) (root number +1). Throws
/// InsufficientPrecisionError when the error bound exceeds `tolerance`.
RealApprox l_value_at_1(const AnSeries& series, mpfr_prec_t bits = 128, double tolerance = 1e-12);
RealApprox l_value_at_1(const WeierstrassCurve& c, std::size_t terms, mpfr_prec_t bits = 128,
                        double tolerance = 1e-12);

inline constexpr const char* kPeriodConvention =
    "Omega = integral of |dx/(2y+a1x+a3)| over all of E(R) (two components when disc > 0)";

/// Real period of the given model, summed over the real components.
RealApprox real_period(const WeierstrassCurve& c, mpfr_prec_t bits = 128);

/// Real roots of 4x^3 + b2 x^2 + 2 b4 x + b6, descending.
std::vector<Real> two_division_roots(const WeierstrassCurve& c, mpfr_prec_t bits);

/// The rational with denominator <= max_den inside [value - err, value + err],
/// if the interval is narrow enough (err < 1/(2 max_den^2)) and one exists.
std::optional<Rational> rational_reconstruct(const RealApprox& x, const Integer& max_den);

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

struct LRatio {
  RealApprox l_value;
  RealApprox period;
  RealApprox ratio;
  std::optional<Rational> reconstructed;
  std::size_t terms = 0;
  mpfr_prec_t bits = 0;
};

LRatio l_ratio(const WeierstrassCurve& c, std::size_t terms, mpfr_prec_t bits,
               const Integer& max_den = 100);

}  // namespace ecv
