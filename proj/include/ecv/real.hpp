#pragma once

#include <string>

#include <mpfr.h>

#include "ecv/arith.hpp"

namespace ecv {

/// Owning wrapper around an MPFR float of fixed precision. Results of binary
/// operations take the larger operand precision; rounding is to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128);
  Real(long v, mpfr_prec_t bits);
  Real(const Integer& v, mpfr_prec_t bits);
  Real(const Rational& v, mpfr_prec_t bits);
  Real(const std::string& decimal, mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  static Real pi(mpfr_prec_t bits);
  static Real from_double(long double v, mpfr_prec_t bits);
  /// 2^e at the given precision.
  static Real pow2(long e, mpfr_prec_t bits);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;
  Real& operator+=(const Real& o) { return *this = *this + o; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Exact value of the binary float.
  Rational to_rational() const;
  /// Decimal text with `digits` significant digits, e.g. "1.2500000000e-1".
  std::string str(int digits = 30) const;

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real max(const Real& a, const Real& b);

/// Arithmetic-geometric mean of two positive reals.
Real agm(const Real& a, const Real& b);
/// Iteration count used by the most recent agm() call on this thread.
int last_agm_iterations();

/// A real value with an absolute error bound.
struct RealApprox {
  Real value;
  Real error_bound;
};

}  // namespace ecv
