#include "ecv/real.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "ecv/errors.hpp"

namespace ecv {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long v, mpfr_prec_t bits) : Real(bits) { mpfr_set_si(v_, v, MPFR_RNDN); }
Real::Real(const Integer& v, mpfr_prec_t bits) : Real(bits) { mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN); }
Real::Real(const Rational& v, mpfr_prec_t bits) : Real(bits) { mpfr_set_q(v_, v.raw().get_mpq_t(), MPFR_RNDN); }

Real::Real(const std::string& decimal, mpfr_prec_t bits) : Real(bits) {
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
    throw DomainError("not a decimal number: '" + decimal + "'");
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept : Real(o.precision()) { mpfr_swap(v_, o.v_); }

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::from_double(long double v, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_ld(r.v_, v, MPFR_RNDN);
  return r;
}

Real Real::pow2(long e, mpfr_prec_t bits) {
  Real r(1, bits);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

namespace {

mpfr_prec_t prec2(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(prec2(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(prec2(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(prec2(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (b.sign() == 0) throw DomainError("real division by zero");
  Real r(prec2(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Rational Real::to_rational() const {
  if (!is_finite()) throw DomainError("non-finite real");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return Rational(q);
}

std::string Real::str(int digits) const {
  const int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, v_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative real");
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive real");
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

namespace {
thread_local int agm_iterations = 0;
}  // namespace

Real agm(const Real& a0, const Real& b0) {
  if (a0.sign() <= 0 || b0.sign() <= 0) throw DomainError("agm of non-positive arguments");
  const mpfr_prec_t bits = prec2(a0, b0);
  Real a = a0, b = b0;
  const Real half = Real::pow2(-1, bits);
  const Real tol = Real::pow2(-static_cast<long>(bits) + 2, bits);
  agm_iterations = 0;
  while (abs(a - b) > tol * a) {
    Real next_a = (a + b) * half;
    b = sqrt(a * b);
    a = std::move(next_a);
    if (++agm_iterations > 10 * static_cast<int>(bits)) throw std::logic_error("agm did not converge");
  }
  // One more step makes the two means agree to full precision.
  Real next_a = (a + b) * half;
  b = sqrt(a * b);
  ++agm_iterations;
  return next_a;
}

int last_agm_iterations() { return agm_iterations; }

}  // namespace ecv
