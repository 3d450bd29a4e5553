#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ecv {

/// Arbitrary-precision signed integer. Decimal text is the canonical form.
using Integer = mpz_class;

Integer parse_integer(const std::string& text);
std::string to_string(const Integer& n);

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  const mpq_class& raw() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "n" for integers, "n/d" otherwise.
  std::string str() const;
  static Rational parse(const std::string& text);

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// An element of Z/mZ with 0 <= value < modulus.
class ResidueClass {
 public:
  ResidueClass(const Integer& value, const Integer& modulus);

  const Integer& value() const { return value_; }
  const Integer& modulus() const { return modulus_; }

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;

 private:
  Integer value_;
  Integer modulus_;
};

bool is_prime(const Integer& n);
bool is_prime(std::int64_t n);

/// Legendre symbol (a/p) for an odd prime p. Throws DomainError otherwise.
int legendre_symbol(const Integer& a, const Integer& p);

/// Largest e with p^e | n. Throws DomainError for n == 0 or non-prime p.
unsigned valuation(const Integer& n, const Integer& p);
/// p-adic valuation of a nonzero rational (negative when p divides the denominator).
long valuation(const Rational& x, const Integer& p);

/// Primes <= bound in ascending order (sieve of Eratosthenes).
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

/// A square root of a modulo an odd prime (Tonelli-Shanks), or nullopt when
/// a is a non-residue.
std::optional<ResidueClass> sqrt_mod(const ResidueClass& a);

/// Prime factorization by trial division, ascending primes with exponents.
std::vector<std::pair<Integer, unsigned>> factor(Integer n);

Integer mod_floor(const Integer& a, const Integer& m);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
/// Inverse of a mod m; throws DomainError if gcd(a, m) != 1.
Integer inverse_mod(const Integer& a, const Integer& m);
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Reduce a p-integral rational into [0, p). Throws DomainError if p | den.
Integer reduce_rational(const Rational& x, const Integer& p);

}  // namespace ecv
