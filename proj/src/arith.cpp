#include "ecv/arith.hpp"

#include <cctype>

#include "ecv/errors.hpp"

namespace ecv {

Integer parse_integer(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) throw DomainError("not an integer: '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw DomainError("not an integer: '" + text + "'");
  }
  return Integer(text[0] == '+' ? text.substr(1) : text, 10);
}

std::string to_string(const Integer& n) { return n.get_str(10); }

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) return to_string(num());
  return to_string(num()) + "/" + to_string(den());
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

ResidueClass::ResidueClass(const Integer& value, const Integer& modulus) : modulus_(modulus) {
  if (modulus < 2) throw DomainError("residue class modulus must be >= 2");
  value_ = mod_floor(value, modulus);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_prime(const Integer& n) {
  if (n.fits_slong_p()) return is_prime(static_cast<std::int64_t>(n.get_si()));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

int legendre_symbol(const Integer& a, const Integer& p) {
  if (p == 2 || !is_prime(p)) throw DomainError("legendre_symbol: modulus must be an odd prime");
  const Integer r = mod_floor(a, p);
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero");
  if (!is_prime(p)) throw DomainError("valuation: modulus must be prime");
  Integer rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& x, const Integer& p) {
  if (x.sign() == 0) throw DomainError("valuation of zero");
  return static_cast<long>(valuation(x.num(), p)) - static_cast<long>(valuation(x.den(), p));
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

namespace {

Integer powm(const Integer& b, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

std::optional<ResidueClass> sqrt_mod(const ResidueClass& a) {
  const Integer& p = a.modulus();
  if (p == 2) return a;
  const int chi = legendre_symbol(a.value(), p);
  if (chi == 0) return ResidueClass(0, p);
  if (chi < 0) return std::nullopt;

  // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
  Integer q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (legendre_symbol(z, p) != -1) ++z;

  Integer c = powm(z, q, p);
  Integer r = powm(a.value(), (q + 1) / 2, p);
  Integer t = powm(a.value(), q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Integer b = c;
    for (unsigned j = 0; j + 1 < m - i; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return ResidueClass(r, p);
}

std::vector<std::pair<Integer, unsigned>> factor(Integer n) {
  if (n == 0) throw DomainError("factor: zero");
  std::vector<std::pair<Integer, unsigned>> out;
  n = abs(n);
  for (Integer d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("inverse_mod: " + to_string(a) + " is not a unit mod " + to_string(m));
  return r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw DomainError("inverse_mod: not a unit");
  return mod_floor(old_s, m);
}

Integer reduce_rational(const Rational& x, const Integer& p) {
  return mod_floor(x.num() * inverse_mod(x.den(), p), p);
}

}  // namespace ecv
