#include "ecv/padic.hpp"

#include <algorithm>
#include <sstream>

#include "ecv/errors.hpp"
#include "ecv/local_data.hpp"

namespace ecv {

namespace {

Integer power(const Integer& p, long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::max(e, 0L)));
  return r;
}

// Splits n != 0 as p^k * m with p not dividing m.
long strip(const Integer& p, Integer& n) {
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace

PadicNumber PadicNumber::from_unit(const Integer& p, long valuation, const Integer& unit, long precision) {
  if (precision < 1) throw DomainError("p-adic precision must be >= 1");
  PadicNumber x;
  x.p_ = p;
  x.v_ = valuation;
  x.r_ = precision;
  x.u_ = mod_floor(unit, power(p, precision));
  if (mpz_divisible_p(x.u_.get_mpz_t(), p.get_mpz_t())) throw DomainError("from_unit: not a unit");
  return x;
}

PadicNumber PadicNumber::from_residue(const Integer& p, const Integer& n, long absolute_precision) {
  Integer m = mod_floor(n, power(p, absolute_precision));
  if (m == 0) {
    PadicNumber z;
    z.p_ = p;
    z.zero_ = true;
    z.v_ = absolute_precision;
    return z;
  }
  const long k = strip(p, m);
  return from_unit(p, k, m, absolute_precision - k);
}

PadicNumber::PadicNumber(const Integer& p, const Rational& x, long precision) {
  if (!is_prime(p)) throw DomainError("p-adic prime must be prime");
  if (precision < 1) throw DomainError("p-adic precision must be >= 1");
  p_ = p;
  if (x.sign() == 0) {
    zero_ = true;
    v_ = precision;
    return;
  }
  Integer num = x.num(), den = x.den();
  v_ = strip(p, num) - strip(p, den);
  r_ = precision;
  const Integer mod = power(p, precision);
  u_ = mod_floor(num * inverse_mod(den, mod), mod);
}

std::vector<unsigned long> PadicNumber::digits() const {
  std::vector<unsigned long> out;
  Integer u = u_;
  for (long i = 0; i < precision(); ++i) {
    out.push_back(mod_floor(u, p_).get_ui());
    u /= p_;
  }
  return out;
}

bool PadicNumber::agrees_with(const PadicNumber& o, long n) const {
  if (p_ != o.p_ || zero_ != o.zero_) return false;
  if (zero_) return true;
  if (v_ != o.v_ || precision() < n || o.precision() < n) return false;
  const Integer mod = power(p_, n);
  return mod_floor(u_, mod) == mod_floor(o.u_, mod);
}

PadicNumber PadicNumber::truncated(long precision) const {
  if (zero_ || precision >= r_) return *this;
  return from_unit(p_, v_, u_, precision);
}

std::string PadicNumber::str() const {
  std::ostringstream os;
  os << "p=" << to_string(p_);
  if (zero_) {
    os << " zero O(p^" << v_ << ")";
    return os.str();
  }
  os << " v=" << v_ << " prec=" << r_ << " digits=";
  const auto d = digits();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (p_ > 10 && i) os << ',';
    os << d[i];
  }
  return os.str();
}

PadicNumber PadicNumber::parse(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Integer p;
  long v = 0, prec = 0;
  std::string digit_text;
  bool zero = false;
  while (in >> tok) {
    if (tok.rfind("p=", 0) == 0) p = parse_integer(tok.substr(2));
    else if (tok.rfind("v=", 0) == 0) v = std::stol(tok.substr(2));
    else if (tok.rfind("prec=", 0) == 0) prec = std::stol(tok.substr(5));
    else if (tok.rfind("digits=", 0) == 0) digit_text = tok.substr(7);
    else if (tok == "zero") zero = true;
    else if (tok.rfind("O(p^", 0) == 0) v = std::stol(tok.substr(4, tok.size() - 5));
    else throw DomainError("cannot parse p-adic number: '" + text + "'");
  }
  if (zero) return from_residue(p, 0, v);
  std::vector<Integer> d;
  if (p > 10) {
    std::istringstream ds(digit_text);
    std::string part;
    while (std::getline(ds, part, ',')) d.push_back(parse_integer(part));
  } else {
    for (char ch : digit_text) d.push_back(Integer(ch - '0'));
  }
  if (static_cast<long>(d.size()) != prec) throw DomainError("p-adic digit count mismatch");
  Integer u = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) u = u * p + *it;
  return from_unit(p, v, u, prec);
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  return from_unit(p_, v_, -u_, r_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw DomainError("p-adic primes differ");
  const long abs = std::min(a.absolute_precision(), b.absolute_precision());
  if (a.zero_ && b.zero_) return PadicNumber::from_residue(a.p_, 0, abs);
  if (a.zero_) return b.absolute_precision() <= abs ? b : b.truncated(abs - b.v_);
  if (b.zero_) return a.absolute_precision() <= abs ? a : a.truncated(abs - a.v_);
  const long v = std::min(a.v_, b.v_);
  if (abs <= v) return PadicNumber::from_residue(a.p_, 0, abs);
  const Integer sum = power(a.p_, a.v_ - v) * a.u_ + power(a.p_, b.v_ - v) * b.u_;
  PadicNumber shifted = PadicNumber::from_residue(a.p_, sum, abs - v);
  shifted.v_ += v;
  return shifted;
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw DomainError("p-adic primes differ");
  if (a.zero_ || b.zero_) {
    // For a zero factor v_ is its absolute precision.
    return PadicNumber::from_residue(a.p_, 0, a.v_ + b.v_);
  }
  const long r = std::min(a.r_, b.r_);
  return PadicNumber::from_unit(a.p_, a.v_ + b.v_, a.u_ * b.u_, r);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  if (a.p_ != b.p_) throw DomainError("p-adic primes differ");
  if (b.zero_) throw DomainError("p-adic division by zero");
  if (a.zero_) return PadicNumber::from_residue(a.p_, 0, a.v_ - b.v_);
  const long r = std::min(a.r_, b.r_);
  return PadicNumber::from_unit(a.p_, a.v_ - b.v_, a.u_ * inverse_mod(b.u_, power(a.p_, r)), r);
}

QExpansion j_q_expansion(long terms) {
  if (terms < 1) throw DomainError("j_q_expansion: need T >= 1");
  const std::size_t n = static_cast<std::size_t>(terms) + 2;  // degrees 0..T+1

  auto mul = [n](const std::vector<Integer>& x, const std::vector<Integer>& y) {
    std::vector<Integer> z(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; i + j < n; ++j) z[i + j] += x[i] * y[j];
    }
    return z;
  };

  std::vector<Integer> e4(n, Integer(0));
  e4[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    Integer sigma3 = 0;
    for (std::size_t d = 1; d <= k; ++d) {
      if (k % d == 0) sigma3 += Integer(static_cast<unsigned long>(d * d * d));
    }
    e4[k] = 240 * sigma3;
  }
  const auto e4_cubed = mul(mul(e4, e4), e4);

  // prod (1 - q^k)^24, truncated.
  std::vector<Integer> eta24(n, Integer(0));
  eta24[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = n - 1; i >= k; --i) eta24[i] -= eta24[i - k];
    }
  }
  // Series inverse (constant term 1).
  std::vector<Integer> inv(n, Integer(0));
  inv[0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    Integer s = 0;
    for (std::size_t j = 1; j <= i; ++j) s += eta24[j] * inv[i - j];
    inv[i] = -s;
  }
  QExpansion j;
  j.coefficients = mul(e4_cubed, inv);
  return j;
}

PadicNumber evaluate(const QExpansion& j, const PadicNumber& q) {
  const Integer& p = q.prime();
  const long prec = q.precision() + 4;
  PadicNumber sum = PadicNumber(p, Rational(1), prec) / q;
  PadicNumber qn(p, Rational(1), prec);
  for (long k = 0; k <= j.terms(); ++k) {
    if (k > 0) qn = qn * q;
    sum = sum + PadicNumber(p, Rational(j.coefficient(k)), prec + 1) * qn;
  }
  return sum;
}

PadicNumber tate_parameter(const WeierstrassCurve& c, const Integer& p, long precision, long series_terms) {
  if (precision < 1) throw DomainError("tate_parameter: precision must be >= 1");
  const ReductionKind kind = reduction_type(c, p);
  if (kind != ReductionKind::split_multiplicative)
    throw DomainError("tate_parameter: reduction at p = " + to_string(p) + " is " + to_string(kind) +
                      ", not split multiplicative");
  const Rational& jE = c.invariants().j;
  const long vj = valuation(jE, p);
  if (vj >= 0) throw DomainError("tate_parameter: ord_p(j) must be negative");
  const long vq = -vj;

  const long terms = series_terms > 0 ? series_terms : precision + vq + 10;
  const long work = precision + vq + 4;
  // Omitted terms c_n q^n (n > T) have ord >= (T+1) vq; they must lie below
  // the absolute precision ord(q) + work that 1/(j - f(q)) needs, plus ord(j).
  if ((terms + 1) * vq < work) {
    throw InsufficientPrecisionError("tate_parameter: " + std::to_string(terms) +
                                     " series terms cannot support " + std::to_string(precision) +
                                     " digits");
  }
  const QExpansion jq = j_q_expansion(terms);
  const PadicNumber j(p, jE, work);
  const PadicNumber one(p, Rational(1), work);

  PadicNumber q = one / j;
  for (long it = 0; it < work + 10; ++it) {
    PadicNumber f(p, Rational(jq.coefficient(0)), work + vq);
    PadicNumber qn = one;
    for (long k = 1; k <= terms; ++k) {
      qn = qn * q;
      f = f + PadicNumber(p, Rational(jq.coefficient(k)), work + vq) * qn;
    }
    PadicNumber next = one / (j - f);
    const bool done = next.agrees_with(q, work);
    q = std::move(next);
    if (done) break;
  }
  if (q.valuation() != vq) throw std::logic_error("tate_parameter: valuation mismatch");
  return q.truncated(precision);
}

PadicNumber iwasawa_log(const PadicNumber& x) {
  return iwasawa_log(x, PadicNumber::from_residue(x.prime(), 0, 1));
}

PadicNumber iwasawa_log(const PadicNumber& x, const PadicNumber& log_of_p) {
  if (x.is_zero()) throw DomainError("iwasawa_log of zero");
  const Integer& p = x.prime();
  const long r = x.precision();

  // w = u^(p-1) (u^2 for p = 2) is 1 + z with ord(z) >= 1.
  const Integer modr = power(p, r);
  const unsigned long e = p == 2 ? 2 : Integer(p - 1).get_ui();
  Integer w;
  mpz_powm_ui(w.get_mpz_t(), x.unit().get_mpz_t(), e, modr.get_mpz_t());
  const Integer z = mod_floor(w - 1, modr);

  // ord(z^k/k) >= k - ord_p(k) >= r for every k > 2r + 2.
  const long kmax = 2 * r + 2;
  long emax = 0;
  for (Integer pk = p; pk <= kmax; pk *= p) ++emax;
  const Integer mod = power(p, r + emax);

  Integer sum = 0, zk = 1;
  for (long k = 1; k <= kmax; ++k) {
    zk = mod_floor(zk * z, mod);
    Integer kk(k);
    const long vk = static_cast<long>(mpz_remove(kk.get_mpz_t(), kk.get_mpz_t(), p.get_mpz_t()));
    Integer term = zk;
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), power(p, vk).get_mpz_t());
    term = term * inverse_mod(kk, mod);
    sum += (k % 2 == 1) ? term : Integer(-term);
  }
  sum = mod_floor(sum, modr);
  // log(u) = log(w) / e.
  PadicNumber log_unit = PadicNumber::from_residue(p, sum, r) / PadicNumber(p, Rational(static_cast<long>(e)), r);
  if (x.valuation() == 0 || log_of_p.is_zero()) return log_unit;
  return log_unit + PadicNumber(p, Rational(x.valuation()), r) * log_of_p;
}

LInvariant l_invariant(const WeierstrassCurve& c, const Integer& p, long precision) {
  LInvariant out{p, PadicNumber::from_residue(p, 0, 1), PadicNumber::from_residue(p, 0, 1), precision};
  const long guard = 6;
  out.tate_q = tate_parameter(c, p, precision + guard);
  const PadicNumber log_q = iwasawa_log(out.tate_q);
  out.value = log_q / PadicNumber(p, Rational(out.tate_q.valuation()), precision + guard);
  out.value = out.value.truncated(precision);
  out.tate_q = out.tate_q.truncated(precision);
  return out;
}

}  // namespace ecv
