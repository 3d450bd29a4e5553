#include "ecv/local_data.hpp"

#include <numeric>

#include "ecv/errors.hpp"

namespace ecv {

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::good: return "good";
    case ReductionKind::split_multiplicative: return "multiplicative-split";
    case ReductionKind::nonsplit_multiplicative: return "multiplicative-nonsplit";
    case ReductionKind::additive: return "additive-unsupported";
  }
  return "unknown";
}

namespace {

bool divides(const Integer& p, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()); }

}  // namespace

bool node_tangents_split(const WeierstrassCurve& c, std::int64_t p) {
  std::int64_t a[5];
  for (int i = 0; i < 5; ++i) a[i] = mod_floor(c.coefficients()[i], Integer(static_cast<long>(p))).get_si();
  for (std::int64_t x = 0; x < p; ++x) {
    for (std::int64_t y = 0; y < p; ++y) {
      const std::int64_t f = mod_floor(y * y + a[0] * x * y + a[2] * y -
                                           (x * x * x + a[1] * x * x + a[3] * x + a[4]),
                                       p);
      const std::int64_t fx = mod_floor(a[0] * y - (3 * x * x + 2 * a[1] * x + a[3]), p);
      const std::int64_t fy = mod_floor(2 * y + a[0] * x + a[2], p);
      if (f != 0 || fx != 0 || fy != 0) continue;
      const std::int64_t k = mod_floor(3 * x + a[1], p);
      for (std::int64_t t = 0; t < p; ++t) {
        if (mod_floor(t * t + a[0] * t - k, p) == 0) return true;
      }
      return false;
    }
  }
  throw DomainError("node_tangents_split: reduction mod " + std::to_string(p) + " has no singular point");
}

ReductionKind reduction_type(const WeierstrassCurve& c, const Integer& p) {
  if (!c.over_rationals()) throw DomainError("reduction_type expects a curve over Q");
  if (!is_prime(p)) throw DomainError("reduction_type: p must be prime");
  const auto& inv = c.invariants();
  if (!divides(p, inv.discriminant)) return ReductionKind::good;
  if (!minimality_certified(c, p))
    throw UnsupportedError("minimality at p = " + to_string(p) + " is not certified");
  if (divides(p, inv.c4))
    throw UnsupportedError("additive reduction at p = " + to_string(p));
  const bool split = p == 2 ? node_tangents_split(c, 2) : legendre_symbol(-inv.c6, p) == 1;
  return split ? ReductionKind::split_multiplicative : ReductionKind::nonsplit_multiplicative;
}

LocalData kodaira_and_tamagawa(const WeierstrassCurve& c, const Integer& p) {
  LocalData d;
  d.p = p;
  d.kind = reduction_type(c, p);
  if (d.kind == ReductionKind::good) return d;
  d.kodaira_index = valuation(c.discriminant(), p);
  d.tamagawa = d.kind == ReductionKind::split_multiplicative ? d.kodaira_index
                                                              : std::gcd(2u, d.kodaira_index);
  return d;
}

std::vector<Integer> bad_primes(const WeierstrassCurve& c) {
  std::vector<Integer> out;
  for (const auto& [q, e] : factor(c.discriminant())) out.push_back(q);
  return out;
}

std::vector<LocalData> local_data(const WeierstrassCurve& c) {
  std::vector<LocalData> out;
  for (const Integer& p : bad_primes(c)) out.push_back(kodaira_and_tamagawa(c, p));
  return out;
}

Integer tamagawa_product(const WeierstrassCurve& c) {
  Integer product = 1;
  for (const auto& d : local_data(c)) product *= d.tamagawa;
  return product;
}

Integer conductor_semistable(const WeierstrassCurve& c) {
  Integer n = 1;
  for (const auto& d : local_data(c)) n *= d.p;
  return n;
}

}  // namespace ecv
