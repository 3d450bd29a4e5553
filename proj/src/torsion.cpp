#include "ecv/torsion.hpp"

#include <algorithm>

#include "ecv/counting.hpp"
#include "ecv/errors.hpp"

namespace ecv {

std::string TorsionGroup::structure() const {
  if (d1 == 1) return "Z/" + to_string(d2);
  return "Z/" + to_string(d1) + " + Z/" + to_string(d2);
}

std::optional<unsigned> point_order(const WeierstrassCurve& c, const CurvePoint& p) {
  if (!is_on_curve(c, p)) throw DomainError("point_order: point not on curve");
  CurvePoint q = p;
  for (unsigned n = 1; n <= 16; ++n) {
    if (q.is_infinity()) return n;
    q = add(c, q, p);
  }
  return std::nullopt;
}

namespace {

Integer cubic_at(const Integer& x, const Integer& a, const Integer& b) { return x * x * x + a * x + b; }

// Integer roots of the cubic on [lo, hi], where it is monotone in `direction` (+1/-1).
void monotone_roots(const Integer& a, const Integer& b, Integer lo, Integer hi, int direction,
                    std::vector<Integer>& out) {
  if (lo > hi) return;
  // Smallest x in [lo, hi] with direction * f(x) >= 0.
  while (lo < hi) {
    Integer mid = lo + hi;
    mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
    if (direction * sgn(cubic_at(mid, a, b)) >= 0) hi = mid; else lo = mid + 1;
  }
  if (cubic_at(lo, a, b) == 0) out.push_back(lo);
}

}  // namespace

std::vector<Integer> integer_roots_depressed_cubic(const Integer& a, const Integer& b) {
  const Integer bound = 1 + std::max(Integer(abs(a)), Integer(abs(b)));
  std::vector<Integer> roots;
  if (a >= 0) {
    monotone_roots(a, b, -bound, bound, +1, roots);
  } else {
    // Critical points at +-r, r = sqrt(-a/3).
    Integer fl = Integer(-a) / 3;
    mpz_sqrt(fl.get_mpz_t(), fl.get_mpz_t());
    monotone_roots(a, b, -bound, -fl - 1, +1, roots);
    monotone_roots(a, b, -fl, fl, -1, roots);
    monotone_roots(a, b, fl + 1, bound, +1, roots);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

bool mazur_admissible(const Integer& d1, const Integer& d2) {
  if (d1 == 1) return (d2 >= 1 && d2 <= 10) || d2 == 12;
  return d1 == 2 && (d2 == 2 || d2 == 4 || d2 == 6 || d2 == 8);
}

namespace {

// Positive y with y^2 | n.
std::vector<Integer> square_divisor_roots(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [q, e] : factor(n)) {
    const std::size_t base = out.size();
    Integer power = 1;
    for (unsigned k = 1; k <= e / 2; ++k) {
      power *= q;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TorsionGroup torsion_subgroup(const WeierstrassCurve& c) {
  if (!c.over_rationals()) throw DomainError("torsion_subgroup expects a curve over Q");
  TorsionGroup g;

  g.reduction_bound = 0;
  for (long p : primes_up_to(100)) {
    if (p == 2 || mpz_divisible_ui_p(c.discriminant().get_mpz_t(), p)) continue;
    g.reduction_bound = gcd(g.reduction_bound, count_points(c, p));
    g.bound_primes.push_back(p);
  }
  if (g.bound_primes.size() < 5) throw UnsupportedError("fewer than five good odd primes below 100");

  const auto& inv = c.invariants();
  const Integer A = -27 * inv.c4;
  const Integer B = -54 * inv.c6;
  const Integer disc = 4 * A * A * A + 27 * B * B;

  std::vector<std::pair<Integer, Integer>> candidates;
  for (const Integer& x : integer_roots_depressed_cubic(A, B)) candidates.emplace_back(x, 0);
  for (const Integer& y : square_divisor_roots(disc)) {
    for (const Integer& x : integer_roots_depressed_cubic(A, B - y * y)) {
      candidates.emplace_back(x, y);
      candidates.emplace_back(x, -y);
    }
  }

  // Back to the long model: X = 36x + 3 b2, Y = 108 (2y + a1 x + a3).
  g.points.push_back(CurvePoint::infinity());
  for (const auto& [X, Y] : candidates) {
    const Rational x = Rational(X - 3 * inv.b2, 36);
    const Rational y = (Rational(Y, 108) - Rational(c.a1()) * x - Rational(c.a3())) / 2;
    const CurvePoint pt(x, y);
    if (!is_on_curve(c, pt)) throw std::logic_error("torsion: short-model point did not map back");
    const auto n = point_order(c, pt);
    if (!n || !mpz_divisible_ui_p(g.reduction_bound.get_mpz_t(), *n)) continue;
    if (std::find(g.points.begin(), g.points.end(), pt) == g.points.end()) g.points.push_back(pt);
  }

  for (const auto& p : g.points) {
    for (const auto& q : g.points) {
      if (std::find(g.points.begin(), g.points.end(), add(c, p, q)) == g.points.end())
        throw std::logic_error("torsion: candidate set is not closed under addition");
    }
  }

  g.order = static_cast<unsigned long>(g.points.size());
  unsigned max_order = 1;
  const CurvePoint* big = &g.points.front();
  for (const auto& p : g.points) {
    const unsigned n = *point_order(c, p);
    if (n == 2) g.two_torsion.push_back(p);
    if (n > max_order) {
      max_order = n;
      big = &p;
    }
  }
  g.d2 = max_order;
  g.d1 = g.order / g.d2;
  if (max_order > 1) g.generators.push_back(*big);

  if (g.d1 > 1) {
    std::vector<CurvePoint> cyclic;
    for (unsigned k = 0; k < max_order; ++k) cyclic.push_back(multiply(c, *big, k));
    for (const auto& q : g.points) {
      if (Integer(*point_order(c, q)) != g.d1) continue;
      if (std::find(cyclic.begin(), cyclic.end(), q) != cyclic.end()) continue;
      g.generators.push_back(q);
      break;
    }
  }
  return g;
}

}  // namespace ecv
