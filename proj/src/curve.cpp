#include "ecv/curve.hpp"

#include <sstream>

#include "ecv/errors.hpp"

namespace ecv {

ModelInvariants model_invariants(const std::array<Rational, 5>& a) {
  const Rational &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  ModelInvariants m;
  m.b2 = a1 * a1 + 4 * a2;
  m.b4 = 2 * a4 + a1 * a3;
  m.b6 = a3 * a3 + 4 * a6;
  m.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  m.c4 = m.b2 * m.b2 - 24 * m.b4;
  m.c6 = -m.b2 * m.b2 * m.b2 + 36 * m.b2 * m.b4 - 216 * m.b6;
  m.discriminant = -m.b2 * m.b2 * m.b8 - 8 * m.b4 * m.b4 * m.b4 - 27 * m.b6 * m.b6 +
                   9 * m.b2 * m.b4 * m.b6;
  m.j = m.discriminant.sign() == 0 ? Rational(0) : m.c4 * m.c4 * m.c4 / m.discriminant;
  return m;
}

std::array<Rational, 5> to_rational(const WeierstrassCurve::Coefficients& a) {
  return {Rational(a[0]), Rational(a[1]), Rational(a[2]), Rational(a[3]), Rational(a[4])};
}

WeierstrassCurve::WeierstrassCurve(const Coefficients& a, const Integer& field_prime)
    : a_(a), prime_(field_prime) {
  if (prime_ != 0) {
    if (!is_prime(prime_)) throw DomainError("field characteristic must be prime");
    for (auto& c : a_) c = mod_floor(c, prime_);
  }
  const ModelInvariants m = model_invariants(to_rational(a_));
  inv_ = Invariants{m.b2.num(), m.b4.num(), m.b6.num(), m.b8.num(),
                    m.c4.num(), m.c6.num(), m.discriminant.num(), m.j};
  if (prime_ != 0) {
    for (Integer* v : {&inv_.b2, &inv_.b4, &inv_.b6, &inv_.b8, &inv_.c4, &inv_.c6,
                       &inv_.discriminant}) {
      *v = mod_floor(*v, prime_);
    }
    if (inv_.discriminant == 0) throw SingularCurveError("singular curve: discriminant is 0 mod p");
    inv_.j = Rational(mod_floor(inv_.c4 * inv_.c4 * inv_.c4 * inverse_mod(inv_.discriminant, prime_),
                                prime_));
  } else if (inv_.discriminant == 0) {
    throw SingularCurveError("singular curve: discriminant is 0");
  }
}

WeierstrassCurve WeierstrassCurve::parse(const std::string& text) {
  Coefficients a;
  std::istringstream in(text);
  std::string field;
  std::size_t i = 0;
  while (std::getline(in, field, ',')) {
    if (i == 5) throw DomainError("curve descriptor needs exactly five integers: '" + text + "'");
    a[i++] = parse_integer(field);
  }
  if (i != 5) throw DomainError("curve descriptor needs exactly five integers: '" + text + "'");
  return WeierstrassCurve(a);
}

std::string WeierstrassCurve::descriptor() const {
  std::string s;
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) s += ',';
    s += to_string(a_[i]);
  }
  return s;
}

std::string CurvePoint::str() const {
  if (!affine_) return "O";
  return "(" + x_.str() + ", " + y_.str() + ")";
}

namespace {

// Arithmetic in the base field of a curve: Q, or F_p with canonical
// representatives in [0, p).
struct BaseField {
  Integer p;

  Rational norm(const Rational& v) const {
    if (p == 0) return v;
    return Rational(reduce_rational(v, p));
  }
  Rational div(const Rational& a, const Rational& b) const {
    if (p == 0) return a / b;
    return norm(Rational(Integer(reduce_rational(a, p) * inverse_mod(reduce_rational(b, p), p))));
  }
  bool is_zero(const Rational& v) const { return norm(v).sign() == 0; }
};

bool satisfies(const std::array<Rational, 5>& a, const CurvePoint& pt, const BaseField& f) {
  if (pt.is_infinity()) return true;
  const Rational &x = pt.x(), &y = pt.y();
  const Rational lhs = y * y + a[0] * x * y + a[2] * y;
  const Rational rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
  return f.is_zero(lhs - rhs);
}

CurvePoint negate_on(const std::array<Rational, 5>& a, const CurvePoint& pt, const BaseField& f) {
  if (pt.is_infinity()) return pt;
  return CurvePoint(pt.x(), f.norm(-pt.y() - a[0] * pt.x() - a[2]));
}

CurvePoint add_on(const std::array<Rational, 5>& a, const CurvePoint& p, const CurvePoint& q,
                  const BaseField& f) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const Rational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
  Rational lambda;
  if (f.is_zero(x1 - x2)) {
    const Rational denom = y1 + y2 + a[0] * x2 + a[2];
    if (f.is_zero(denom)) return CurvePoint::infinity();
    lambda = f.div(3 * x1 * x1 + 2 * a[1] * x1 + a[3] - a[0] * y1, 2 * y1 + a[0] * x1 + a[2]);
  } else {
    lambda = f.div(y2 - y1, x2 - x1);
  }
  const Rational nu = y1 - lambda * x1;
  const Rational x3 = f.norm(lambda * lambda + a[0] * lambda - a[1] - x1 - x2);
  const Rational y3 = f.norm(-(lambda + a[0]) * x3 - nu - a[2]);
  return CurvePoint(x3, y3);
}

void require_on_curve(const WeierstrassCurve& c, const CurvePoint& p) {
  if (!is_on_curve(c, p)) throw DomainError("point " + p.str() + " is not on the curve");
}

}  // namespace

bool is_on_curve(const WeierstrassCurve& c, const CurvePoint& p) {
  return satisfies(to_rational(c.coefficients()), p, BaseField{c.field_prime()});
}

bool is_on_model(const std::array<Rational, 5>& a, const CurvePoint& p) {
  return satisfies(a, p, BaseField{0});
}

CurvePoint negate(const WeierstrassCurve& c, const CurvePoint& p) {
  require_on_curve(c, p);
  return negate_on(to_rational(c.coefficients()), p, BaseField{c.field_prime()});
}

CurvePoint add(const WeierstrassCurve& c, const CurvePoint& p, const CurvePoint& q) {
  require_on_curve(c, p);
  require_on_curve(c, q);
  return add_on(to_rational(c.coefficients()), p, q, BaseField{c.field_prime()});
}

CurvePoint multiply(const WeierstrassCurve& c, const CurvePoint& p, const Integer& n) {
  require_on_curve(c, p);
  const auto a = to_rational(c.coefficients());
  const BaseField f{c.field_prime()};
  CurvePoint base = n < 0 ? negate_on(a, p, f) : p;
  Integer k = abs(n);
  CurvePoint acc = CurvePoint::infinity();
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = add_on(a, acc, base, f);
    k >>= 1;
    if (k > 0) base = add_on(a, base, base, f);
  }
  return acc;
}

WeierstrassCurve reduce_mod_p(const WeierstrassCurve& c, const Integer& p) {
  if (!c.over_rationals()) throw DomainError("reduce_mod_p expects a curve over Q");
  if (!is_prime(p)) throw DomainError("reduce_mod_p: modulus must be prime");
  if (mpz_divisible_p(c.discriminant().get_mpz_t(), p.get_mpz_t()))
    throw BadReductionError("bad reduction at p = " + to_string(p));
  return WeierstrassCurve(c.coefficients(), p);
}

CurvePoint reduce_point(const CurvePoint& pt, const Integer& p) {
  if (pt.is_infinity()) return pt;
  if (mpz_divisible_p(pt.x().den().get_mpz_t(), p.get_mpz_t())) return CurvePoint::infinity();
  return CurvePoint(Rational(reduce_rational(pt.x(), p)), Rational(reduce_rational(pt.y(), p)));
}

bool minimality_certified(const WeierstrassCurve& c, const Integer& p) {
  const auto& inv = c.invariants();
  if (valuation(inv.discriminant, p) < 12) return true;
  return inv.c4 == 0 ? false : valuation(inv.c4, p) < 4;
}

std::string CurveIsomorphism::str() const {
  return "[u=" + u.str() + ", r=" + r.str() + ", s=" + s.str() + ", t=" + t.str() + "]";
}

std::array<Rational, 5> transform(const std::array<Rational, 5>& a, const CurveIsomorphism& iso) {
  const Rational &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  const Rational &u = iso.u, &r = iso.r, &s = iso.s, &t = iso.t;
  if (u.sign() == 0) throw DomainError("isomorphism with u = 0");
  const Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  return {
      (a1 + 2 * s) / u,
      (a2 - s * a1 + 3 * r - s * s) / u2,
      (a3 + r * a1 + 2 * t) / u3,
      (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4,
      (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6,
  };
}

namespace {

// Exact positive rational k-th root of q > 0, if one exists.
std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
  if (q.sign() <= 0) return std::nullopt;
  Integer n, d;
  const Integer qn = q.num(), qd = q.den();
  if (mpz_root(n.get_mpz_t(), qn.get_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(d.get_mpz_t(), qd.get_mpz_t(), k) == 0) return std::nullopt;
  return Rational(n, d);
}

}  // namespace

std::optional<CurveIsomorphism> isomorphism_over_Q(const WeierstrassCurve& from,
                                                   const WeierstrassCurve& to) {
  if (!from.over_rationals() || !to.over_rationals())
    throw DomainError("isomorphism_over_Q expects curves over Q");
  if (from.invariants().j != to.invariants().j) return std::nullopt;

  const auto source = to_rational(from.coefficients());
  const auto target = to_rational(to.coefficients());
  const auto root = exact_root(Rational(from.discriminant(), to.discriminant()), 12);
  if (!root) return std::nullopt;

  for (const Rational& u : {*root, -*root}) {
    CurveIsomorphism iso;
    iso.u = u;
    iso.s = (u * target[0] - source[0]) / 2;
    iso.r = (u * u * target[1] - source[1] + iso.s * source[0] + iso.s * iso.s) / 3;
    iso.t = (u * u * u * target[2] - source[2] - iso.r * source[0]) / 2;
    if (transform(source, iso) == target) return iso;
  }
  return std::nullopt;
}

TwoIsogeny velu_2_isogeny(const WeierstrassCurve& c, const CurvePoint& kernel) {
  if (!c.over_rationals()) throw DomainError("velu_2_isogeny expects a curve over Q");
  if (kernel.is_infinity() || !is_on_curve(c, kernel) ||
      !multiply(c, kernel, 2).is_infinity()) {
    throw DomainError("velu_2_isogeny: kernel " + kernel.str() + " is not a point of order 2");
  }
  const auto a = to_rational(c.coefficients());
  const Rational& xq = kernel.x();
  const Rational& yq = kernel.y();
  const Rational b2 = a[0] * a[0] + 4 * a[1];

  TwoIsogeny phi{kernel, {}, c, {}, {}, {}};
  phi.v = 3 * xq * xq + 2 * a[1] * xq + a[3] - a[0] * yq;
  phi.w = xq * phi.v;
  phi.velu_model = {a[0], a[1], a[2], a[3] - 5 * phi.v, a[4] - b2 * phi.v - 7 * phi.w};

  // Scale x -> x/d^2, y -> y/d^3 (u = 1/d) with d minimal so that d^i A_i is integral.
  static constexpr int kWeights[5] = {1, 2, 3, 4, 6};
  Integer d = 1;
  for (;; ++d) {
    bool integral = true;
    for (int i = 0; i < 5 && integral; ++i) {
      Integer di;
      mpz_pow_ui(di.get_mpz_t(), d.get_mpz_t(), kWeights[i]);
      integral = (Rational(di) * phi.velu_model[i]).is_integer();
    }
    if (integral) break;
  }
  phi.scaling.u = Rational(1, d);
  const auto scaled = transform(phi.velu_model, phi.scaling);
  WeierstrassCurve::Coefficients ints;
  for (int i = 0; i < 5; ++i) ints[i] = scaled[i].num();
  phi.codomain = WeierstrassCurve(ints);
  return phi;
}

CurvePoint apply_isogeny(const WeierstrassCurve& c, const TwoIsogeny& phi, const CurvePoint& pt) {
  if (!is_on_curve(c, pt)) throw DomainError("apply_isogeny: point not on the domain");
  if (pt.is_infinity() || pt == phi.kernel) return CurvePoint::infinity();
  const Rational dx = pt.x() - phi.kernel.x();
  const Rational a1(c.a1());
  const Rational x = pt.x() + phi.v / dx;
  const Rational y = pt.y() - phi.v * (a1 * dx + pt.y() - phi.kernel.y()) / (dx * dx);
  return CurvePoint(x, y);
}

}  // namespace ecv
