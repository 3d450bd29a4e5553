#include <doctest.h>

#include <random>

#include "ecv/counting.hpp"
#include "ecv/curve.hpp"
#include "ecv/errors.hpp"
#include "oracles.hpp"

using namespace ecv;

namespace {
const WeierstrassCurve E1 = WeierstrassCurve::parse("1,1,1,-10,-10");
const WeierstrassCurve E2 = WeierstrassCurve::parse("1,1,1,-5,2");
const WeierstrassCurve E15a4 = WeierstrassCurve::parse("1,1,1,35,-28");
const WeierstrassCurve E15a2 = WeierstrassCurve::parse("1,1,1,-135,-660");

CurvePoint pt(long x, long y) { return CurvePoint(Rational(x), Rational(y)); }
CurvePoint ptq(const char* x, const char* y) { return CurvePoint(Rational::parse(x), Rational::parse(y)); }
}  // namespace

TEST_CASE("invariants of E1 and E2") {
  const auto& i = E1.invariants();
  CHECK(i.b2 == 5);
  CHECK(i.b4 == -19);
  CHECK(i.b6 == -39);
  CHECK(i.c4 == 481);
  CHECK(i.c6 == 4879);
  CHECK(i.discriminant == 50625);
  CHECK(i.j == Rational(Integer(481) * 481 * 481, Integer(50625)));
  CHECK(1728 * i.discriminant == i.c4 * i.c4 * i.c4 - i.c6 * i.c6);
  CHECK(E2.discriminant() == 225);
  CHECK(E2.invariants().c4 == 241);
  CHECK(E2.invariants().c6 == -3689);
}

TEST_CASE("parsing and singular models") {
  CHECK(E1.descriptor() == "1,1,1,-10,-10");
  CHECK_THROWS_AS(WeierstrassCurve::parse("0,0,0,0,0"), SingularCurveError);
  CHECK_THROWS_AS(WeierstrassCurve::parse("1,2,3"), DomainError);
  CHECK_THROWS_AS(WeierstrassCurve::parse("1,2,x,4,5"), DomainError);
}

TEST_CASE("points on E1") {
  CHECK(is_on_curve(E1, pt(-1, 0)));
  CHECK(is_on_curve(E1, CurvePoint::infinity()));
  CHECK_FALSE(is_on_curve(E1, pt(0, 0)));
  CHECK(multiply(E1, pt(-1, 0), 2).is_infinity());
  CHECK(add(E1, CurvePoint::infinity(), pt(-1, 0)) == pt(-1, 0));
  CHECK(is_on_curve(E1, ptq("-13/4", "9/8")));
  CHECK(is_on_curve(E1, pt(3, -2)));
  CHECK_THROWS_AS(add(E1, pt(0, 0), pt(-1, 0)), DomainError);
}

TEST_CASE("group law over F_101: inverses, associativity, commutativity") {
  const WeierstrassCurve e = reduce_mod_p(E1, 101);
  const auto pts = oracle::naive_points(E1, 101);
  REQUIRE(pts.size() + 1 == static_cast<std::size_t>(oracle::naive_count(E1, 101)));
  std::mt19937 rng(20240501);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& P = pts[pick(rng)];
    const auto& Q = pts[pick(rng)];
    const auto& R = pts[pick(rng)];
    REQUIRE(add(e, P, negate(e, P)).is_infinity());
    REQUIRE(add(e, P, Q) == add(e, Q, P));
    REQUIRE(add(e, add(e, P, Q), R) == add(e, P, add(e, Q, R)));
    REQUIRE(is_on_curve(e, add(e, P, Q)));
    // #E kills every point.
    REQUIRE(multiply(e, P, static_cast<long>(pts.size() + 1)).is_infinity());
  }
}

TEST_CASE("rational group law: associativity on E1(Q) torsion and on a non-torsion curve") {
  const std::vector<CurvePoint> tors = {pt(-1, 0), pt(3, -2), ptq("-13/4", "9/8"), pt(-2, 3)};
  for (const auto& P : tors)
    for (const auto& Q : tors)
      for (const auto& R : tors) REQUIRE(add(E1, add(E1, P, Q), R) == add(E1, P, add(E1, Q, R)));
  // 37a1 has rank 1 with generator (0, 0).
  const WeierstrassCurve e37 = WeierstrassCurve::parse("0,0,1,-1,0");
  const CurvePoint g = pt(0, 0);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      const auto P = multiply(e37, g, a), Q = multiply(e37, g, b);
      REQUIRE(add(e37, P, Q) == multiply(e37, g, a + b));
    }
  CHECK(multiply(e37, g, 2) == pt(1, 0));
  CHECK(multiply(e37, g, -1) == negate(e37, g));
}

TEST_CASE("reduction mod p") {
  const auto e7 = reduce_mod_p(E1, 7);
  CHECK(mod_floor(e7.discriminant(), Integer(7)) != 0);
  CHECK(e7.field_prime() == 7);
  CHECK_THROWS_AS(reduce_mod_p(E1, 3), BadReductionError);
  CHECK(reduce_point(pt(-1, 0), 7) == pt(6, 0));
  CHECK(is_on_curve(e7, reduce_point(pt(-1, 0), 7)));
  CHECK(reduce_point(ptq("-13/4", "9/8"), 2).is_infinity());
}

TEST_CASE("minimality certificate") {
  CHECK(minimality_certified(E1, 3));
  CHECK(minimality_certified(E1, 5));
  // Scaling E1 by u = 3 gives a non-minimal model with ord_3(disc) = 16, ord_3(c4) = 4.
  const auto scaled = transform(to_rational(E1.coefficients()), CurveIsomorphism{Rational(Integer(1), Integer(3)), 0, 0, 0});
  WeierstrassCurve::Coefficients a;
  for (int i = 0; i < 5; ++i) a[i] = scaled[i].num();
  const WeierstrassCurve big(a);
  CHECK_FALSE(minimality_certified(big, 3));
}

TEST_CASE("isomorphisms over Q") {
  const auto id = isomorphism_over_Q(E1, E1);
  REQUIRE(id);
  CHECK(id->u == 1);
  CHECK(id->r == 0);
  CHECK(id->s == 0);
  CHECK(id->t == 0);
  CHECK_FALSE(isomorphism_over_Q(E1, E2));
  // A random change of variables is recovered and carries E1 onto the image.
  const CurveIsomorphism iso{Rational(Integer(1), Integer(2)), Rational(3), Rational(-1), Rational(5)};
  const auto image = transform(to_rational(E1.coefficients()), iso);
  WeierstrassCurve::Coefficients a;
  for (int i = 0; i < 5; ++i) {
    REQUIRE(image[i].is_integer());
    a[i] = image[i].num();
  }
  const WeierstrassCurve other(a);
  const auto found = isomorphism_over_Q(E1, other);
  REQUIRE(found);
  const auto back = transform(to_rational(E1.coefficients()), *found);
  for (int i = 0; i < 5; ++i) CHECK(back[i] == Rational(a[i]));
}

TEST_CASE("Velu 2-isogenies from E1") {
  // Quotients by the three rational 2-torsion points.
  const auto phi_a = velu_2_isogeny(E1, pt(-1, 0));
  CHECK(isomorphism_over_Q(phi_a.codomain, E15a4).has_value());
  CHECK_FALSE(isomorphism_over_Q(phi_a.codomain, E2).has_value());
  const auto phi_b = velu_2_isogeny(E1, pt(3, -2));
  CHECK(isomorphism_over_Q(phi_b.codomain, E15a2).has_value());
  const auto phi_c = velu_2_isogeny(E1, ptq("-13/4", "9/8"));
  CHECK(phi_c.velu_model[3] == Rational(Integer(-1285), Integer(16)));
  CHECK(phi_c.velu_model[4] == Rational(Integer(15335), Integer(64)));
  CHECK(isomorphism_over_Q(phi_c.codomain, E2).has_value());
  CHECK(phi_c.codomain.discriminant() != 0);

  // a_p is an isogeny invariant.
  for (const auto* phi : {&phi_a, &phi_b, &phi_c}) {
    CHECK(trace_ap(phi->codomain, 7) == trace_ap(E1, 7));
    for (std::int64_t p : primes_up_to(100)) {
      if (p <= 5) continue;
      REQUIRE(trace_ap(phi->codomain, p) == trace_ap(E1, p));
    }
  }
  CHECK_THROWS_AS(velu_2_isogeny(E1, pt(0, 0)), DomainError);
  CHECK_THROWS_AS(velu_2_isogeny(E1, pt(-2, 3)), DomainError);
}

TEST_CASE("Velu point map lands on the codomain and kills the kernel") {
  const auto K = ptq("-13/4", "9/8");
  const auto phi = velu_2_isogeny(E1, K);
  CHECK(apply_isogeny(E1, phi, K).is_infinity());
  CHECK(apply_isogeny(E1, phi, CurvePoint::infinity()).is_infinity());
  for (const auto& P : {pt(-1, 0), pt(3, -2), pt(-2, 3), pt(8, 18)}) {
    if (!is_on_curve(E1, P)) continue;
    const auto image = apply_isogeny(E1, phi, P);
    CHECK(is_on_model(phi.velu_model, image));
    // P and P + K have the same image.
    CHECK(apply_isogeny(E1, phi, add(E1, P, K)) == image);
  }
}
