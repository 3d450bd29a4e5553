#include <doctest.h>

#include <random>

#include "ecv/errors.hpp"
#include "ecv/padic.hpp"
#include "oracles.hpp"

using namespace ecv;

namespace {
const WeierstrassCurve E1 = WeierstrassCurve::parse("1,1,1,-10,-10");
const WeierstrassCurve E2 = WeierstrassCurve::parse("1,1,1,-5,2");

PadicNumber random_padic(std::mt19937& rng, long p, long prec) {
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000), v(-3, 3);
  Rational x(Integer(num(rng)), Integer(den(rng)));
  if (x.sign() == 0) x = 1;
  const long e = v(rng);
  Integer pe = 1;
  for (long i = 0; i < std::abs(e); ++i) pe *= p;
  x = e >= 0 ? x * Rational(pe) : x / Rational(pe);
  return PadicNumber(p, x, prec);
}

std::string digit_string(const PadicNumber& x, std::size_t n) {
  std::string s;
  const auto d = x.digits();
  for (std::size_t i = 0; i < n && i < d.size(); ++i) s += std::to_string(d[i]);
  return s;
}
}  // namespace

TEST_CASE("construction and printing") {
  const PadicNumber x(5, Rational(Integer(50), Integer(3)), 6);
  CHECK(x.valuation() == 2);
  CHECK(x.precision() == 6);
  CHECK(x.absolute_precision() == 8);
  CHECK(PadicNumber::parse(x.str()) == x);
  const PadicNumber z(7, Rational(0), 10);
  CHECK(z.is_zero());
  CHECK(PadicNumber::parse(z.str()) == z);
  const PadicNumber big(13, Rational(Integer(-1)), 5);
  CHECK(big.digits() == std::vector<unsigned long>{12, 12, 12, 12, 12});
  CHECK(PadicNumber::parse(big.str()) == big);
}

TEST_CASE("ultrametric and valuation laws") {
  std::mt19937 rng(99);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = random_padic(rng, p, 15), b = random_padic(rng, p, 15);
      const auto prod = a * b;
      REQUIRE(prod.valuation() == a.valuation() + b.valuation());
      const auto sum = a + b;
      if (!sum.is_zero()) {
        REQUIRE(sum.valuation() >= std::min(a.valuation(), b.valuation()));
        if (a.valuation() != b.valuation()) REQUIRE(sum.valuation() == std::min(a.valuation(), b.valuation()));
      }
      REQUIRE((a * b / b).agrees_with(a, 10));
      // Cancellation may cost relative precision but never absolute precision.
      const auto back = (a + b) - b;
      REQUIRE(back.absolute_precision() >= std::min(a.absolute_precision(), b.absolute_precision()));
      REQUIRE(back.agrees_with(a, back.precision()));
    }
  }
}

TEST_CASE("precision never grows") {
  const PadicNumber a(5, Rational(7), 10), b(5, Rational(3), 4);
  CHECK((a * b).precision() == 4);
  CHECK((a + b).absolute_precision() == 4);
}

TEST_CASE("j-invariant q-expansion") {
  const auto j = j_q_expansion(25);
  const auto expected = oracle::j_coefficients(25);
  CHECK(j.coefficient(-1) == 1);
  CHECK(j.coefficient(0) == 744);
  CHECK(j.coefficient(1) == 196884);
  CHECK(j.coefficient(2) == 21493760);
  for (long n = -1; n <= 25; ++n) REQUIRE(j.coefficient(n) == expected[n + 1]);
}

TEST_CASE("Tate parameter of E1 at 5") {
  const auto q = tate_parameter(E1, 5, 20);
  CHECK(q.valuation() == 4);
  CHECK(q.precision() >= 20);
  const PadicNumber jE(5, E1.invariants().j, 20);
  const auto jq = evaluate(j_q_expansion(40), q);
  CHECK(jq.valuation() == -4);
  CHECK(jq.agrees_with(jE, 18));
  // Digits from an independent exact-rational series reversion of 1/j.
  CHECK(digit_string(q, 20) == "13324212023200431034");
  CHECK_THROWS_AS(tate_parameter(E1, 3, 20), DomainError);
  CHECK_THROWS_AS(tate_parameter(E1, 7, 20), DomainError);
}

TEST_CASE("Iwasawa logarithm") {
  const auto l6 = iwasawa_log(PadicNumber(5, Rational(6), 20));
  CHECK(l6.valuation() == 1);
  CHECK(iwasawa_log(PadicNumber(5, Rational(5), 20)).is_zero());
  CHECK(iwasawa_log(PadicNumber(5, Rational(1), 20)).is_zero());
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> unit(1, 1000000);
  for (long p : {2L, 3L, 5L, 7L, 13L}) {
    for (int trial = 0; trial < 50; ++trial) {
      long a = unit(rng), b = unit(rng);
      while (a % p == 0) ++a;
      while (b % p == 0) ++b;
      const PadicNumber u(p, Rational(a), 20), v(p, Rational(b), 20);
      const auto lhs = iwasawa_log(u * v);
      const auto rhs = iwasawa_log(u) + iwasawa_log(v);
      const auto diff = lhs - rhs;
      REQUIRE((diff.is_zero() || diff.valuation() >= 15));
      // log(p^k u) = log(u) under log(p) = 0.
      const auto shifted = iwasawa_log(PadicNumber(p, Rational(a) * Rational(p * p), 20));
      const auto d2 = shifted - iwasawa_log(u);
      REQUIRE((d2.is_zero() || d2.valuation() >= 15));
    }
  }
}

TEST_CASE("L-invariant of E1 at 5") {
  const auto li = l_invariant(E1, 5, 20);
  CHECK(li.in_p_times_units());
  CHECK(li.value.valuation() == 1);
  CHECK(digit_string(li.value, 15) == "201134244100124");
  const auto doubled = l_invariant(E1, 5, 40);
  CHECK(doubled.value.agrees_with(li.value, li.value.precision()));
  // Isogenous curves share the L-invariant.
  const auto li2 = l_invariant(E2, 5, 20);
  CHECK(li2.value.agrees_with(li.value, 18));
  CHECK_THROWS_AS(l_invariant(E1, 3, 20), DomainError);
}

TEST_CASE("L-invariant of 11a1 at 11") {
  const auto e11 = WeierstrassCurve::parse("0,-1,1,-10,-20");
  const auto li = l_invariant(e11, 11, 20);
  CHECK(li.tate_q.valuation() == 5);
  CHECK(!li.value.is_zero());
  CHECK(li.value.valuation() >= 1);
}
