#include <doctest.h>

#include <random>

#include "ecv/arith.hpp"
#include "ecv/errors.hpp"
#include "oracles.hpp"

using namespace ecv;

TEST_CASE("legendre symbol examples") {
  CHECK(legendre_symbol(1, 7) == 1);
  CHECK(legendre_symbol(mod_floor(Integer(-4879), Integer(3)), 3) == -1);
  CHECK(legendre_symbol(mod_floor(Integer(-4879), Integer(5)), 5) == 1);
  CHECK(legendre_symbol(0, 5) == 0);
  CHECK_THROWS_AS(legendre_symbol(1, 2), DomainError);
  CHECK_THROWS_AS(legendre_symbol(1, 9), DomainError);
}

TEST_CASE("legendre symbol matches exhaustive squares") {
  for (std::int64_t p : primes_up_to(200)) {
    if (p == 2) continue;
    const auto sq = oracle::squares_mod(p);
    for (std::int64_t a = 0; a < p; ++a) {
      const int expected = a == 0 ? 0 : (sq.count(a) ? 1 : -1);
      REQUIRE(legendre_symbol(a, p) == expected);
      REQUIRE(legendre_symbol(a - 3 * p, p) == expected);
    }
  }
}

TEST_CASE("valuation") {
  CHECK(valuation(Integer(50625), Integer(5)) == 4);
  CHECK(valuation(Integer(50625), Integer(3)) == 4);
  CHECK(valuation(Integer(1), Integer(7)) == 0);
  CHECK(valuation(Integer(-1024), Integer(2)) == 10);
  CHECK(valuation(Rational(Integer(3), Integer(50)), Integer(5)) == -2);
  CHECK_THROWS_AS(valuation(Integer(0), Integer(5)), DomainError);
}

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(10) == std::vector<std::int64_t>{2, 3, 5, 7});
  CHECK(primes_up_to(1).empty());
  const auto ps = primes_up_to(100);
  CHECK(ps.size() == 25);
  CHECK(ps.back() == 97);
  std::vector<std::int64_t> naive;
  for (std::int64_t n = 0; n <= 2000; ++n)
    if (oracle::naive_prime(n)) naive.push_back(n);
  CHECK(primes_up_to(2000) == naive);
  for (std::int64_t n = 0; n <= 2000; ++n) REQUIRE(is_prime(n) == oracle::naive_prime(n));
}

TEST_CASE("sqrt_mod examples and exhaustive check") {
  CHECK(sqrt_mod(ResidueClass(0, 7))->value() == 0);
  const auto r = sqrt_mod(ResidueClass(2, 7));
  REQUIRE(r);
  CHECK((r->value() == 3 || r->value() == 4));
  CHECK_FALSE(sqrt_mod(ResidueClass(3, 7)));
  for (std::int64_t p : primes_up_to(200)) {
    if (p == 2) continue;
    const auto sq = oracle::squares_mod(p);
    for (std::int64_t a = 0; a < p; ++a) {
      const auto s = sqrt_mod(ResidueClass(a, p));
      REQUIRE(s.has_value() == (sq.count(a) == 1));
      if (s) REQUIRE(mod_floor(s->value() * s->value(), Integer(p)) == a);
    }
  }
}

TEST_CASE("rational arithmetic stays canonical") {
  const Rational a(Integer(6), Integer(-4));
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a.str() == "-3/2");
  CHECK(Rational::parse("10/4") == Rational(Integer(5), Integer(2)));
  CHECK(Rational::parse("-7").is_integer());
  CHECK((a + Rational(Integer(3), Integer(2))).str() == "0");
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("modular helpers") {
  CHECK(mod_floor(std::int64_t{-7}, std::int64_t{5}) == 3);
  CHECK(inverse_mod(std::int64_t{3}, std::int64_t{7}) == 5);
  CHECK_THROWS_AS(inverse_mod(Integer(4), Integer(8)), DomainError);
  CHECK(reduce_rational(Rational(Integer(-13), Integer(4)), 7) == 2);  // 4 * 2 = 8 = -13 mod 7
  CHECK_THROWS_AS(reduce_rational(Rational(Integer(1), Integer(7)), 7), DomainError);
  const auto f = factor(Integer(50625));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::pair<Integer, unsigned>{3, 4});
  CHECK(f[1] == std::pair<Integer, unsigned>{5, 4});
}

TEST_CASE("ResidueClass rejects modulus below 2") {
  CHECK_THROWS_AS(ResidueClass(1, 1), DomainError);
  CHECK(ResidueClass(-1, 7).value() == 6);
}
