#include <doctest.h>

#include "bbp/poly.hpp"
#include "bbp/rational.hpp"

using namespace bbp;

TEST_SUITE_BEGIN("rational_poly");

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("10^10") == Rational(Integer("10000000000")));
  CHECK(parse_integer("10^15") == Integer("1000000000000000"));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
}

TEST_CASE("round half even") {
  CHECK(round_half_even(Rational(5, 2)) == 2);   // 2.5 -> 2
  CHECK(round_half_even(Rational(7, 2)) == 4);   // 3.5 -> 4
  CHECK(round_half_even(Rational(-5, 2)) == -2); // -2.5 -> -2
  CHECK(round_half_even(Rational(49, 10)) == 5);
  CHECK(round_half_even(Rational(-49, 10)) == -5);
  CHECK(round_half_even(Rational(0)) == 0);
}

TEST_CASE("polynomial arithmetic and division") {
  Poly p = Poly::from_string("y^2 - 1");
  Poly q = Poly::from_string("y - 1");
  auto [quot, rem] = p.divmod(q);
  CHECK(rem.is_zero());
  CHECK(quot == Poly::from_string("y + 1"));
  CHECK(p(Rational(3)) == 8);
  CHECK(p.derivative() == Poly::from_string("2*y"));
  CHECK_THROWS_AS(p.divide_exact(Poly::from_string("y - 2")), std::domain_error);
}

TEST_CASE("polynomial parsing round trips") {
  for (const char* s : {"2*y^2 + 2*y - 1", "y^4 + y - 1", "y^2 - 3*y + 1", "3*y^2 - 1"}) {
    Poly p = Poly::from_string(s);
    CHECK(Poly::from_string(p.to_string()) == p);
  }
  CHECK(Poly::from_string("y^2-x") == Poly::from_string("y^2 - x"));  // single var enforced
}

TEST_CASE("cyclotomic polynomials") {
  // base case
  CHECK(Poly::cyclotomic(1) == Poly::from_string("y - 1"));
  // known small cases verified against the recursive-division definition
  CHECK(Poly::cyclotomic(8) == Poly::from_string("y^4 + 1"));
  CHECK(Poly::cyclotomic(12) == Poly::from_string("y^4 - y^2 + 1"));

  // oracle: product of Phi_d over d | L equals x^L - 1, for several L
  for (unsigned long L : {6ul, 8ul, 12ul, 24ul, 40ul, 60ul}) {
    Poly prod = Poly::constant(1);
    for (unsigned long d = 1; d <= L; ++d)
      if (L % d == 0) prod = prod * Poly::cyclotomic(d);
    std::vector<Rational> xl(L + 1, Rational(0));
    xl[0] = -1;
    xl[L] = 1;
    CHECK(prod == Poly(xl));
  }
}

TEST_CASE("squarefree and sturm root counting") {
  Poly q = Poly::from_string("2*y^2 + 2*y - 1");
  CHECK(q.is_squarefree());
  // roots (-1 +- sqrt(3))/2: one in (0.36, 0.37), one near -1.37
  CHECK(q.count_real_roots(Rational(36, 100), Rational(37, 100)) == 1);
  CHECK(q.count_real_roots(Rational(-2), Rational(0)) == 1);
  CHECK(q.count_real_roots(Rational(-2), Rational(1)) == 2);
  CHECK(q.count_real_roots(Rational(1), Rational(2)) == 0);
  Poly sq = q * q;
  CHECK(!sq.is_squarefree());

  Poly quartic = Poly::from_string("y^4 + y - 1");
  CHECK(quartic.count_real_roots(Rational(7, 10), Rational(3, 4)) == 1);
  CHECK(quartic.count_real_roots(Rational(-2), Rational(2)) == 2);
}

TEST_CASE("irreducibility where cheaply decidable") {
  CHECK(Poly::from_string("y^3 + y^2 - 1").known_irreducible_over_Q());
  CHECK(Poly::from_string("y^2 + y - 1").known_irreducible_over_Q());
  CHECK(!Poly::from_string("y^2 - 1").known_irreducible_over_Q());
  CHECK(!Poly::from_string("y^3 - y").known_irreducible_over_Q());
  // degree 4 is conservatively unknown
  CHECK(!Poly::from_string("y^4 + y - 1").known_irreducible_over_Q());
}

TEST_SUITE_END();
