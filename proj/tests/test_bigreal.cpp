#include <doctest.h>

#include <random>

#include "bbp/bigreal.hpp"

using namespace bbp;

TEST_SUITE_BEGIN("bigreal");

namespace {

// Ball containment oracle: a random rational inside the input balls must map
// into the output ball under the exact rational operation.
Rational pick_in(const BigReal& x, std::mt19937& rng) {
  Rational lo = x.lower_rational(), hi = x.upper_rational();
  std::uniform_int_distribution<int> d(0, 1000);
  return lo + (hi - lo) * Rational(d(rng), 1000);
}

bool contains(const BigReal& ball, const Rational& v) {
  return v >= ball.lower_rational() && v <= ball.upper_rational();
}

}  // namespace

TEST_CASE("exact constructors") {
  BigReal z(128);
  CHECK(z.is_exact());
  CHECK(z.contains_zero());
  BigReal q = BigReal::from_rational(Rational(3, 4), 128);
  CHECK(q.is_exact());  // 3/4 is representable in binary
  CHECK(q.center_rational() == Rational(3, 4));
  BigReal third = BigReal::from_rational(Rational(1, 3), 128);
  CHECK(!third.is_exact());
  CHECK(contains(third, Rational(1, 3)));
}

TEST_CASE("pi matches known digits") {
  BigReal pi = BigReal::pi(digits_to_prec(60));
  Rational lo = pi.lower_rational(), hi = pi.upper_rational();
  // 50-digit reference
  Rational ref = parse_rational(
      "314159265358979323846264338327950288419716939937510"
      "/100000000000000000000000000000000000000000000000000");
  CHECK(lo < ref + Rational(1, Integer("10000000000000000000000000000000000000000000000000")));
  CHECK(hi > ref);
  CHECK(pi.radius_within_digits(55));
}

TEST_CASE("arithmetic containment property") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<long> num(-999, 999);
  for (int iter = 0; iter < 200; ++iter) {
    Rational a(num(rng), 1 + std::abs(num(rng)));
    Rational b(num(rng), 1 + std::abs(num(rng)));
    BigReal xa = BigReal::from_rational(a, 80);
    BigReal xb = BigReal::from_rational(b, 80);
    Rational va = pick_in(xa, rng), vb = pick_in(xb, rng);
    CHECK(contains(xa + xb, va + vb));
    CHECK(contains(xa - xb, va - vb));
    CHECK(contains(xa * xb, va * vb));
    if (!xb.contains_zero()) CHECK(contains(xa / xb, va / vb));
  }
}

TEST_CASE("sqrt and log and atan sanity") {
  BigReal two = BigReal::exact_integer(2, digits_to_prec(40));
  BigReal r = two.sqrt();
  CHECK(contains(r * r, Rational(2)));
  CHECK(r.radius_within_digits(35));

  BigReal e1 = BigReal::exact_integer(1, digits_to_prec(40));
  CHECK((e1.atan().mul_rational(4) - BigReal::pi(digits_to_prec(40))).contains_zero());

  BigReal half = BigReal::from_rational(Rational(1, 2), digits_to_prec(40));
  // log(1/2) = -log 2
  BigReal l = half.log();
  CHECK(l.certainly_negative());
  CHECK((l + two.log()).contains_zero());
}

TEST_CASE("interval constructor and unique integer") {
  BigReal b = BigReal::from_interval(Rational(29, 10), Rational(31, 10), 96);
  CHECK(contains(b, Rational(3)));
  auto u = b.unique_integer();
  REQUIRE(u.has_value());
  CHECK(*u == 3);
  BigReal wide = BigReal::from_interval(Rational(5, 2), Rational(9, 2), 96);
  CHECK(!wide.unique_integer().has_value());
}

TEST_CASE("division by interval containing zero throws") {
  BigReal one = BigReal::exact_integer(1, 64);
  BigReal z = BigReal::from_interval(Rational(-1, 10), Rational(1, 10), 64);
  CHECK_THROWS_AS(one / z, std::domain_error);
}

TEST_SUITE_END();
