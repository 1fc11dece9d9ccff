#include <doctest.h>

#include <random>

#include "bbp/embed.hpp"
#include "bbp/ring.hpp"

using namespace bbp;

TEST_SUITE_BEGIN("algebra");

namespace {

RingElement random_element(const RingPtr& ring, std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<Rational> v(ring->dimension());
  for (auto& c : v) {
    c = Rational(num(rng), den(rng));
    c.canonicalize();
  }
  return RingElement(ring, std::move(v));
}

bool complex_close(const BigComplex& a, const BigComplex& b) {
  return (a - b).contains_zero();
}

}  // namespace

TEST_CASE("cyclotomic field construction") {
  auto q1 = CompositeRing::cyclotomic(1);
  CHECK(q1->cyclo_degree() == 1);
  CHECK(q1->cyclo_modulus() == Poly::from_string("y - 1"));
  auto q8 = CompositeRing::cyclotomic(8);
  CHECK(q8->cyclo_degree() == 4);
  CHECK(q8->cyclo_modulus() == Poly::from_string("y^4 + 1"));
  auto q12 = CompositeRing::cyclotomic(12);
  CHECK(q12->cyclo_modulus() == Poly::from_string("y^4 - y^2 + 1"));
  CHECK(q12->is_proven_field());
}

TEST_CASE("composite ring construction and validation") {
  // pure cyclotomic of conductor 24: degree 8 field
  auto f24 = CompositeRing::cyclotomic(24);
  CHECK(f24->dimension() == 8);
  CHECK(f24->is_proven_field());

  // (L=12, q=2y^2+2y-1): degree 8 over Q, designated root 1/(1+sqrt 3)
  auto ring = CompositeRing::composite(12, Poly::from_string("2*y^2 + 2*y - 1"),
                                       {Rational(36, 100), Rational(37, 100)});
  CHECK(ring->dimension() == 8);
  CHECK(!ring->is_proven_field());  // gcd(2, phi(12)) = 2
  BigComplex yv = embed(ring->y(), 10);
  CHECK(yv.real().upper_magnitude_double() == doctest::Approx(0.3660254).epsilon(1e-6));

  // golden ratio reciprocal in conductor 60
  auto g = CompositeRing::composite(60, Poly::from_string("y^2 + y - 1"),
                                    {Rational(61, 100), Rational(62, 100)});
  BigComplex gv = embed(g->y(), 10);
  CHECK(gv.real().upper_magnitude_double() == doctest::Approx(0.6180339887).epsilon(1e-9));

  CHECK_THROWS(CompositeRing::composite(12, Poly::from_string("y^2 - 2*y + 1"),
                                        {Rational(0), Rational(1)}));  // not squarefree
  // two roots in the interval: 16y^2 - 16y + 3 has roots 1/4 and 3/4
  CHECK_THROWS(CompositeRing::composite(12, Poly::from_string("16*y^2 - 16*y + 3"),
                                        {Rational(1, 10), Rational(9, 10)}));
  // no roots in the interval
  CHECK_THROWS(CompositeRing::composite(12, Poly::from_string("2*y^2 + 2*y - 1"),
                                        {Rational(1, 2), Rational(9, 10)}));
  // endpoint is a root
  CHECK_THROWS(CompositeRing::composite(12, Poly::from_string("16*y^2 - 16*y + 3"),
                                        {Rational(1, 4), Rational(1, 2)}));
}

TEST_CASE("proven field by coprime degree") {
  auto plastic = CompositeRing::composite(60, Poly::from_string("y^3 + y^2 - 1"),
                                          {Rational(7, 10), Rational(4, 5)});
  CHECK(plastic->is_proven_field());  // gcd(3, phi(60)=16) = 1, irreducible
  auto quartic = CompositeRing::composite(24, Poly::from_string("y^4 + y - 1"),
                                          {Rational(7, 10), Rational(3, 4)});
  CHECK(!quartic->is_proven_field());  // gcd(4, phi(24)=8) = 4
}

TEST_CASE("zeta arithmetic golden values") {
  auto q8 = CompositeRing::cyclotomic(8);
  // zeta_8 * zeta_8^3 = zeta_8^4 = -1
  RingElement prod = q8->zeta_pow(1) * q8->zeta_pow(3);
  CHECK(prod == q8->from_rational(-1));
  // pow(e, 0) = 1
  CHECK(q8->zeta_pow(3).pow(0) == q8->one());
  // (zeta_12 + zeta_12^-1)^2 = 3
  auto q12 = CompositeRing::cyclotomic(12);
  RingElement c = q12->zeta_pow(1) + q12->zeta_pow(-1);
  CHECK(c * c == q12->from_rational(3));
  CHECK((c * c - q12->from_rational(3)).is_zero());
}

TEST_CASE("is_zero basics") {
  auto q8 = CompositeRing::cyclotomic(8);
  CHECK(q8->zero().is_zero());
  CHECK(!q8->one().is_zero());
}

TEST_CASE("conjugation is an involutive automorphism") {
  std::mt19937 rng(7);
  auto ring = CompositeRing::composite(12, Poly::from_string("2*y^2 + 2*y - 1"),
                                       {Rational(36, 100), Rational(37, 100)});
  auto cyclo = CompositeRing::cyclotomic(24);
  for (int iter = 0; iter < 25; ++iter) {
    for (const RingPtr& R : {ring, cyclo}) {
      RingElement a = random_element(R, rng);
      RingElement b = random_element(R, rng);
      CHECK(a.conjugate().conjugate() == a);
      CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
      CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
    }
  }
  // conjugate(zeta_8) = zeta_8^7
  auto q8 = CompositeRing::cyclotomic(8);
  CHECK(q8->zeta_pow(1).conjugate() == q8->zeta_pow(7));
  CHECK(q8->from_rational(Rational(22, 7)).conjugate() == q8->from_rational(Rational(22, 7)));
}

TEST_CASE("embedding of conjugate is complex conjugate") {
  std::mt19937 rng(11);
  auto ring = CompositeRing::composite(12, Poly::from_string("2*y^2 + 2*y - 1"),
                                       {Rational(36, 100), Rational(37, 100)});
  for (int iter = 0; iter < 10; ++iter) {
    RingElement a = random_element(ring, rng);
    BigComplex va = embed(a, 30);
    BigComplex vc = embed(a.conjugate(), 30);
    CHECK(complex_close(vc, va.conj()));
  }
  // 1 + y*zeta_12^2 specific instance
  RingElement e = ring->one() + ring->y() * ring->zeta_pow(2);
  CHECK(complex_close(embed(e.conjugate(), 30), embed(e, 30).conj()));
}

TEST_CASE("is_zero implies embedded zero") {
  auto q12 = CompositeRing::cyclotomic(12);
  RingElement z = (q12->zeta_pow(1) + q12->zeta_pow(-1)) * (q12->zeta_pow(1) + q12->zeta_pow(-1)) -
                  q12->from_rational(3);
  REQUIRE(z.is_zero());
  BigComplex v = embed(z, 50);
  CHECK(v.contains_zero());
}

TEST_CASE("pow homomorphism property") {
  std::mt19937 rng(13);
  auto q24 = CompositeRing::cyclotomic(24);
  std::uniform_int_distribution<unsigned long> ed(0, 10);
  for (int iter = 0; iter < 15; ++iter) {
    RingElement a = random_element(q24, rng);
    unsigned long m = ed(rng), n = ed(rng);
    CHECK(a.pow(m + n) == a.pow(m) * a.pow(n));
  }
}

TEST_CASE("embedding precision contract") {
  std::mt19937 rng(17);
  auto q40 = CompositeRing::cyclotomic(40);
  for (int iter = 0; iter < 5; ++iter) {
    RingElement a = random_element(q40, rng);
    BigComplex lo = embed(a, 20);
    BigComplex hi = embed(a, 40);
    CHECK(complex_close(lo, hi));
    CHECK(hi.radius_within_digits(40));
  }
  // embed of an exact rational is exact-ish
  BigComplex v = embed(q40->from_rational(Rational(3, 4)), 10);
  CHECK(v.real().center_rational() == Rational(3, 4));
}

TEST_CASE("square roots via Gauss sums") {
  auto q8 = CompositeRing::cyclotomic(8);
  RingElement s2 = q8->sqrt_surd(2);
  CHECK(s2 == q8->zeta_pow(1) + q8->zeta_pow(-1));
  CHECK((s2 * s2 - q8->from_rational(2)).is_zero());

  auto q12 = CompositeRing::cyclotomic(12);
  RingElement s3 = q12->sqrt_surd(3);
  CHECK((s3 * s3 - q12->from_rational(3)).is_zero());

  auto q5 = CompositeRing::cyclotomic(5);
  RingElement s5 = q5->sqrt_surd(5);
  CHECK((s5 * s5 - q5->from_rational(5)).is_zero());

  // positive embeddings
  CHECK(embed(s2, 10).real().certainly_positive());
  CHECK(embed(s3, 10).real().certainly_positive());
  CHECK(embed(s5, 10).real().certainly_positive());
  // sqrt(2) = 1.4142135624 to 10 digits
  BigReal v = embed_real(s2, 10);
  CHECK(v.upper_magnitude_double() == doctest::Approx(1.41421356237).epsilon(1e-10));

  CHECK_THROWS_AS(q12->sqrt_surd(2), std::domain_error);
  CHECK_THROWS_AS(q8->sqrt_surd(3), std::domain_error);
}

TEST_CASE("ring extension embeds compatibly") {
  auto q8 = CompositeRing::cyclotomic(8);
  auto q24 = CompositeRing::cyclotomic(24);
  RingElement s2 = q8->sqrt_surd(2);
  RingElement lifted = s2.extend_to(q24);
  CHECK((lifted * lifted - q24->from_rational(2)).is_zero());
  CHECK(complex_close(embed(lifted, 25), embed(s2, 25)));
}

TEST_CASE("ring mismatch errors") {
  auto q8 = CompositeRing::cyclotomic(8);
  auto q12 = CompositeRing::cyclotomic(12);
  CHECK_THROWS_AS(q8->one() + q12->one(), std::invalid_argument);
}

TEST_SUITE_END();
