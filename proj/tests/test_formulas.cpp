#include <doctest.h>

#include <random>

#include "bbp/formula.hpp"
#include "bbp/relation.hpp"

using namespace bbp;

TEST_SUITE_BEGIN("formulas");

namespace {

ResolvedRadius inv_sqrt2(long b) {
  RadiusSpec spec;
  spec.minpoly = Poly::from_string("2*y^2 - 1");
  spec.interval = RationalInterval{Rational(7, 10), Rational(3, 4)};
  return resolve_radius(spec, b);
}

ResolvedRadius inv_sqrt3(long b) {
  RadiusSpec spec;
  spec.minpoly = Poly::from_string("3*y^2 - 1");
  spec.interval = RationalInterval{Rational(5, 10), Rational(6, 10)};
  return resolve_radius(spec, b);
}

ResolvedRadius inv_phi(long b) {
  RadiusSpec spec;
  spec.minpoly = Poly::from_string("y^2 + y - 1");
  spec.interval = RationalInterval{Rational(3, 5), Rational(7, 10)};
  return resolve_radius(spec, b);
}

ResolvedRadius rational_r(const Rational& q, long b) {
  RadiusSpec spec;
  spec.rational = q;
  return resolve_radius(spec, b);
}

bool agree(const BigReal& a, const BigReal& b) { return (a - b).contains_zero(); }

}  // namespace

TEST_CASE("radius resolution picks proven cyclotomic fields for surds") {
  auto rr = inv_sqrt2(8);
  CHECK(rr.ring->conductor() == 8);
  CHECK(rr.ring->is_proven_field());
  CHECK(rr.surd_d == 2u);
  // r^2 = 1/2 exactly
  CHECK((rr.r * rr.r - rr.ring->from_rational(Rational(1, 2))).is_zero());

  auto r3 = inv_sqrt3(12);
  CHECK(r3.ring->conductor() == 12);
  CHECK((r3.r * r3.r - r3.ring->from_rational(Rational(1, 3))).is_zero());

  auto rphi = inv_phi(60);
  CHECK(rphi.ring->conductor() == 60);
  CHECK(rphi.ring->is_proven_field());
  // 1/phi satisfies y^2 + y - 1 = 0
  CHECK((rphi.r * rphi.r + rphi.r - rphi.ring->one()).is_zero());

  // psi = 1 + sqrt(3): discriminant 12 -> conductor 12 path
  RadiusSpec psi;
  psi.minpoly = Poly::from_string("2*y^2 + 2*y - 1");
  psi.interval = RationalInterval{Rational(36, 100), Rational(37, 100)};
  auto rpsi = resolve_radius(psi, 12);
  CHECK(rpsi.ring->is_proven_field());
  CHECK(rpsi.ring->conductor() == 12);
  CHECK(((rpsi.r * rpsi.r).mul_rational(2) + rpsi.r.mul_rational(2) - rpsi.ring->one()).is_zero());

  // x^2 - 3x - 1 reciprocal: discriminant 13 -> composite ring, unproven
  RadiusSpec d13;
  d13.minpoly = Poly::from_string("y^2 + 3*y - 1");
  d13.interval = RationalInterval{Rational(30, 100), Rational(31, 100)};
  auto r13 = resolve_radius(d13, 60);
  CHECK(!r13.ring->is_proven_field());
  CHECK(r13.ring->has_real_part());
}

TEST_CASE("ctb golden vector: r=1/sqrt2, b=8, a=3") {
  auto rr = inv_sqrt2(8);
  auto vec = ctb(rr.r, 8, 3);
  std::vector<Rational> expected{{1, 2}, {1, 2}, {1, 4}, {0}, {-1, 8}, {-1, 8}, {-1, 16}, {0}};
  REQUIRE(vec.size() == 8);
  for (std::size_t j = 0; j < 8; ++j) {
    auto q = vec[j].as_rational();
    REQUIRE_MESSAGE(q.has_value(), "entry ", j + 1, " should be rational");
    CHECK(*q == expected[j]);
  }
}

TEST_CASE("ctb vanishing and mirror symmetries, exact") {
  auto rr = inv_sqrt2(24);
  auto zero0 = ctb(rr.r, 24, 0);
  auto zero12 = ctb(rr.r, 24, 12);
  for (const auto& e : zero0) CHECK(e.is_zero());
  for (const auto& e : zero12) CHECK(e.is_zero());
  for (long a : {1L, 5L, 11L}) {
    auto va = ctb(rr.r, 24, a);
    auto vb = ctb(rr.r, 24, 24 - a);
    for (std::size_t j = 0; j < va.size(); ++j) CHECK((va[j] + vb[j]).is_zero());
  }
}

TEST_CASE("ctb entry via sin(pi/2): r=1/sqrt3, b=12, a=3") {
  auto rr = inv_sqrt3(12);
  auto vec = ctb(rr.r, 12, 3);
  CHECK(vec[0] == rr.r);  // a_1 = r * sin(pi/2) = r
}

TEST_CASE("theorem equivalence: series equals closed-form argument") {
  // full grid in the acceptance suite; a spot grid here
  for (long b : {8L, 12L}) {
    for (int which = 0; which < 3; ++which) {
      ResolvedRadius rr = which == 0   ? rational_r(Rational(1, 2), b)
                          : which == 1 ? inv_sqrt2(b)
                                       : inv_phi(b);
      for (long a = 1; a <= b / 2 - 1; ++a) {
        CTBTerm t = make_ctb_term(rr.r, b, a);
        BBPFormula f = make_ctb_formula(rr.r, b, ctb(rr.r, b, a));
        BigReal series = eval_series(f, 40);
        BigReal closed = arg_eval(t, 40);
        CHECK_MESSAGE(agree(series, closed), "b=", b, " a=", a, " which=", which);
      }
    }
  }
}

TEST_CASE("log variant equivalence and golden values") {
  auto rr = inv_sqrt2(8);
  CTBTerm t = make_ctb_term(rr.r, 8, 3);
  // value = -(log 2)/2
  BigReal v = logabs_eval(t, 40);
  BigReal log2 = (BigReal::exact_integer(2, digits_to_prec(45))).log();
  CHECK(agree(v, -log2.mul_rational(Rational(1, 2))));
  // series over ctb_log agrees
  BBPFormula f = make_ctb_formula(rr.r, 8, ctb_log(rr.r, 8, 3));
  CHECK(agree(eval_series(f, 40), v));

  // theta = 0: value = log(1 + r)
  BBPFormula f0 = make_ctb_formula(rr.r, 8, ctb_log(rr.r, 8, 0));
  BigReal v0 = eval_series(f0, 40);
  BigReal one_plus_r = BigReal::exact_integer(1, digits_to_prec(45)) + embed_real(rr.r, 45);
  CHECK(agree(v0, one_plus_r.log()));

  // (1/sqrt3, 12, 3): value = log(4/3)/2
  auto r3 = inv_sqrt3(12);
  CTBTerm t3 = make_ctb_term(r3.r, 12, 3);
  BigReal v3 = logabs_eval(t3, 40);
  BigReal ref = BigReal::from_rational(Rational(4, 3), digits_to_prec(45)).log().mul_rational(
      Rational(1, 2));
  CHECK(agree(v3, ref));
  CHECK(v3.upper_magnitude_double() == doctest::Approx(0.14384104).epsilon(1e-7));
}

TEST_CASE("arg golden values") {
  auto rr = inv_sqrt2(8);
  BigReal a = arg_eval(make_ctb_term(rr.r, 8, 3), 40);
  BigReal pi4 = BigReal::pi(digits_to_prec(45)).mul_rational(Rational(1, 4));
  CHECK(agree(a, pi4));

  RadiusSpec psi;
  psi.minpoly = Poly::from_string("2*y^2 + 2*y - 1");
  psi.interval = RationalInterval{Rational(36, 100), Rational(37, 100)};
  auto rpsi = resolve_radius(psi, 12);
  BigReal a2 = arg_eval(make_ctb_term(rpsi.r, 12, 2), 40);
  BigReal pi12 = BigReal::pi(digits_to_prec(45)).mul_rational(Rational(1, 12));
  CHECK(agree(a2, pi12));
  CHECK(a2.upper_magnitude_double() == doctest::Approx(0.26179938).epsilon(1e-7));

  // oddness: arg(r, b, a) = -arg(r, b, b - a); the mirror index falls
  // outside the CTBTerm range, so build the raw term directly
  auto r24 = inv_sqrt2(24);
  BigReal p = arg_eval(make_ctb_term(r24.r, 24, 5), 30);
  BigReal q = arg_eval(CTBTerm{r24.r, 24, 19}, 30);
  CHECK(agree(p, -q));
}

TEST_CASE("eval of the classic base-16 formula") {
  // BBP(1,16,8,(4,0,0,-2,-1,-1,0,0)) = pi
  auto rr = rational_r(Rational(1, 16), 8);
  // base 16 = r^-1 with r = 1/16: block 8, base_power must scale; build by hand
  BBPFormula f;
  f.degree = 1;
  f.base_r = rr.r;
  f.base_power = 1;
  f.base_sign = 1;
  f.block = 8;
  long coef[8] = {4, 0, 0, -2, -1, -1, 0, 0};
  for (long c : coef) f.coeffs.push_back(rr.ring->from_rational(Rational(c)));
  BigReal v = eval_series(f, 50);
  CHECK(agree(v, BigReal::pi(digits_to_prec(55))));
  CHECK(v.radius_within_digits(50));
}

TEST_CASE("all-zero coefficients evaluate to exact zero") {
  auto rr = inv_sqrt2(8);
  BBPFormula f = make_ctb_formula(rr.r, 8, ctb(rr.r, 8, 0));
  BigReal v = eval_series(f, 30);
  CHECK(v.is_exact());
  CHECK(v.contains_zero());
}

TEST_CASE("combine: linearity and golden combinations") {
  auto rr = inv_sqrt2(24);
  // Lafont difference has value 0
  Relation lafont;
  lafont.terms.push_back({Integer(1), make_ctb_term(rr.r, 24, 5)});
  lafont.terms.push_back({Integer(-1), make_ctb_term(rr.r, 24, 11)});
  lafont.targets.push_back({Integer(0), NamedConstant{}});
  BBPFormula f = combine(lafont);
  BigReal v = eval_series(f, 40);
  CHECK(v.contains_zero());

  // (+3, +3) has value pi
  Relation sqrt3pi;
  sqrt3pi.terms.push_back({Integer(3), make_ctb_term(rr.r, 24, 5)});
  sqrt3pi.terms.push_back({Integer(3), make_ctb_term(rr.r, 24, 11)});
  sqrt3pi.targets.push_back({Integer(-1), NamedConstant{}});
  BigReal vpi = eval_series(combine(sqrt3pi), 40);
  CHECK(agree(vpi, BigReal::pi(digits_to_prec(45))));

  // single term with coefficient 1 is that term's ctb formula
  Relation single;
  single.terms.push_back({Integer(1), make_ctb_term(rr.r, 24, 5)});
  BBPFormula g = combine(single);
  auto direct = ctb(rr.r, 24, 5);
  for (std::size_t j = 0; j < direct.size(); ++j) CHECK(g.coeffs[j] == direct[j]);

  // linearity against args on random small relations
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> cd(-3, 3);
  for (int iter = 0; iter < 4; ++iter) {
    Relation rel;
    for (long a : {2L, 5L, 7L}) {
      long c = cd(rng);
      if (c != 0) rel.terms.push_back({Integer(c), make_ctb_term(rr.r, 24, a)});
    }
    if (rel.terms.empty()) continue;
    BigReal lhs = eval_series(combine(rel), 40);
    BigReal rhs(digits_to_prec(40));
    for (const auto& t : rel.terms)
      rhs = rhs + arg_eval(t.term, 40).mul_rational(Rational(t.coeff));
    CHECK(agree(lhs, rhs));
  }
}

TEST_CASE("integerize golden cases") {
  // lambda = 16 on the quarter-pi vector
  auto rr = inv_sqrt2(8);
  BBPFormula f = make_ctb_formula(rr.r, 8, ctb(rr.r, 8, 3));
  IntegerizeResult res = integerize(f);
  REQUIRE(res.ok);
  CHECK(res.lambda.is_rational());
  CHECK(res.lambda.rat == 16);
  CHECK(res.vec == std::vector<Integer>{8, 8, 4, 0, -2, -2, -1, 0});

  // Adegoke difference: lambda = 486 sqrt(3), the corrected scalar
  auto r3 = inv_sqrt3(12);
  Relation adegoke;
  adegoke.terms.push_back({Integer(1), make_ctb_term(r3.r, 12, 3)});
  adegoke.terms.push_back({Integer(-1), make_ctb_term(r3.r, 12, 5)});
  IntegerizeResult ra = integerize(combine(adegoke));
  REQUIRE(ra.ok);
  CHECK(ra.lambda.d == 3);
  CHECK(ra.lambda.rat == 486);
  CHECK(ra.vec == std::vector<Integer>{243, -243, -324, -81, 27, 0, -9, 9, 12, 3, -1, 0});

  // sqrt(3) pi combination scaled to the 2-power vector
  auto r24 = inv_sqrt2(24);
  Relation s3;
  s3.terms.push_back({Integer(3), make_ctb_term(r24.r, 24, 5)});
  s3.terms.push_back({Integer(3), make_ctb_term(r24.r, 24, 11)});
  IntegerizeResult rs = integerize(combine(s3));
  REQUIRE(rs.ok);
  CHECK(rs.lambda.d == 3);
  CHECK(rs.lambda.rat == Rational(4096, 9));
  CHECK(rs.vec ==
        std::vector<Integer>{2048, 0,   0, 1024, 512, 0, 256, 256, 0,  0,  64, 0,
                             -32,  0,   0, -16,  -8,  0, -4,  -4,  0,  0,  -1, 0});

  // mixed irrationalities fail
  RadiusSpec psi;
  psi.minpoly = Poly::from_string("2*y^2 + 2*y - 1");
  psi.interval = RationalInterval{Rational(36, 100), Rational(37, 100)};
  auto rpsi = resolve_radius(psi, 12);
  Relation psinull;
  psinull.terms.push_back({Integer(1), make_ctb_term(rpsi.r, 12, 2)});
  psinull.terms.push_back({Integer(-1), make_ctb_term(rpsi.r, 12, 5)});
  CHECK(!integerize(combine(psinull)).ok);
}

TEST_CASE("integerize then un-scale reproduces the vector") {
  auto r3 = inv_sqrt3(12);
  Relation adegoke;
  adegoke.terms.push_back({Integer(1), make_ctb_term(r3.r, 12, 3)});
  adegoke.terms.push_back({Integer(-1), make_ctb_term(r3.r, 12, 5)});
  BBPFormula f = combine(adegoke);
  IntegerizeResult res = integerize(f);
  REQUIRE(res.ok);
  const RingPtr& ring = f.base_r.ring();
  RingElement lam = ring->sqrt_surd(res.lambda.d).mul_rational(res.lambda.rat);
  RingElement lam_sq = lam * lam;  // rational
  // lambda^-1 * vec = A  <=>  vec * lambda = A * lambda^2
  for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
    RingElement lhs = lam.mul_rational(Rational(res.vec[j]));
    RingElement rhs = f.coeffs[j] * lam_sq;
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("block reduction: golden ratio pi formula compresses 60 -> 15") {
  auto rr = inv_phi(60);
  Relation rel;
  rel.terms.push_back({Integer(10), make_ctb_term(rr.r, 60, 8)});
  rel.targets.push_back({Integer(-1), NamedConstant{}});
  BBPFormula f = combine(rel);
  auto [g, info] = reduce_block(f);
  REQUIRE(info.reduced);
  CHECK(info.block == 15);
  CHECK(info.sign == -1);  // the alternating factor forces base -phi^15
  CHECK(g.block == 15);
  CHECK(g.base_power == 15);
  CHECK(g.base_sign == -1);
  // value preserved: still pi (40-digit check)
  BigReal v = eval_series(g, 40);
  CHECK(agree(v, BigReal::pi(digits_to_prec(45))));
  // and the positive-base variant is NOT pi (spec's open question resolved:
  // the printed phi^15 base only matches with the negative sign)
  BBPFormula pos = g;
  pos.base_sign = 1;
  BigReal vpos = eval_series(pos, 40);
  CHECK(!agree(vpos, BigReal::pi(digits_to_prec(45))));
}

TEST_CASE("block reduction: generic vector unchanged, lafont reduces") {
  auto rr = inv_sqrt2(24);
  // a single CTB vector has the half-period sign symmetry: block 12, base -2^6
  BBPFormula single = make_ctb_formula(rr.r, 24, ctb(rr.r, 24, 5));
  auto [s12, sinfo] = reduce_block(single);
  CHECK(sinfo.reduced);
  CHECK(sinfo.block == 12);
  CHECK(sinfo.sign == -1);
  CHECK(agree(eval_series(s12, 40), eval_series(single, 40)));

  // mixing odd and even arc indices breaks the periodicity: unchanged
  auto v5 = ctb(rr.r, 24, 5);
  auto v2 = ctb(rr.r, 24, 2);
  std::vector<RingElement> mixed;
  for (std::size_t j = 0; j < v5.size(); ++j) mixed.push_back(v5[j] + v2[j]);
  BBPFormula f = make_ctb_formula(rr.r, 24, mixed);
  auto [g, info] = reduce_block(f);
  CHECK(!info.reduced);
  CHECK(g.block == 24);

  // the Lafont combination has 12-periodicity with a sign flip
  Relation lafont;
  lafont.terms.push_back({Integer(1), make_ctb_term(rr.r, 24, 5)});
  lafont.terms.push_back({Integer(-1), make_ctb_term(rr.r, 24, 11)});
  auto [h, info2] = reduce_block(combine(lafont));
  // exact periodicity check over divisors of 24 decides; verify the result
  // preserves the value
  BigReal v = eval_series(h, 40);
  CHECK(v.contains_zero());
  if (info2.reduced) CHECK(24 % info2.block == 0);
}

TEST_SUITE_END();
