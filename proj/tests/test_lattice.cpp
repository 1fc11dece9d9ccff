#include <doctest.h>

#include <random>

#include "bbp/lattice.hpp"

using namespace bbp;

TEST_SUITE_BEGIN("lattice");

namespace {

IntMat random_basis(std::mt19937& rng, std::size_t n, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  while (true) {
    IntMat m(n, IntVec(cols));
    for (auto& row : m)
      for (auto& v : row) v = d(rng);
    if (n <= cols) {
      // require full row rank: use the GSO-based check via lll (throws on
      // dependence) or a quick Gram determinant
      IntMat gram(n, IntVec(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Integer s = 0;
          for (std::size_t t = 0; t < cols; ++t) s += m[i][t] * m[j][t];
          gram[i][j] = s;
        }
      if (det_integer(gram) != 0) return m;
    }
  }
}

Integer norm2(const IntVec& v) {
  Integer s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

}  // namespace

TEST_CASE("build_relation_lattice golden and errors") {
  std::vector<BigReal> xs;
  xs.push_back(BigReal::from_rational(Rational(1, 2), 96));
  xs.push_back(BigReal::from_rational(Rational(1, 4), 96));
  RelationLattice lat = build_relation_lattice(xs, 100);
  CHECK(lat.m == IntVec{50, 25});
  IntMat rows = lat.rows();
  CHECK(rows[0] == IntVec{1, 0, 50});
  CHECK(rows[1] == IntVec{0, 1, 25});

  // well-defined rounding: radius 1e-12 at N = 1e10
  std::vector<BigReal> ok{BigReal::from_interval(
      Rational(1, 3) - Rational(1, Integer("1000000000000")),
      Rational(1, 3) + Rational(1, Integer("1000000000000")), 128)};
  CHECK_NOTHROW(build_relation_lattice(ok, Integer("10000000000")));

  // ambiguous: radius 1/N
  std::vector<BigReal> bad{BigReal::from_interval(Rational(0), Rational(2, 100), 96)};
  CHECK_THROWS_AS(build_relation_lattice(bad, Integer(100)), std::domain_error);
  CHECK_THROWS_AS(build_relation_lattice(ok, Integer(1)), std::domain_error);
}

TEST_CASE("lll golden case finds the short relation") {
  IntMat rows{{1, 0, 50}, {0, 1, 25}};
  LLLResult res = lll_reduce(rows, Rational(3, 4));
  bool found = false;
  for (const auto& row : res.basis)
    if (row == IntVec{1, -2, 0} || row == IntVec{-1, 2, 0}) found = true;
  CHECK(found);
  // oracle: brute force over |a|,|b| <= 5 says the shortest vector is (1,-2,0)
  Integer best = 0;
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b) {
      if (a == 0 && b == 0) continue;
      IntVec v{a, b, 50 * a + 25 * b};
      Integer n2 = norm2(v);
      if (best == 0 || n2 < best) best = n2;
    }
  CHECK(best == 5);
  CHECK(norm2(res.basis[0]) == best);
}

TEST_CASE("identity basis unchanged up to sign") {
  IntMat rows{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  LLLResult res = lll_reduce(rows, Rational(3, 4));
  for (std::size_t i = 0; i < 3; ++i) {
    Integer diag = res.basis[i][i];
    CHECK(abs(diag) == 1);
  }
  CHECK(abs(det_integer(res.transform)) == 1);
}

TEST_CASE("dependent rows are rejected") {
  IntMat rows{{1, 2, 3}, {2, 4, 6}};
  CHECK_THROWS_AS(lll_reduce(rows, Rational(3, 4)), std::invalid_argument);
}

TEST_CASE("reduction invariants on random bases") {
  std::mt19937 rng(101);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t n = 2 + static_cast<std::size_t>(iter % 5);  // 2..6
    IntMat rows = random_basis(rng, n, n, 1000);
    LLLResult res = lll_reduce(rows, Rational(3, 4));
    // unimodular transform reproducing the output exactly
    CHECK(abs(det_integer(res.transform)) == 1);
    for (std::size_t i = 0; i < n; ++i) {
      IntVec acc(rows[0].size(), Integer(0));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t t = 0; t < acc.size(); ++t)
          acc[t] += res.transform[i][j] * rows[j][t];
      CHECK(acc == res.basis[i]);
    }
    CHECK(is_size_reduced(res.basis));
    CHECK(satisfies_lovasz(res.basis, Rational(3, 4)));
  }
}

TEST_CASE("first vector within the LLL factor of the shortest") {
  std::mt19937 rng(202);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t n = 2 + static_cast<std::size_t>(iter % 4);  // 2..5
    IntMat rows = random_basis(rng, n, n, 1000);
    LLLResult res = lll_reduce(rows, Rational(3, 4));
    Integer lambda1 = shortest_vector_norm2(res.basis);
    // |b1|^2 <= 2^(n-1) * lambda1^2
    Integer bound = lambda1 << (n - 1);
    CHECK(norm2(res.basis[0]) <= bound);
  }
}

TEST_CASE("extract_candidates filters, normalizes and sorts") {
  IntMat reduced{{-1, 2, 0}, {3, 1, 7}, {0, 4, -1}, {0, 0, 9}};
  auto cands = extract_candidates(reduced, Integer(1), 10);
  REQUIRE(cands.size() == 2);
  // sorted by s: (1,-2,0) has s=5; (0,4,-1) has s=17
  CHECK(cands[0].coeffs == IntVec{1, -2});
  CHECK(cands[0].last == 0);
  CHECK(cands[0].s == 5);
  CHECK(cands[1].coeffs == IntVec{0, 4});
  CHECK(cands[1].last == -1);
  // last-coordinate recomputation invariant: last = sum a_i m_i cannot be
  // checked without m here; covered in the search tests.
  auto none = extract_candidates(IntMat{{2, 3, 40}}, Integer(0), 10);
  CHECK(none.empty());
  auto capped = extract_candidates(reduced, Integer(10), 1);
  CHECK(capped.size() == 1);
}

TEST_CASE("residual bound formula") {
  Candidate c;
  c.coeffs = IntVec{1, -1};
  c.last = Integer(1);
  c.s = 3;
  Rational bound = residual_bound(c, Integer("10000000000"), Rational(1, Integer("1000000000000")));
  CHECK(bound == Rational(3, Integer("10000000000")) + Rational(3, Integer("1000000000000")));

  Candidate g;
  g.s = 4;
  Rational b2 = residual_bound(g, Integer("10000000000"), Rational(1, Integer("1000000000000")));
  CHECK(b2 == Rational(4, Integer("10000000000")) + Rational(4, Integer("1000000000000")));
}

TEST_SUITE_END();
