#include "bbp/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace bbp {

IntMat RelationLattice::rows() const {
  IntMat out(n, IntVec(n + 1, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) {
    out[i][i] = 1;
    out[i][n] = m[i];
  }
  return out;
}

RelationLattice build_relation_lattice(const std::vector<BigReal>& xs, const Integer& N) {
  if (N < 2) throw std::domain_error("scale N must be at least 2");
  RelationLattice lat;
  lat.n = xs.size();
  lat.N = N;
  lat.epsilon = 0;
  lat.m.reserve(xs.size());
  for (const auto& x : xs) {
    Rational rad = x.radius_rational();
    if (rad * Rational(N) * 2 >= 1)
      throw std::domain_error("approximation too coarse: nearest integer ambiguous");
    if (rad > lat.epsilon) lat.epsilon = rad;
    lat.m.push_back(round_half_even(Rational(N) * x.center_rational()));
  }
  return lat;
}

namespace {

Integer dot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Nearest integer to num/den (den > 0), ties toward -inf of the half grid
// (any tie rule keeps |mu| <= 1/2).
Integer round_quotient(const Integer& num, const Integer& den) {
  Integer q;
  Integer two_num = num * 2 + den;
  Integer two_den = den * 2;
  mpz_fdiv_q(q.get_mpz_t(), two_num.get_mpz_t(), two_den.get_mpz_t());
  return q;
}

}  // namespace

LLLResult lll_reduce(const IntMat& input, const Rational& delta) {
  if (!(delta > Rational(1, 4) && delta < 1))
    throw std::invalid_argument("delta must lie in (1/4, 1)");
  const std::size_t n = input.size();
  if (n == 0) return {{}, {}};
  LLLResult res;
  res.basis = input;
  res.transform.assign(n, IntVec(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) res.transform[i][i] = 1;

  IntMat& B = res.basis;
  IntMat& U = res.transform;
  std::vector<Integer> d(n + 1, Integer(0));
  d[0] = 1;
  IntMat lam(n, IntVec(n, Integer(0)));

  auto incremental_gram = [&](std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j) {
      Integer u = dot(B[k], B[j]);
      for (std::size_t i = 0; i < j; ++i)
        u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
      if (j < k)
        lam[k][j] = u;
      else {
        if (u == 0) throw std::invalid_argument("dependent input rows");
        d[k + 1] = u;
      }
    }
  };

  auto red = [&](std::size_t k, std::size_t l) {
    if (2 * abs(lam[k][l]) > d[l + 1]) {
      Integer q = round_quotient(lam[k][l], d[l + 1]);
      for (std::size_t i = 0; i < B[k].size(); ++i) B[k][i] -= q * B[l][i];
      for (std::size_t i = 0; i < n; ++i) U[k][i] -= q * U[l][i];
      lam[k][l] -= q * d[l + 1];
      for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    }
  };

  std::size_t kmax = 0;
  incremental_gram(0);
  const Integer dp = delta.get_num(), dq = delta.get_den();
  std::size_t k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      incremental_gram(k);
    }
    red(k, k - 1);
    // Lovasz: d[k+1] d[k-1] >= delta d[k]^2 - lam^2
    if (dq * d[k + 1] * d[k - 1] >= dp * d[k] * d[k] - dq * lam[k][k - 1] * lam[k][k - 1]) {
      for (std::size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    } else {
      std::swap(B[k], B[k - 1]);
      std::swap(U[k], U[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
      Integer lmb = lam[k][k - 1];
      Integer bv = (d[k - 1] * d[k + 1] + lmb * lmb) / d[k];
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        Integer t = lam[i][k];
        lam[i][k] = (d[k + 1] * lam[i][k - 1] - lmb * t) / d[k];
        lam[i][k - 1] = (bv * t + lmb * lam[i][k]) / d[k + 1];
      }
      d[k] = bv;
      k = k > 1 ? k - 1 : 1;
    }
  }
  return res;
}

namespace {

// Rational Gram-Schmidt: returns mu (lower triangular) and |b*_i|^2.
void rational_gso(const IntMat& rows, std::vector<std::vector<Rational>>& mu,
                  std::vector<Rational>& norm2) {
  const std::size_t n = rows.size();
  mu.assign(n, std::vector<Rational>(n, Rational(0)));
  norm2.assign(n, Rational(0));
  std::vector<std::vector<Rational>> star(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(rows[i].size());
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = Rational(rows[i][t]);
    for (std::size_t j = 0; j < i; ++j) {
      Rational num(0);
      for (std::size_t t = 0; t < v.size(); ++t) num += Rational(rows[i][t]) * star[j][t];
      if (norm2[j] == 0) throw std::invalid_argument("dependent rows in GSO");
      mu[i][j] = num / norm2[j];
      for (std::size_t t = 0; t < v.size(); ++t) v[t] -= mu[i][j] * star[j][t];
    }
    mu[i][i] = 1;
    Rational n2(0);
    for (const auto& c : v) n2 += c * c;
    norm2[i] = n2;
    star[i] = std::move(v);
  }
}

}  // namespace

bool is_size_reduced(const IntMat& rows) {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norm2;
  rational_gso(rows, mu, norm2);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(mu[i][j]) > Rational(1, 2)) return false;
  return true;
}

bool satisfies_lovasz(const IntMat& rows, const Rational& delta) {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norm2;
  rational_gso(rows, mu, norm2);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    Rational lhs = norm2[k];
    Rational rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1];
    if (lhs < rhs) return false;
  }
  return true;
}

Integer det_integer(const IntMat& m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  IntMat a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

Integer shortest_vector_norm2(const IntMat& rows) {
  // Fincke-Pohst over the (preferably reduced) basis with exact rationals.
  const std::size_t n = rows.size();
  if (n == 0) throw std::invalid_argument("empty basis");
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norm2;
  rational_gso(rows, mu, norm2);
  Integer best = dot(rows[0], rows[0]);
  for (std::size_t i = 1; i < n; ++i) best = std::min(best, dot(rows[i], rows[i]));

  // depth-first over coefficients x_{n-1}, ..., x_0
  std::vector<Integer> x(n, Integer(0));
  std::vector<Rational> centers(n, Rational(0));

  // recursive lambda
  auto enumerate = [&](auto&& self, std::size_t level, const Rational& remaining) -> void {
    // remaining = bound - sum_{j>level} (x_j + center_j)^2 norm2_j
    if (norm2[level] == 0) return;
    Rational center(0);
    for (std::size_t j = level + 1; j < n; ++j) center += mu[j][level] * Rational(x[j]);
    // |x + center|^2 * norm2[level] <= remaining
    Rational box = remaining / norm2[level];
    // integer range: x in [-center - sqrt(box), -center + sqrt(box)]
    // conservative integer bounds via floor/ceil of rational sqrt estimate
    Rational c = -center;
    // crude sqrt upper bound: iterate k from 0 upward; box is small in our use
    Integer lo, hi;
    {
      // smallest integer >= c - sqrt(box): scan from floor(c) downward
      Integer fc;
      mpz_fdiv_q(fc.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
      lo = fc;
      while (true) {
        Rational diff = c - Rational(lo);
        if (diff * diff > box) break;
        lo -= 1;
      }
      lo += 1;
      hi = fc + 1;
      while (true) {
        Rational diff = Rational(hi) - c;
        if (diff * diff > box) break;
        hi += 1;
      }
      hi -= 1;
    }
    for (Integer v = lo; v <= hi; v += 1) {
      x[level] = v;
      Rational term = (Rational(v) - c) * (Rational(v) - c) * norm2[level];
      if (term > remaining) continue;
      if (level == 0) {
        bool allzero = true;
        for (const auto& xi : x)
          if (xi != 0) {
            allzero = false;
            break;
          }
        if (allzero) continue;
        IntVec vec(rows[0].size(), Integer(0));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t t = 0; t < vec.size(); ++t) vec[t] += x[i] * rows[i][t];
        Integer nv = dot(vec, vec);
        if (nv != 0 && nv < best) best = nv;
      } else {
        self(self, level - 1, remaining - term);
      }
    }
    x[level] = 0;
  };
  enumerate(enumerate, n - 1, Rational(best));
  return best;
}

std::vector<Candidate> extract_candidates(const IntMat& reduced, const Integer& max_last,
                                          std::size_t max_count) {
  std::vector<Candidate> out;
  for (const auto& row : reduced) {
    if (row.empty()) continue;
    Integer last = row.back();
    if (abs(last) > max_last) continue;
    Candidate c;
    c.coeffs.assign(row.begin(), row.end() - 1);
    bool any = false;
    int lead = 0;
    for (const auto& v : c.coeffs)
      if (v != 0) {
        any = true;
        lead = sgn(v);
        break;
      }
    if (!any) continue;
    c.last = last;
    if (lead < 0) {
      for (auto& v : c.coeffs) v = -v;
      c.last = -c.last;
    }
    c.s = dot(c.coeffs, c.coeffs) + c.last * c.last;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.s != b.s) return a.s < b.s;
    return a.coeffs < b.coeffs;
  });
  if (out.size() > max_count) out.resize(max_count);
  return out;
}

Rational residual_bound(const Candidate& c, const Integer& N, const Rational& eps) {
  Rational s(c.s);
  return s / Rational(N) + s * eps;
}

}  // namespace bbp
