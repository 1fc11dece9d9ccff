#include "bbp/formula.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bbp {

SurdScalar SurdScalar::reciprocal() const {
  if (rat == 0) throw std::domain_error("reciprocal of zero scalar");
  if (is_rational()) return {Rational(1) / rat, 1};
  // 1 / (c sqrt(d)) = (1 / (c d)) sqrt(d)
  return {Rational(1) / (rat * Rational(static_cast<long>(d))), d};
}

std::string SurdScalar::to_string() const {
  if (is_rational()) return rat.get_str();
  if (rat == 1) return "sqrt(" + std::to_string(d) + ")";
  return rat.get_str() + "*sqrt(" + std::to_string(d) + ")";
}

BigReal SurdScalar::eval(mpfr_prec_t prec) const {
  BigReal v = BigReal::from_rational(rat, prec);
  if (is_rational()) return v;
  return v * BigReal::exact_integer(Integer(static_cast<long>(d)), prec).sqrt();
}

std::optional<Rational> BBPFormula::rational_base() const {
  auto r = base_r.as_rational();
  if (!r) return std::nullopt;
  if (*r == 0) throw std::logic_error("zero formula radius");
  Rational mag(1);
  Rational rr = *r;
  for (unsigned long k = 0; k < base_power; ++k) mag *= rr;
  Rational base = Rational(1) / mag;
  return base_sign < 0 ? -base : base;
}

CTBTerm make_ctb_term(const RingElement& r, long b, long a) {
  if (b <= 0 || b % 2 != 0) throw std::invalid_argument("block length b must be even and positive");
  if (a < 1 || a > b / 2 - 1)
    throw std::invalid_argument("arc index a must satisfy 1 <= a <= b/2 - 1");
  if (static_cast<long>(r.ring()->conductor()) % b != 0)
    throw std::invalid_argument("ring conductor must be divisible by b");
  BigComplex rv = embed(r, 10);
  if (!rv.imag().contains_zero() || !rv.real().certainly_positive())
    throw std::invalid_argument("radius r must embed to a real in (0, 1)");
  BigReal gap = BigReal::exact_integer(1, 64) - rv.real();
  if (!gap.certainly_positive()) throw std::invalid_argument("radius r must be below 1");
  return CTBTerm{r, b, a};
}

namespace {

// sin(m * 2 pi / L) and cos(m * 2 pi / L) as exact ring elements;
// requires 4 | L for the imaginary unit i = zeta^(L/4).
RingElement exact_sin(const RingPtr& ring, long m) {
  const long L = static_cast<long>(ring->conductor());
  if (L % 4 != 0) throw std::invalid_argument("conductor must be divisible by 4");
  RingElement diff = ring->zeta_pow(m) - ring->zeta_pow(-m);
  // 1/(2i) = -i/2 = -zeta^(L/4)/2
  return (diff * ring->zeta_pow(L / 4)).mul_rational(Rational(-1, 2));
}

RingElement exact_cos(const RingPtr& ring, long m) {
  RingElement sum = ring->zeta_pow(m) + ring->zeta_pow(-m);
  return sum.mul_rational(Rational(1, 2));
}

std::vector<RingElement> ctb_impl(const RingElement& r, long b, long a, bool use_cos) {
  if (b <= 0 || b % 2 != 0) throw std::invalid_argument("block length b must be even and positive");
  if (a < 0 || a > b) throw std::invalid_argument("arc index out of [0, b]");
  const RingPtr& ring = r.ring();
  const long L = static_cast<long>(ring->conductor());
  if (L % b != 0) throw std::invalid_argument("ring conductor must be divisible by b");
  const long step = L / b;  // zeta_b = zeta_L^step
  std::vector<RingElement> out;
  out.reserve(static_cast<std::size_t>(b));
  RingElement rpow = r;  // r^j
  for (long j = 1; j <= b; ++j) {
    long m = (j * a % b) * step;
    RingElement trig = use_cos ? exact_cos(ring, m) : exact_sin(ring, m);
    RingElement entry = rpow * trig;
    if (j % 2 == 0) entry = -entry;  // (-1)^(j+1)
    out.push_back(std::move(entry));
    if (j < b) rpow = rpow * r;
  }
  return out;
}

}  // namespace

std::vector<RingElement> ctb(const RingElement& r, long b, long a) {
  return ctb_impl(r, b, a, false);
}

std::vector<RingElement> ctb_log(const RingElement& r, long b, long a) {
  return ctb_impl(r, b, a, true);
}

BBPFormula make_ctb_formula(const RingElement& r, long b, std::vector<RingElement> coeffs) {
  if (static_cast<long>(coeffs.size()) != b)
    throw std::invalid_argument("coefficient vector length must equal the block length");
  BBPFormula f;
  f.degree = 1;
  f.base_r = r;
  f.base_power = static_cast<unsigned long>(b);
  f.base_sign = 1;
  f.block = b;
  f.coeffs = std::move(coeffs);
  return f;
}

BigReal eval_series(const BBPFormula& f, long digits) {
  if (f.block <= 0 || f.coeffs.size() != static_cast<std::size_t>(f.block))
    throw std::invalid_argument("malformed formula");
  bool all_zero = true;
  for (const auto& c : f.coeffs)
    if (!c.is_zero()) {
      all_zero = false;
      break;
    }
  if (all_zero) return BigReal(digits_to_prec(digits));

  // Coefficient magnitude bound and base ratio upper bound at 10 digits.
  const RingPtr& ring = f.base_r.ring();
  double coeff_sum = 0;
  {
    EmbeddingContext ctx10(ring, digits_to_prec(12));
    for (const auto& c : f.coeffs) coeff_sum += ctx10.eval(c).real().upper_magnitude_double();
  }
  BigComplex rv = embed(f.base_r, 12);
  double u = rv.real().pow_ui(f.base_power).upper_magnitude_double();
  if (!(u < 1.0)) throw std::domain_error("divergent base: |base| must exceed 1");

  // Initial K estimate: coeff_sum * u^(K+1) / (1 - u) < 10^-digits / 2.
  // Double math only seeds the choice; the bound is re-verified rigorously
  // below and K escalates if it falls short.
  double log_target = -static_cast<double>(digits) * 2.302585092994046 - 0.6931;
  double kf = (log_target - std::log(coeff_sum + 1e-30) + std::log(1 - u)) / std::log(u) - 1;
  long K = kf < 1 ? 1 : static_cast<long>(kf) + 2;

  mpfr_prec_t prec = digits_to_prec(digits) + 64;
  for (int attempt = 0; attempt < 64; ++attempt) {
    EmbeddingContext ctx(ring, prec);
    std::vector<BigReal> acoef;
    acoef.reserve(f.coeffs.size());
    bool real_ok = true;
    for (const auto& c : f.coeffs) {
      BigComplex cv = ctx.eval(c);
      if (!cv.imag().contains_zero()) real_ok = false;
      acoef.push_back(cv.real());
    }
    if (!real_ok) throw std::domain_error("formula coefficients must embed to reals");

    BigReal ratio = ctx.eval(f.base_r).real().pow_ui(f.base_power);  // |base|^-1
    if (!ratio.certainly_positive() ||
        !(BigReal::exact_integer(1, prec) - ratio).certainly_positive()) {
      prec *= 2;
      continue;
    }

    // Rigorous tail check first; escalate K while it is too weak.
    BigReal s_up(prec);
    for (const auto& aj : acoef) s_up = s_up + aj.abs_val();
    BigReal one = BigReal::exact_integer(1, prec);
    BigReal tail = s_up * ratio.pow_ui(static_cast<unsigned long>(K + 1)) / (one - ratio);
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational half_target(Integer(1), 2 * p10);
    if (!(tail.upper_rational() < half_target)) {
      K = K * 2 + 8;
      if (K > 4000000) throw std::runtime_error("tail bound will not close");
      continue;
    }

    BigReal sum(prec);
    BigReal weight = BigReal::exact_integer(1, prec);  // base^-k
    for (long k = 0; k <= K; ++k) {
      BigReal inner(prec);
      for (long j = 1; j <= f.block; ++j) {
        const BigReal& aj = acoef[static_cast<std::size_t>(j - 1)];
        Integer denom = Integer(k) * f.block + j;
        Integer denom_pow;
        mpz_pow_ui(denom_pow.get_mpz_t(), denom.get_mpz_t(),
                   static_cast<unsigned long>(f.degree));
        inner = inner + aj.div_integer(denom_pow);
      }
      sum = sum + inner * weight;
      weight = weight * ratio;
      if (f.base_sign < 0) weight = -weight;
    }
    Rational tub = tail.upper_rational();
    sum = sum + BigReal::from_interval(-tub, tub, prec);
    BigReal value = sum * f.lambda.eval(prec);
    if (value.radius_within_digits(digits)) return value;
    prec *= 2;
  }
  throw std::runtime_error("series evaluation failed to converge");
}

namespace {

BigReal theta_ball(long a, long b, mpfr_prec_t prec) {
  Rational q(2 * a, b);
  q.canonicalize();
  return BigReal::pi(prec).mul_rational(q);
}

}  // namespace

BigReal arg_eval(const CTBTerm& t, long digits) {
  mpfr_prec_t prec = digits_to_prec(digits) + 32;
  for (int attempt = 0; attempt < 64; ++attempt, prec *= 2) {
    EmbeddingContext ctx(t.r.ring(), prec);
    BigComplex rc = ctx.eval(t.r);
    if (!rc.imag().contains_zero()) throw std::domain_error("radius must be real");
    BigReal r = rc.real();
    BigReal th = theta_ball(t.a, t.b, prec);
    BigReal x = BigReal::exact_integer(1, prec) + r * th.cos();
    BigReal y = r * th.sin();
    if (!x.certainly_positive()) continue;
    BigReal res = (y / x).atan();
    if (res.radius_within_digits(digits)) return res;
  }
  throw std::runtime_error("arg evaluation failed to converge");
}

BigReal logabs_eval(const CTBTerm& t, long digits) {
  mpfr_prec_t prec = digits_to_prec(digits) + 32;
  for (int attempt = 0; attempt < 64; ++attempt, prec *= 2) {
    EmbeddingContext ctx(t.r.ring(), prec);
    BigReal r = ctx.eval(t.r).real();
    BigReal th = theta_ball(t.a, t.b, prec);
    BigReal inner = BigReal::exact_integer(1, prec) + r * r +
                    r.mul_rational(2) * th.cos();
    if (!inner.certainly_positive()) continue;
    BigReal res = inner.log().mul_rational(Rational(1, 2));
    if (res.radius_within_digits(digits)) return res;
  }
  throw std::runtime_error("logabs evaluation failed to converge");
}

namespace {

// Solve e = u + v * s exactly for rationals u, v given the basis element s;
// returns false when no such decomposition exists.
bool decompose_over(const RingElement& e, const RingElement& s, Rational& u, Rational& v) {
  const auto& ec = e.coords();
  const auto& sc = s.coords();
  // Find a coordinate where s is nonzero away from the constant slot.
  std::size_t k = 0;
  bool found = false;
  for (std::size_t i = 1; i < sc.size(); ++i)
    if (sc[i] != 0) {
      k = i;
      found = true;
      break;
    }
  if (!found) return false;  // s is rational; degenerate basis
  v = ec[k] / sc[k];
  u = ec[0] - v * sc[0];
  RingElement recon = s.mul_rational(v) + e.ring()->from_rational(u);
  return recon == e;
}

// Minimal positive rational lambda with lambda * w integral and gcd 1.
Rational minimal_integerizer(const std::vector<Rational>& w) {
  Integer den_lcm = 1;
  for (const auto& q : w)
    if (q != 0) den_lcm = int_lcm(den_lcm, q.get_den());
  std::vector<Integer> nums;
  for (const auto& q : w)
    if (q != 0) nums.push_back(q.get_num() * (den_lcm / q.get_den()));
  Integer g = vector_gcd(nums);
  if (g == 0) return Rational(1);
  Rational lambda(den_lcm, g);
  lambda.canonicalize();
  return lambda;
}

}  // namespace

IntegerizeResult integerize(const BBPFormula& f) {
  IntegerizeResult res;
  const RingPtr& ring = f.base_r.ring();
  const std::size_t n = f.coeffs.size();

  // Rational family first.
  {
    std::vector<Rational> w(n, Rational(0));
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      auto q = f.coeffs[i].as_rational();
      if (q)
        w[i] = *q;
      else
        ok = false;
    }
    if (ok) {
      Rational lambda = minimal_integerizer(w);
      res.ok = true;
      res.lambda = SurdScalar{lambda, 1};
      res.vec.reserve(n);
      for (const auto& q : w) {
        Rational scaled = q * lambda;
        res.vec.push_back(scaled.get_num());
      }
      return res;
    }
  }

  // Pure surd families: all entries v_i * sqrt(d).
  for (unsigned d : ring->supported_surds()) {
    RingElement s = ring->sqrt_surd(d);
    std::vector<Rational> w(n, Rational(0));
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      Rational u, v;
      if (!decompose_over(f.coeffs[i], s, u, v) || u != 0) ok = false;
      else w[i] = v;
    }
    if (!ok) continue;
    // lambda = c sqrt(d): lambda * v_i sqrt(d) = c d v_i must be integral.
    std::vector<Rational> scaled(w);
    for (auto& q : scaled) q *= Rational(static_cast<long>(d));
    Rational c = minimal_integerizer(scaled);
    res.ok = true;
    res.lambda = SurdScalar{c, d};
    res.vec.reserve(n);
    for (const auto& q : scaled) res.vec.push_back(Rational(q * c).get_num());
    return res;
  }
  return res;  // not integerizable
}

std::pair<BBPFormula, BlockReduction> reduce_block(const BBPFormula& f) {
  BlockReduction info;
  info.block = f.block;
  info.sign = f.base_sign;
  const long b = f.block;
  for (long n = 1; n < b; ++n) {
    if (b % n != 0) continue;
    // shift factor s = |base|^(-n/b) = r^(n * power / b); must be an exact
    // ring power, i.e. b | n * power.
    if ((n * static_cast<long>(f.base_power)) % b != 0) continue;
    RingElement s = f.base_r.pow(static_cast<unsigned long>((n * static_cast<long>(f.base_power)) / b));
    for (int sigma : {1, -1}) {
      // consistency across whole blocks: sigma^(b/n) must match the base sign
      long reps = b / n;
      int total = (sigma < 0 && reps % 2 != 0) ? -1 : 1;
      if (total != f.base_sign) continue;
      bool match = true;
      for (long j = 1; j + n <= b && match; ++j) {
        RingElement expect = f.coeffs[static_cast<std::size_t>(j - 1)] * s;
        if (sigma < 0) expect = -expect;
        match = (f.coeffs[static_cast<std::size_t>(j + n - 1)] == expect);
      }
      if (!match) continue;
      BBPFormula g;
      g.degree = f.degree;
      g.base_r = f.base_r;
      g.base_power = static_cast<unsigned long>((n * static_cast<long>(f.base_power)) / b);
      g.base_sign = sigma;
      g.block = n;
      g.coeffs.assign(f.coeffs.begin(), f.coeffs.begin() + n);
      g.lambda = f.lambda;
      info.reduced = true;
      info.block = n;
      info.sign = sigma;
      return {g, info};
    }
  }
  return {f, info};
}

}  // namespace bbp
