#include "bbp/spigot.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bbp {

namespace {

std::string render_digits(Integer value, const Integer& base, unsigned count) {
  // value in [0, base^count); most significant first
  std::vector<Integer> digits(count);
  for (unsigned i = count; i-- > 0;) {
    Integer d;
    mpz_fdiv_qr(value.get_mpz_t(), d.get_mpz_t(), value.get_mpz_t(), base.get_mpz_t());
    digits[i] = d;
  }
  std::ostringstream os;
  if (base <= 36) {
    static const char* alphabet = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    for (const auto& d : digits) os << alphabet[d.get_ui()];
  } else {
    for (unsigned i = 0; i < count; ++i) {
      if (i) os << ":";
      os << digits[i].get_str();
    }
  }
  return os.str();
}

}  // namespace

std::string extract_digits(const DigitRequest& req) {
  const BBPFormula& f = req.formula;
  auto base_opt = f.rational_base();
  if (!base_opt || base_opt->get_den() != 1 || *base_opt < 2)
    throw std::invalid_argument("digit extraction needs an exact integer base >= 2");
  const Integer B = base_opt->get_num();
  if (!f.lambda.is_rational())
    throw std::invalid_argument("digit extraction needs a rational leading scalar");
  const Integer lam_num = f.lambda.rat.get_num();
  const Integer lam_den = f.lambda.rat.get_den();
  if (req.position < 1) throw std::invalid_argument("digit positions are 1-indexed");
  if (req.count < 1) throw std::invalid_argument("need at least one digit");

  std::vector<Integer> A;
  A.reserve(f.coeffs.size());
  Integer max_abs = 0;
  bool all_zero = true;
  for (const auto& c : f.coeffs) {
    auto q = c.as_rational();
    if (!q || q->get_den() != 1)
      throw std::invalid_argument("digit extraction needs integer coefficients");
    A.push_back(q->get_num());
    if (abs(A.back()) > max_abs) max_abs = abs(A.back());
    if (A.back() != 0) all_zero = false;
  }
  const long n = f.block;
  const unsigned long d = static_cast<unsigned long>(f.degree);
  if (all_zero) return render_digits(Integer(0), B, req.count);
  if (f.base_sign < 0)
    throw std::invalid_argument("digit extraction is defined for positive integer bases");

  const double log2B = std::log2(B.get_d());
  for (unsigned guard = req.guard_digits; guard <= 4 * req.guard_digits; guard *= 2) {
    // Fixed-point accumulator with F fractional bits.
    const Integer head_terms = req.position * n + 64;
    const unsigned long F =
        static_cast<unsigned long>((req.count + guard) * log2B) +
        mpz_sizeinbase(head_terms.get_mpz_t(), 2) + 16;
    Integer acc = 0;       // value * 2^F, modulo 2^F drift
    Integer err_units = 0; // accumulated absolute error in 2^-F units
    Integer two_F = Integer(1) << F;

    // Head: k <= position - 1, frac(lam * a_j * B^(p-1-k) / (lam_den (kn+j)^d))
    // via modular exponentiation.
    Integer p_minus_1 = req.position - 1;
    for (Integer k = 0; k <= p_minus_1; k += 1) {
      Integer e = p_minus_1 - k;
      for (long j = 1; j <= n; ++j) {
        const Integer& a = A[static_cast<std::size_t>(j - 1)];
        if (a == 0) continue;
        Integer denom = k * n + j;
        Integer denom_pow;
        mpz_pow_ui(denom_pow.get_mpz_t(), denom.get_mpz_t(), d);
        Integer M = lam_den * denom_pow;
        Integer powmod;
        mpz_powm(powmod.get_mpz_t(), B.get_mpz_t(), e.get_mpz_t(), M.get_mpz_t());
        Integer num = lam_num * a * powmod;
        mpz_mod(num.get_mpz_t(), num.get_mpz_t(), M.get_mpz_t());  // into [0, M)
        acc += (num << F) / M;
        err_units += 1;
      }
    }

    // Tail: k >= position, terms lam*a_j / (lam_den (kn+j)^d B^(k-p+1)).
    Integer Bpow = B;  // B^(k - p + 1)
    for (Integer k = req.position;; k += 1) {
      // remaining-tail bound: n * lam*max|a| * 2^F / (lam_den (kn)^d B^(k-p+1))
      Integer kn = k * n;
      Integer kn_pow;
      mpz_pow_ui(kn_pow.get_mpz_t(), kn.get_mpz_t(), d);
      Integer denom_all = lam_den * kn_pow * Bpow;
      Integer remain = (abs(lam_num) * max_abs * Integer(n) * 2 * two_F) / denom_all;
      if (remain == 0) {
        err_units += 1;  // the < 1 unit of truncated tail
        break;
      }
      for (long j = 1; j <= n; ++j) {
        const Integer& a = A[static_cast<std::size_t>(j - 1)];
        if (a == 0) continue;
        Integer denom = k * n + j;
        Integer denom_pow;
        mpz_pow_ui(denom_pow.get_mpz_t(), denom.get_mpz_t(), d);
        Integer M = lam_den * denom_pow * Bpow;
        Integer num = lam_num * a << F;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), M.get_mpz_t());
        acc += q;
        err_units += 1;
      }
      Bpow *= B;
    }

    // Fractional part and digit window with certified bounds.
    Integer frac;
    mpz_mod(frac.get_mpz_t(), acc.get_mpz_t(), two_F.get_mpz_t());
    Integer lo = frac - err_units, hi = frac + err_units;
    if (lo < 0 || hi >= two_F) continue;  // value sits at a radix boundary; escalate
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), B.get_mpz_t(), req.count);
    Integer dig_lo = (lo * scale) >> F;
    Integer dig_hi = (hi * scale) >> F;
    if (dig_lo == dig_hi) return render_digits(dig_lo, B, req.count);
  }
  throw CarryAmbiguity("carry ambiguity persists after guard escalation");
}

}  // namespace bbp
