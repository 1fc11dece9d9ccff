#include "bbp/bigreal.hpp"

#include <cmath>
#include <stdexcept>

namespace bbp {

namespace {

constexpr mpfr_prec_t kRadiusPrec = 64;

// Scratch radius-channel value, always rounded toward +inf.
struct RadTmp {
  mpfr_t v;
  RadTmp() { mpfr_init2(v, kRadiusPrec); }
  ~RadTmp() { mpfr_clear(v); }
};

// |x| rounded up into the radius channel.
void abs_up(mpfr_t out, const mpfr_t x) { mpfr_abs(out, x, MPFR_RNDU); }

}  // namespace

mpfr_prec_t digits_to_prec(long digits) {
  if (digits < 1) digits = 1;
  double bits = static_cast<double>(digits) * 3.3219280948873626;
  return static_cast<mpfr_prec_t>(bits) + 32;
}

BigReal::BigReal(mpfr_prec_t prec) {
  mpfr_init2(c_, prec);
  mpfr_set_zero(c_, 1);
  mpfr_init2(r_, kRadiusPrec);
  mpfr_set_zero(r_, 1);
}

BigReal::BigReal(const BigReal& o) {
  mpfr_init2(c_, mpfr_get_prec(o.c_));
  mpfr_set(c_, o.c_, MPFR_RNDN);
  mpfr_init2(r_, kRadiusPrec);
  mpfr_set(r_, o.r_, MPFR_RNDU);
}

BigReal::BigReal(BigReal&& o) noexcept {
  mpfr_init2(c_, 2);
  mpfr_init2(r_, 2);
  mpfr_swap(c_, o.c_);
  mpfr_swap(r_, o.r_);
}

BigReal& BigReal::operator=(const BigReal& o) {
  if (this != &o) {
    mpfr_set_prec(c_, mpfr_get_prec(o.c_));
    mpfr_set(c_, o.c_, MPFR_RNDN);
    mpfr_set(r_, o.r_, MPFR_RNDU);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
  mpfr_swap(c_, o.c_);
  mpfr_swap(r_, o.r_);
  return *this;
}

BigReal::~BigReal() {
  mpfr_clear(c_);
  mpfr_clear(r_);
}

void BigReal::bump_radius_ulp(int ternary) {
  if (ternary == 0) return;  // center computed exactly
  if (mpfr_zero_p(c_)) {
    // A correctly rounded nonzero result is never zero; keep a tiny cushion
    // for pathological underflow anyway.
    RadTmp t;
    mpfr_set_ui_2exp(t.v, 1, mpfr_get_emin(), MPFR_RNDU);
    mpfr_add(r_, r_, t.v, MPFR_RNDU);
    return;
  }
  RadTmp t;
  mpfr_exp_t e = mpfr_get_exp(c_);
  mpfr_set_ui_2exp(t.v, 1, e - mpfr_get_prec(c_), MPFR_RNDU);
  mpfr_add(r_, r_, t.v, MPFR_RNDU);
}

BigReal BigReal::exact_integer(const Integer& n, mpfr_prec_t prec) {
  BigReal out(prec);
  int t = mpfr_set_z(out.c_, n.get_mpz_t(), MPFR_RNDN);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::from_rational(const Rational& q, mpfr_prec_t prec) {
  Rational qc = q;
  qc.canonicalize();
  BigReal out(prec);
  int t = mpfr_set_q(out.c_, qc.get_mpq_t(), MPFR_RNDN);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::pi(mpfr_prec_t prec) {
  BigReal out(prec);
  int t = mpfr_const_pi(out.c_, MPFR_RNDN);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::from_interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  if (hi < lo) throw std::invalid_argument("inverted interval");
  Rational mid = (lo + hi) / 2;
  Rational rad = (hi - lo) / 2;
  BigReal out(prec);
  int t = mpfr_set_q(out.c_, mid.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(out.r_, rad.get_mpq_t(), MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::operator+(const BigReal& o) const {
  BigReal out(std::max(precision(), o.precision()));
  int t = mpfr_add(out.c_, c_, o.c_, MPFR_RNDN);
  mpfr_add(out.r_, r_, o.r_, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::operator-(const BigReal& o) const {
  BigReal out(std::max(precision(), o.precision()));
  int t = mpfr_sub(out.c_, c_, o.c_, MPFR_RNDN);
  mpfr_add(out.r_, r_, o.r_, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::operator*(const BigReal& o) const {
  BigReal out(std::max(precision(), o.precision()));
  int t = mpfr_mul(out.c_, c_, o.c_, MPFR_RNDN);
  // |a|rb + |b|ra + ra*rb
  RadTmp aa, bb, u;
  abs_up(aa.v, c_);
  abs_up(bb.v, o.c_);
  mpfr_mul(u.v, aa.v, o.r_, MPFR_RNDU);
  mpfr_add(out.r_, out.r_, u.v, MPFR_RNDU);
  mpfr_mul(u.v, bb.v, r_, MPFR_RNDU);
  mpfr_add(out.r_, out.r_, u.v, MPFR_RNDU);
  mpfr_mul(u.v, r_, o.r_, MPFR_RNDU);
  mpfr_add(out.r_, out.r_, u.v, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::operator/(const BigReal& o) const {
  if (o.contains_zero()) throw std::domain_error("ball division by interval containing zero");
  BigReal out(std::max(precision(), o.precision()));
  int t = mpfr_div(out.c_, c_, o.c_, MPFR_RNDN);
  // (|b|ra + |a|rb) / (|b| (|b| - rb)), all rounded up.
  RadTmp aa, bb, denom, num, u;
  abs_up(aa.v, c_);
  abs_up(bb.v, o.c_);
  mpfr_sub(denom.v, bb.v, o.r_, MPFR_RNDD);  // |b| - rb, rounded down
  mpfr_mul(denom.v, denom.v, bb.v, MPFR_RNDD);
  mpfr_mul(num.v, bb.v, r_, MPFR_RNDU);
  mpfr_mul(u.v, aa.v, o.r_, MPFR_RNDU);
  mpfr_add(num.v, num.v, u.v, MPFR_RNDU);
  mpfr_div(u.v, num.v, denom.v, MPFR_RNDU);
  mpfr_add(out.r_, out.r_, u.v, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::operator-() const {
  BigReal out(*this);
  mpfr_neg(out.c_, out.c_, MPFR_RNDN);  // exact
  return out;
}

BigReal BigReal::mul_rational(const Rational& q) const {
  Rational qc = q;
  qc.canonicalize();
  BigReal out(precision());
  int t = mpfr_mul_q(out.c_, c_, qc.get_mpq_t(), MPFR_RNDN);
  RadTmp qv;
  mpfr_set_q(qv.v, qc.get_mpq_t(), MPFR_RNDA);
  mpfr_abs(qv.v, qv.v, MPFR_RNDU);
  mpfr_mul(out.r_, r_, qv.v, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::div_integer(const Integer& n) const {
  if (n == 0) throw std::domain_error("division by zero integer");
  BigReal out(precision());
  int t = mpfr_div_z(out.c_, c_, n.get_mpz_t(), MPFR_RNDN);
  RadTmp nv;
  mpfr_set_z(nv.v, n.get_mpz_t(), MPFR_RNDZ);  // |n| >= 1, round toward zero
  mpfr_abs(nv.v, nv.v, MPFR_RNDD);
  mpfr_div(out.r_, r_, nv.v, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::abs_val() const {
  BigReal out(*this);
  mpfr_abs(out.c_, out.c_, MPFR_RNDN);  // exact
  return out;
}

BigReal BigReal::sqrt() const {
  // Lipschitz bound 1/(2 sqrt(lo)) on [lo, hi]; lo must be positive unless
  // the ball is exactly zero.
  if (is_exact() && mpfr_zero_p(c_)) return *this;
  BigReal out(precision());
  RadTmp lo;
  mpfr_sub(lo.v, c_, r_, MPFR_RNDD);
  if (mpfr_sgn(lo.v) <= 0) throw std::domain_error("sqrt of interval reaching zero");
  int t = mpfr_sqrt(out.c_, c_, MPFR_RNDN);
  RadTmp s, u;
  mpfr_sqrt(s.v, lo.v, MPFR_RNDD);
  mpfr_mul_ui(s.v, s.v, 2, MPFR_RNDD);
  mpfr_div(u.v, r_, s.v, MPFR_RNDU);
  mpfr_add(out.r_, out.r_, u.v, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::log() const {
  BigReal out(precision());
  RadTmp lo;
  mpfr_sub(lo.v, c_, r_, MPFR_RNDD);
  if (mpfr_sgn(lo.v) <= 0) throw std::domain_error("log of interval reaching zero");
  int t = mpfr_log(out.c_, c_, MPFR_RNDN);
  RadTmp u;
  mpfr_div(u.v, r_, lo.v, MPFR_RNDU);  // |log'| <= 1/lo
  mpfr_add(out.r_, out.r_, u.v, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::atan() const {
  BigReal out(precision());
  int t = mpfr_atan(out.c_, c_, MPFR_RNDN);
  mpfr_add(out.r_, out.r_, r_, MPFR_RNDU);  // |atan'| <= 1
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::sin() const {
  BigReal out(precision());
  int t = mpfr_sin(out.c_, c_, MPFR_RNDN);
  mpfr_add(out.r_, out.r_, r_, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::cos() const {
  BigReal out(precision());
  int t = mpfr_cos(out.c_, c_, MPFR_RNDN);
  mpfr_add(out.r_, out.r_, r_, MPFR_RNDU);
  out.bump_radius_ulp(t);
  return out;
}

BigReal BigReal::pow_ui(unsigned long k) const {
  BigReal acc = exact_integer(1, precision());
  BigReal base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

bool BigReal::contains_zero() const {
  RadTmp a;
  abs_up(a.v, c_);
  return mpfr_cmp(a.v, r_) <= 0;
}

bool BigReal::certainly_positive() const {
  RadTmp lo;
  mpfr_sub(lo.v, c_, r_, MPFR_RNDD);
  return mpfr_sgn(lo.v) > 0;
}

bool BigReal::certainly_negative() const {
  RadTmp hi;
  mpfr_add(hi.v, c_, r_, MPFR_RNDU);
  return mpfr_sgn(hi.v) < 0;
}

double BigReal::upper_magnitude_double() const {
  RadTmp a;
  abs_up(a.v, c_);
  mpfr_add(a.v, a.v, r_, MPFR_RNDU);
  return mpfr_get_d(a.v, MPFR_RNDU);
}

Rational BigReal::center_rational() const {
  if (!mpfr_number_p(c_)) throw std::domain_error("non-finite ball center");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), c_);
  return q;
}

Rational BigReal::radius_rational() const {
  if (!mpfr_number_p(r_)) throw std::domain_error("non-finite ball radius");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), r_);
  return q;
}

Rational BigReal::lower_rational() const { return center_rational() - radius_rational(); }
Rational BigReal::upper_rational() const { return center_rational() + radius_rational(); }

bool BigReal::radius_within_digits(long digits) const {
  RadTmp tol;
  mpfr_set_ui(tol.v, 10, MPFR_RNDD);
  mpfr_pow_si(tol.v, tol.v, -digits, MPFR_RNDD);
  return mpfr_cmp(r_, tol.v) <= 0;
}

std::optional<Integer> BigReal::unique_integer() const {
  Rational lo = lower_rational(), hi = upper_rational();
  Integer lo_ceil, hi_floor;
  mpz_cdiv_q(lo_ceil.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
  mpz_fdiv_q(hi_floor.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
  if (lo_ceil == hi_floor) return lo_ceil;
  return std::nullopt;
}

std::string BigReal::to_string(std::size_t sig_digits) const {
  char* cs = nullptr;
  // mpfr_asprintf handles the allocation; %.*Rg gives round-trippable output.
  if (mpfr_asprintf(&cs, "%.*Rg", static_cast<int>(sig_digits), c_) < 0)
    throw std::runtime_error("mpfr_asprintf failed");
  std::string center(cs);
  mpfr_free_str(cs);
  if (is_exact()) return center;
  if (mpfr_asprintf(&cs, "%.3Rg", r_) < 0) throw std::runtime_error("mpfr_asprintf failed");
  std::string rad(cs);
  mpfr_free_str(cs);
  return center + " +/- " + rad;
}

BigComplex BigComplex::operator+(const BigComplex& o) const {
  return BigComplex(re_ + o.re_, im_ + o.im_);
}

BigComplex BigComplex::operator-(const BigComplex& o) const {
  return BigComplex(re_ - o.re_, im_ - o.im_);
}

BigComplex BigComplex::operator*(const BigComplex& o) const {
  return BigComplex(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
}

BigComplex BigComplex::conj() const { return BigComplex(re_, -im_); }

BigComplex BigComplex::mul_real(const BigReal& s) const {
  return BigComplex(re_ * s, im_ * s);
}

bool BigComplex::contains_zero() const {
  return re_.contains_zero() && im_.contains_zero();
}

bool BigComplex::certainly_nonzero() const {
  return re_.certainly_positive() || re_.certainly_negative() ||
         im_.certainly_positive() || im_.certainly_negative();
}

bool BigComplex::radius_within_digits(long digits) const {
  return re_.radius_within_digits(digits) && im_.radius_within_digits(digits);
}

std::string BigComplex::to_string(std::size_t sig_digits) const {
  return "(" + re_.to_string(sig_digits) + ", " + im_.to_string(sig_digits) + "i)";
}

}  // namespace bbp
