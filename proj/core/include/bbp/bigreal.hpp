#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "bbp/rational.hpp"

namespace bbp {

/// Arbitrary-precision real ball: an mpfr center at a chosen working
/// precision plus a rigorous absolute error radius (small fixed-precision
/// mpfr, always rounded up). The true value is guaranteed to lie within
/// `radius` of `center`; every operation propagates radii conservatively,
/// including the rounding error of the center computation itself.
class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec = 64);
  BigReal(const BigReal& o);
  BigReal(BigReal&& o) noexcept;
  BigReal& operator=(const BigReal& o);
  BigReal& operator=(BigReal&& o) noexcept;
  ~BigReal();

  static BigReal exact_integer(const Integer& n, mpfr_prec_t prec);
  static BigReal from_rational(const Rational& q, mpfr_prec_t prec);
  static BigReal pi(mpfr_prec_t prec);
  /// Ball covering the rational interval [lo, hi].
  static BigReal from_interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(c_); }
  bool is_exact() const { return mpfr_zero_p(r_); }
  const mpfr_t& center() const { return c_; }
  const mpfr_t& radius() const { return r_; }

  BigReal operator+(const BigReal& o) const;
  BigReal operator-(const BigReal& o) const;
  BigReal operator*(const BigReal& o) const;
  BigReal operator/(const BigReal& o) const;  // requires o certainly nonzero
  BigReal operator-() const;

  BigReal mul_rational(const Rational& q) const;
  BigReal div_integer(const Integer& n) const;  // n != 0, exact divisor
  BigReal abs_val() const;
  BigReal sqrt() const;   // requires lower bound >= 0
  BigReal log() const;    // requires lower bound > 0
  BigReal atan() const;
  BigReal sin() const;
  BigReal cos() const;
  BigReal pow_ui(unsigned long k) const;

  bool contains_zero() const;
  bool certainly_positive() const;
  bool certainly_negative() const;
  /// max(|center|) + radius, rounded up, as a machine double (may be inf).
  double upper_magnitude_double() const;

  /// Exact rational endpoints of the ball.
  Rational lower_rational() const;
  Rational upper_rational() const;
  Rational center_rational() const;
  Rational radius_rational() const;

  /// radius <= 10^-digits, conservatively.
  bool radius_within_digits(long digits) const;

  /// The unique integer contained in the ball, if there is exactly one.
  std::optional<Integer> unique_integer() const;

  std::string to_string(std::size_t sig_digits = 20) const;

 private:
  void bump_radius_ulp(int ternary);
  mpfr_t c_;
  mpfr_t r_;
  friend class BigComplex;
};

/// Rectangular complex ball.
class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}

  const BigReal& real() const { return re_; }
  const BigReal& imag() const { return im_; }

  BigComplex operator+(const BigComplex& o) const;
  BigComplex operator-(const BigComplex& o) const;
  BigComplex operator*(const BigComplex& o) const;
  BigComplex conj() const;

  BigComplex mul_real(const BigReal& s) const;

  bool contains_zero() const;
  /// True when 0 is certainly not in the ball (some component separated).
  bool certainly_nonzero() const;
  bool radius_within_digits(long digits) const;

  std::string to_string(std::size_t sig_digits = 20) const;

 private:
  BigReal re_, im_;
};

mpfr_prec_t digits_to_prec(long digits);

}  // namespace bbp
