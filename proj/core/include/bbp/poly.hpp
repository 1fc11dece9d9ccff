#pragma once

#include <string>
#include <vector>

#include "bbp/rational.hpp"

namespace bbp {

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree order with no trailing zeros. The zero polynomial has an empty
/// coefficient list and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  static Poly monomial(std::size_t degree, const Rational& c = 1);
  static Poly from_string(const std::string& text);

  /// L-th cyclotomic polynomial, computed by exact division of x^L - 1 by
  /// the cyclotomic polynomials of the proper divisors of L.
  static Poly cyclotomic(unsigned long L);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& coeff(std::size_t k) const;
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& s) const;
  Poly operator-() const;

  /// Euclidean division; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  /// Division known to be exact; throws std::domain_error on a remainder.
  Poly divide_exact(const Poly& divisor) const;

  Poly derivative() const;
  Rational operator()(const Rational& x) const;
  int sign_at(const Rational& x) const;

  Poly monic() const;
  static Poly gcd(const Poly& a, const Poly& b);
  bool is_squarefree() const;

  /// Number of distinct real roots in the half-open interval (lo, hi],
  /// by a Sturm chain with exact arithmetic.
  long count_real_roots(const Rational& lo, const Rational& hi) const;

  /// Irreducibility over Q where cheaply decidable: degree 1 is irreducible,
  /// degrees 2 and 3 reduce to the rational root test. Returns false
  /// ("unknown") for degree >= 4 or when the divisor enumeration would be
  /// unreasonably large.
  bool known_irreducible_over_Q() const;

  /// Integer-primitive form with positive leading coefficient.
  Poly primitive() const;

  std::string to_string(const std::string& var = "y") const;

 private:
  void normalize();
  std::vector<Rational> c_;
};

}  // namespace bbp
