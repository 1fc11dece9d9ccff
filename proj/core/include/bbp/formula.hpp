#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbp/bigreal.hpp"
#include "bbp/embed.hpp"
#include "bbp/ring.hpp"

namespace bbp {

/// One triangle/arc point: radius r (a real algebraic in (0, 1), given as an
/// exact element of the working ring), even block length b, and arc index a
/// with 1 <= a <= b/2 - 1 (a = 0 and a = b/2 are excluded because their
/// coefficient vectors vanish identically).
struct CTBTerm {
  RingElement r;
  long b = 0;
  long a = 0;
};

/// Exact scalar of the form rat * sqrt(d), d squarefree in {1, 2, 3, 5};
/// d = 1 means a plain rational.
struct SurdScalar {
  Rational rat{1};
  unsigned d = 1;

  bool is_rational() const { return d == 1; }
  SurdScalar reciprocal() const;
  std::string to_string() const;
  BigReal eval(mpfr_prec_t prec) const;
};

/// A series  lambda * sum_k base^-k sum_{j=1..n} A_j / (kn+j)^d  with
/// base = base_sign * r^-base_power, |base| > 1. Signed bases are
/// first-class: block reduction can introduce an alternating factor that is
/// absorbed into the base sign.
struct BBPFormula {
  long degree = 1;
  RingElement base_r;          // r in (0, 1); base magnitude is r^-base_power
  unsigned long base_power = 0;
  int base_sign = 1;
  long block = 0;              // n
  std::vector<RingElement> coeffs;  // A_1 .. A_n, exact ring elements
  SurdScalar lambda;           // leading scalar (default 1)

  /// Exact base value when it is rational (e.g. 16 or -64).
  std::optional<Rational> rational_base() const;
};

CTBTerm make_ctb_term(const RingElement& r, long b, long a);

/// Coefficient vector of Theorem-style arc formulas: entries
/// a_j = r^j (-1)^(j+1) sin(j a 2 pi / b), exact in the working ring
/// (requires 4 | conductor and b | conductor). Accepts the full index range
/// 0 <= a <= b so the vanishing and mirror symmetries are expressible.
std::vector<RingElement> ctb(const RingElement& r, long b, long a);

/// Real-part analogue: a_j = r^j (-1)^(j+1) cos(j a 2 pi / b); the series
/// value is log|1 + r e^(i theta)| = log(1 + r^2 + 2 r cos theta) / 2.
std::vector<RingElement> ctb_log(const RingElement& r, long b, long a);

/// BBP formula with block b and base r^-b built from a CTB vector.
BBPFormula make_ctb_formula(const RingElement& r, long b, std::vector<RingElement> coeffs);

/// Truncated-series evaluation with a rigorous geometric tail bound;
/// resulting radius <= 10^-digits.
BigReal eval_series(const BBPFormula& f, long digits);

/// Closed-form arg(1 + r e^(i theta)), theta = (a/b) 2 pi; lies in
/// (-pi/2, pi/2) since the real part exceeds 1 - r > 0.
BigReal arg_eval(const CTBTerm& t, long digits);

/// Closed-form log|1 + r e^(i theta)| = log(1 + r^2 + 2 r cos theta) / 2.
BigReal logabs_eval(const CTBTerm& t, long digits);

struct IntegerizeResult {
  bool ok = false;
  SurdScalar lambda;            // minimal positive multiplier
  std::vector<Integer> vec;     // lambda * A, integers with gcd 1
};

/// Finds the minimal positive lambda of the form rational or
/// rational*sqrt(d) such that lambda * A is an integer vector with gcd 1.
/// Fails (ok = false) when the entries are not all rational multiples of a
/// single irrationality.
IntegerizeResult integerize(const BBPFormula& f);

struct BlockReduction {
  bool reduced = false;
  long block = 0;   // new block length
  int sign = 1;     // sign factor absorbed into the base
};

/// Rewrites the formula with the smallest block n | b such that
/// a_{j+n} = sigma * r^n * a_j exactly for all valid j; the base becomes
/// sigma * r^-n. Returns the input unchanged when no reduction exists.
std::pair<BBPFormula, BlockReduction> reduce_block(const BBPFormula& f);

}  // namespace bbp
