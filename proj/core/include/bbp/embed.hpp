#pragma once

#include "bbp/bigreal.hpp"
#include "bbp/ring.hpp"

namespace bbp {

/// A ring element together with the designated-embedding convention:
/// zeta_L evaluates to e^(2 pi i / L) (trigonometric interval evaluation,
/// no root search) and y evaluates to the ring's designated real root of q,
/// refined by bisection from the stored isolating interval.
struct EmbeddedAlgebraic {
  RingElement element;
};

/// Certified complex value with both component radii at most 10^-digits.
BigComplex embed(const RingElement& e, long digits);
inline BigComplex embed(const EmbeddedAlgebraic& e, long digits) {
  return embed(e.element, digits);
}

/// Certified real value for a conjugation-invariant element (checked
/// exactly); radius at most 10^-digits.
BigReal embed_real(const RingElement& e, long digits);

/// Refines the ring's designated root interval until hi - lo <= width.
/// Returns the refined interval; the ring itself is never mutated.
RationalInterval refine_root_box(const CompositeRing& ring, const Rational& width);

/// Shared per-precision evaluation state: interval values for zeta_L powers
/// and for the designated real root. Cheap to build, safe to reuse across
/// elements of one ring at one precision.
class EmbeddingContext {
 public:
  EmbeddingContext(RingPtr ring, mpfr_prec_t prec);
  BigComplex eval(const RingElement& e) const;
  mpfr_prec_t precision() const { return prec_; }

 private:
  RingPtr ring_;
  mpfr_prec_t prec_;
  std::vector<BigComplex> zeta_powers_;  // zeta^i, i < phi(L)
  std::vector<BigReal> y_powers_;        // y^j, j < deg q
};

}  // namespace bbp
