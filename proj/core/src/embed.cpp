#include "bbp/embed.hpp"

#include <stdexcept>

namespace bbp {

RationalInterval refine_root_box(const CompositeRing& ring, const Rational& width) {
  RationalInterval box = ring.root_interval();
  const Poly& q = ring.real_modulus();
  int sign_lo = q.sign_at(box.lo);
  if (sign_lo == 0) throw std::logic_error("root box endpoint became a root");
  while (box.hi - box.lo > width) {
    Rational mid = (box.lo + box.hi) / 2;
    int s = q.sign_at(mid);
    if (s == 0) {
      box.lo = mid;
      box.hi = mid;
      break;
    }
    if (s == sign_lo)
      box.lo = mid;
    else
      box.hi = mid;
  }
  return box;
}

EmbeddingContext::EmbeddingContext(RingPtr ring, mpfr_prec_t prec)
    : ring_(std::move(ring)), prec_(prec) {
  const unsigned long L = ring_->conductor();
  const unsigned phi = ring_->cyclo_degree();
  // zeta = cos(2 pi / L) + i sin(2 pi / L), as rigorous balls.
  Rational two_over_L(2, static_cast<long>(L));
  two_over_L.canonicalize();
  BigReal theta = BigReal::pi(prec).mul_rational(two_over_L);
  BigComplex zeta(theta.cos(), theta.sin());
  zeta_powers_.reserve(phi);
  BigReal one = BigReal::exact_integer(1, prec);
  zeta_powers_.emplace_back(one, BigReal(prec));
  for (unsigned i = 1; i < phi; ++i) zeta_powers_.push_back(zeta_powers_.back() * zeta);

  const unsigned dq = ring_->real_degree();
  y_powers_.reserve(dq);
  y_powers_.push_back(std::move(one));
  if (dq > 1) {
    // Refine the designated root to roughly the working precision.
    Rational width(Integer(1), Integer(1) << static_cast<unsigned>(prec + 8));
    RationalInterval box = refine_root_box(*ring_, width);
    BigReal yv = BigReal::from_interval(box.lo, box.hi, prec);
    for (unsigned j = 1; j < dq; ++j) y_powers_.push_back(j == 1 ? yv : y_powers_.back() * yv);
  }
}

BigComplex EmbeddingContext::eval(const RingElement& e) const {
  const unsigned phi = ring_->cyclo_degree();
  const unsigned dq = ring_->real_degree();
  BigReal re(prec_), im(prec_);
  for (unsigned j = 0; j < dq; ++j) {
    // inner sum over zeta powers with rational coefficients
    BigReal row_re(prec_), row_im(prec_);
    bool any = false;
    for (unsigned i = 0; i < phi; ++i) {
      const Rational& c = e.coord(i, j);
      if (c == 0) continue;
      any = true;
      row_re = row_re + zeta_powers_[i].real().mul_rational(c);
      row_im = row_im + zeta_powers_[i].imag().mul_rational(c);
    }
    if (!any) continue;
    if (j == 0) {
      re = re + row_re;
      im = im + row_im;
    } else {
      re = re + row_re * y_powers_[j];
      im = im + row_im * y_powers_[j];
    }
  }
  return BigComplex(std::move(re), std::move(im));
}

BigComplex embed(const RingElement& e, long digits) {
  mpfr_prec_t prec = digits_to_prec(digits) + 32;
  for (int attempt = 0; attempt < 64; ++attempt) {
    EmbeddingContext ctx(e.ring(), prec);
    BigComplex v = ctx.eval(e);
    if (v.radius_within_digits(digits)) return v;
    prec *= 2;
  }
  throw std::runtime_error("embedding failed to converge");
}

BigReal embed_real(const RingElement& e, long digits) {
  if (!(e.conjugate() == e))
    throw std::domain_error("embed_real requires a conjugation-invariant element");
  return embed(e, digits).real();
}

}  // namespace bbp
