#include "bbp/verify.hpp"

#include <sstream>
#include <stdexcept>

namespace bbp {

std::string to_string(Realness r) {
  switch (r) {
    case Realness::ProvenExact: return "proven-exact";
    case Realness::ProvenNumericSeparation: return "proven-numeric-separation";
    case Realness::Failed: return "failed";
  }
  return "?";
}

VerificationPoint build_point(const CTBTerm& t, const RingPtr& ring) {
  if (static_cast<long>(ring->conductor()) % t.b != 0)
    throw std::invalid_argument("ring conductor must be divisible by the block length");
  RingElement r = t.r;
  if (!r.ring()->same_ring(*ring)) r = r.extend_to(ring);
  long step = static_cast<long>(ring->conductor()) / t.b;
  RingElement c = ring->one() + r * ring->zeta_pow(t.a * step);
  return VerificationPoint{t, c, c.conjugate()};
}

std::string Certificate::digest() const {
  std::ostringstream os;
  os << to_string(status) << "|" << to_string(realness) << "|" << winding.get_str() << "|"
     << conductor << "|" << real_modulus << "|" << proven_field << "|" << lhs.to_string()
     << "|" << rhs.to_string();
  const std::string s = os.str();
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

namespace {

// Splits a composite-ring element into its y-power slices, each an element
// of the pure cyclotomic field of the same conductor.
std::vector<RingElement> y_slices(const RingElement& e, const RingPtr& cyclo) {
  const auto& ring = e.ring();
  const unsigned phi = ring->cyclo_degree();
  const unsigned dq = ring->real_degree();
  std::vector<RingElement> out;
  out.reserve(dq);
  for (unsigned j = 0; j < dq; ++j) {
    std::vector<Rational> v(phi, Rational(0));
    for (unsigned i = 0; i < phi; ++i) v[i] = e.coord(i, j);
    out.emplace_back(cyclo, std::move(v));
  }
  return out;
}

// Polynomials in y with cyclotomic-field coefficients, used for the gcd
// argument in rings not proven to be fields.
struct CycloPoly {
  std::vector<RingElement> c;  // ascending; may hold leading zeros

  int degree() const {
    for (std::size_t i = c.size(); i-- > 0;)
      if (!c[i].is_zero()) return static_cast<int>(i);
    return -1;
  }
  bool is_zero() const { return degree() < 0; }
};

CycloPoly cp_monic(const CycloPoly& p) {
  int d = p.degree();
  if (d < 0) return p;
  RingElement inv = p.c[static_cast<std::size_t>(d)].inverse_cyclotomic();
  CycloPoly out;
  out.c.reserve(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) out.c.push_back(p.c[static_cast<std::size_t>(i)] * inv);
  return out;
}

// Euclidean remainder of a by b (b nonzero), coefficients in the cyclotomic
// field.
CycloPoly cp_rem(const CycloPoly& a, const CycloPoly& b) {
  CycloPoly r = a;
  int db = b.degree();
  RingElement lead_inv = b.c[static_cast<std::size_t>(db)].inverse_cyclotomic();
  while (r.degree() >= db) {
    int dr = r.degree();
    RingElement factor = r.c[static_cast<std::size_t>(dr)] * lead_inv;
    for (int i = 0; i <= db; ++i) {
      std::size_t idx = static_cast<std::size_t>(dr - db + i);
      r.c[idx] = r.c[idx] - factor * b.c[static_cast<std::size_t>(i)];
    }
    // force the leading slot to exactly zero
    r.c[static_cast<std::size_t>(dr)] =
        r.c[static_cast<std::size_t>(dr)].ring()->zero();
  }
  return r;
}

CycloPoly cp_gcd(CycloPoly a, CycloPoly b) {
  while (!b.is_zero()) {
    CycloPoly r = cp_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return cp_monic(a);
}

// Exact quotient a / b when the division is known exact.
CycloPoly cp_div_exact(const CycloPoly& a, const CycloPoly& b) {
  CycloPoly r = a;
  int db = b.degree();
  RingElement lead_inv = b.c[static_cast<std::size_t>(db)].inverse_cyclotomic();
  int dq = a.degree() - db;
  if (dq < 0) throw std::logic_error("bad exact division");
  const RingPtr ring = b.c[0].ring();
  CycloPoly q;
  q.c.assign(static_cast<std::size_t>(dq) + 1, ring->zero());
  while (r.degree() >= db) {
    int dr = r.degree();
    RingElement factor = r.c[static_cast<std::size_t>(dr)] * lead_inv;
    q.c[static_cast<std::size_t>(dr - db)] = factor;
    for (int i = 0; i <= db; ++i) {
      std::size_t idx = static_cast<std::size_t>(dr - db + i);
      r.c[idx] = r.c[idx] - factor * b.c[static_cast<std::size_t>(i)];
    }
    r.c[static_cast<std::size_t>(dr)] = ring->zero();
  }
  if (!r.is_zero()) throw std::logic_error("division was not exact");
  return q;
}

// Interval evaluation of a CycloPoly at the ring's designated real root.
BigComplex cp_eval_at_root(const CycloPoly& p, const RingPtr& composite, long digits) {
  mpfr_prec_t prec = digits_to_prec(digits) + 32;
  EmbeddingContext ctx(composite, prec);
  // Horner in y: coefficients are cyclotomic (y-degree 0) elements extended
  // into the composite ring for evaluation.
  BigComplex acc(prec);
  const RingPtr cyclo = p.c.empty() ? nullptr : p.c[0].ring();
  RationalInterval box =
      refine_root_box(*composite, Rational(Integer(1), Integer(1) << static_cast<unsigned>(prec)));
  BigReal yv = BigReal::from_interval(box.lo, box.hi, prec);
  for (std::size_t i = p.c.size(); i-- > 0;) {
    // lift slice into composite ring coordinates for evaluation: the slice
    // has no y component, so we can evaluate it via the same context by
    // constructing a composite element with only j=0 coordinates.
    const unsigned phi = composite->cyclo_degree();
    std::vector<Rational> v(composite->dimension(), Rational(0));
    for (unsigned t = 0; t < phi; ++t) v[t] = p.c[i].coords()[t];
    RingElement lifted(composite, std::move(v));
    acc = acc.mul_real(yv) + ctx.eval(lifted);
  }
  return acc;
}

}  // namespace

std::optional<Integer> determine_winding(const Relation& rel, long digits) {
  for (int attempt = 0; attempt < 3; ++attempt, digits *= 2) {
    BigReal sum(digits_to_prec(digits));
    for (const auto& t : rel.terms)
      sum = sum + arg_eval(t.term, digits).mul_rational(Rational(t.coeff));
    BigReal ratio = sum / BigReal::pi(digits_to_prec(digits) + 16);
    Rational radius = ratio.radius_rational();
    if (!(radius < Rational(1, 4))) continue;
    auto t = ratio.unique_integer();
    if (t) return t;
  }
  return std::nullopt;
}

std::optional<CertifiedSign> certify_sign(const RingElement& e, long digits) {
  if (!(e.conjugate() == e))
    throw std::domain_error("certify_sign requires a conjugation-invariant element");
  if (e.is_zero()) return CertifiedSign::ZeroExact;
  for (int attempt = 0; attempt < 3; ++attempt, digits *= 2) {
    BigComplex v = embed(e, digits);
    if (v.real().certainly_positive()) return CertifiedSign::Positive;
    if (v.real().certainly_negative()) return CertifiedSign::Negative;
  }
  return std::nullopt;
}

Certificate verify_exact(const Relation& rel, const VerifyOptions& opts) {
  Certificate cert;
  if (rel.terms.empty()) {
    cert.note = "empty relation";
    cert.status = RelationStatus::Refuted;
    return cert;
  }
  const RingPtr ring = rel.terms.front().term.r.ring();
  cert.conductor = ring->conductor();
  cert.proven_field = ring->is_proven_field();
  if (ring->has_real_part()) cert.real_modulus = ring->real_modulus().to_string();

  // Rearranged products with nonnegative exponents only: the identity
  // prod c_i^(a_i) = prod conj(c_i)^(a_i) becomes lhs = rhs after moving
  // negative exponents across.
  RingElement lhs = ring->one(), rhs = ring->one();
  for (const auto& t : rel.terms) {
    VerificationPoint p = build_point(t.term, ring);
    Integer mag = abs(t.coeff);
    if (mag > 1000000) {
      cert.note = "relation coefficient too large for exact exponentiation";
      cert.status = RelationStatus::Unverified;
      return cert;
    }
    unsigned long e = mag.get_ui();
    if (t.coeff > 0) {
      lhs = lhs * p.c.pow(e);
      rhs = rhs * p.c_conj.pow(e);
    } else {
      lhs = lhs * p.c_conj.pow(e);
      rhs = rhs * p.c.pow(e);
    }
  }
  cert.lhs = lhs;
  cert.rhs = rhs;
  RingElement diff = lhs - rhs;

  bool realness_proven = false;
  if (diff.is_zero()) {
    realness_proven = true;
    cert.realness = Realness::ProvenExact;
  } else if (ring->is_proven_field()) {
    // In a field, nonzero coordinates certify a nonzero value: the product
    // is not real, so no integer winding exists.
    cert.realness = Realness::Failed;
    cert.status = RelationStatus::Refuted;
    cert.note = "conjugation identity fails exactly";
    return cert;
  } else {
    // Ring not proven a field. diff vanishes at the designated root of q
    // iff the designated root is a root of h = gcd_y(diff, q) over Q(zeta).
    // Split q = h * h2; exactly one of h, h2 vanishes at the root (q is
    // squarefree), so certified separation of the other decides.
    RingPtr cyclo = CompositeRing::cyclotomic(ring->conductor());
    CycloPoly diff_poly{y_slices(diff, cyclo)};
    CycloPoly qpoly;
    {
      const Poly& q = ring->real_modulus();
      qpoly.c.reserve(static_cast<std::size_t>(q.degree()) + 1);
      for (int i = 0; i <= q.degree(); ++i)
        qpoly.c.push_back(cyclo->from_rational(q.coeff(static_cast<std::size_t>(i))));
    }
    CycloPoly h = cp_gcd(qpoly, diff_poly);
    if (h.degree() <= 0) {
      // no common root at all: diff is nonzero at every root of q
      cert.realness = Realness::Failed;
      cert.status = RelationStatus::Refuted;
      cert.note = "no common root with the real modulus (exact gcd)";
      return cert;
    }
    CycloPoly h2 = cp_div_exact(qpoly, h);
    long digits = opts.digits;
    for (int attempt = 0; attempt <= opts.escalations && !realness_proven; ++attempt, digits *= 2) {
      BigComplex h_at = cp_eval_at_root(h, ring, digits);
      if (h_at.certainly_nonzero()) {
        // designated root is not a common root: diff(root) != 0
        cert.realness = Realness::Failed;
        cert.status = RelationStatus::Refuted;
        cert.note = "designated root certified outside the vanishing locus";
        return cert;
      }
      if (h2.degree() >= 0) {
        BigComplex h2_at = cp_eval_at_root(h2, ring, digits);
        if (h2_at.certainly_nonzero()) {
          // q(root)=0 and h2(root)!=0 force h(root)=0, hence diff(root)=0.
          realness_proven = true;
          cert.realness = Realness::ProvenNumericSeparation;
        }
      }
    }
    if (!realness_proven) {
      cert.realness = Realness::Failed;
      cert.status = RelationStatus::Unverified;
      cert.note = "separation inconclusive at escalation cap";
      return cert;
    }
  }

  // Realness proven: pin the winding integer and compare with the declared
  // target coefficient.
  long digits = opts.digits;
  auto winding = determine_winding(rel, digits);
  if (!winding) {
    cert.status = RelationStatus::Unverified;
    cert.note = "winding interval too wide at escalation cap";
    return cert;
  }
  cert.winding = *winding;
  cert.digits_used = digits;
  // residual |S - t pi| at the verification precision
  {
    BigReal sum(digits_to_prec(digits));
    for (const auto& t : rel.terms)
      sum = sum + arg_eval(t.term, digits).mul_rational(Rational(t.coeff));
    BigReal resid =
        (sum - BigReal::pi(digits_to_prec(digits) + 16).mul_rational(Rational(cert.winding)))
            .abs_val();
    cert.residual_upper = resid.abs_val().to_string(6);
  }
  if (cert.winding == rel.declared_winding()) {
    cert.status = RelationStatus::Verified;
  } else {
    cert.status = RelationStatus::Refuted;
    std::ostringstream os;
    os << "winding " << cert.winding.get_str() << " contradicts declared "
       << rel.declared_winding().get_str();
    cert.note = os.str();
  }
  return cert;
}

}  // namespace bbp
