#pragma once

#include <optional>
#include <string>

#include "bbp/relation.hpp"

namespace bbp {

/// One algebraic point of a candidate identity: c = 1 + r zeta_b^a together
/// with its precomputed conjugate.
struct VerificationPoint {
  CTBTerm term;
  RingElement c;
  RingElement c_conj;
};

VerificationPoint build_point(const CTBTerm& t, const RingPtr& ring);

enum class Realness { ProvenExact, ProvenNumericSeparation, Failed };
std::string to_string(Realness r);

/// Exact verification artifact. `status` is Verified only when realness was
/// proven (exactly, or through certified cofactor separation in a ring not
/// proven to be a field) and the winding integer was pinned with interval
/// radius below 1/4 and matches the declared target coefficient.
struct Certificate {
  RelationStatus status = RelationStatus::Unverified;
  Realness realness = Realness::Failed;
  Integer winding{0};
  std::string residual_upper;   // decimal bound on |sum coeff*arg - t*pi|
  long digits_used = 0;
  // rearranged products: identity is lhs = rhs with nonnegative exponents
  RingElement lhs, rhs;
  // ring provenance
  unsigned long conductor = 0;
  std::string real_modulus;     // empty for pure cyclotomic
  bool proven_field = false;
  std::string note;

  std::string digest() const;   // deterministic 64-bit FNV-1a hex
};

struct VerifyOptions {
  long digits = 40;        // initial precision for winding / separation
  int escalations = 2;     // extra doublings (cap 4x initial per escalation step)
};

/// Reduces the identity to conjugation invariance of the rearranged products
/// (only nonnegative exponents, so no inverses are needed), proves or
/// refutes it exactly where the ring structure allows, and otherwise falls
/// back to certified numeric separation. Never overclaims: an undecided
/// candidate ends Unverified.
Certificate verify_exact(const Relation& rel, const VerifyOptions& opts = {});

/// Winding integer: S = sum coeff_i arg_eval(term_i) as an interval,
/// t = the unique integer with S = t*pi, requiring radius(S/pi) < 1/4.
/// Escalates digits (x2, cap 4x) and returns nullopt when still ambiguous.
std::optional<Integer> determine_winding(const Relation& rel, long digits);

enum class CertifiedSign { Positive, Negative, ZeroExact };

/// Sign of a proven-real element through interval separation; requires the
/// element to be conjugation-invariant (checked exactly). Returns nullopt
/// when separation fails within the escalation cap.
std::optional<CertifiedSign> certify_sign(const RingElement& e, long digits);

}  // namespace bbp
