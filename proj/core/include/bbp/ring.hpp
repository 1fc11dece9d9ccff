#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bbp/poly.hpp"
#include "bbp/rational.hpp"

namespace bbp {

struct RationalInterval {
  Rational lo, hi;
};

class RingElement;
class CompositeRing;
using RingPtr = std::shared_ptr<const CompositeRing>;

/// Quotient ring Q[x, y] / (Phi_L(x), q(y)): the L-th cyclotomic field,
/// optionally extended by a squarefree real modulus q whose designated real
/// root is isolated by a rational interval. When q is absent the ring is the
/// cyclotomic field itself. Immutable after construction and safe to share.
class CompositeRing : public std::enable_shared_from_this<CompositeRing> {
 public:
  /// Pure cyclotomic field of conductor L (L = 1 gives the rationals).
  static RingPtr cyclotomic(unsigned long L);

  /// Composite ring with real modulus q; q must be squarefree with exactly
  /// one real root inside root_interval, and the interval must lie in [0, 1].
  static RingPtr composite(unsigned long L, Poly q, RationalInterval root_interval);

  unsigned long conductor() const { return conductor_; }
  const Poly& cyclo_modulus() const { return cyclo_modulus_; }
  unsigned cyclo_degree() const { return cyclo_degree_; }

  bool has_real_part() const { return real_modulus_.has_value(); }
  const Poly& real_modulus() const;
  unsigned real_degree() const { return real_degree_; }
  const RationalInterval& root_interval() const;

  /// True when the ring is provably a field: pure cyclotomic, deg q = 1, or
  /// deg q >= 2 coprime to phi(L) with q known irreducible over Q.
  bool is_proven_field() const { return is_proven_field_; }

  /// Squarefree d in {2, 3, 5} whose square root this conductor can express.
  std::vector<unsigned> supported_surds() const;

  bool same_ring(const CompositeRing& o) const;

  // Element factories.
  RingElement zero() const;
  RingElement one() const;
  RingElement from_rational(const Rational& q) const;
  RingElement zeta_pow(long k) const;  // zeta_L^k, any integer k
  RingElement y() const;               // the designated root of q
  /// Element whose square is d and whose embedding is the positive root.
  /// Requires 8 | L for d = 2, 12 | L for d = 3, 5 | L for d = 5.
  RingElement sqrt_surd(unsigned d) const;

  /// Total Q-dimension phi(L) * deg q.
  std::size_t dimension() const { return cyclo_degree_ * real_degree_; }

  std::string describe() const;

 private:
  CompositeRing() = default;
  void build_tables();

  unsigned long conductor_ = 1;
  Poly cyclo_modulus_;
  unsigned cyclo_degree_ = 1;
  std::optional<Poly> real_modulus_;
  unsigned real_degree_ = 1;
  std::optional<RationalInterval> root_interval_;
  bool is_proven_field_ = true;

  // zeta_table_[k] = coordinates of x^k mod Phi_L for k in [0, max(L, 2*phi)).
  std::vector<std::vector<Rational>> zeta_table_;
  // y_table_[k] = coordinates of y^k mod q for k in [0, 2*deg q).
  std::vector<std::vector<Rational>> y_table_;

  friend class RingElement;
};

/// Exact element of a CompositeRing: dense rational coordinate matrix over
/// the basis zeta^i y^j (i < phi(L), j < deg q). Arithmetic is closed, with
/// results reduced modulo both moduli.
class RingElement {
 public:
  RingElement() = default;
  RingElement(RingPtr ring, std::vector<Rational> coords);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& coord(std::size_t zeta_pow, std::size_t y_pow) const;

  bool is_zero() const;
  bool operator==(const RingElement& o) const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;
  RingElement mul_rational(const Rational& s) const;
  RingElement pow(unsigned long k) const;

  /// The ring automorphism zeta -> zeta^(L-1), y -> y (complex conjugation
  /// under the designated embedding, which fixes the real root of q).
  RingElement conjugate() const;

  /// Exact rational value when the element is a rational constant.
  std::optional<Rational> as_rational() const;

  /// Multiplicative inverse; only available in the pure cyclotomic field
  /// (extended Euclid against Phi_L). Throws in composite rings.
  RingElement inverse_cyclotomic() const;

  /// Re-express in a larger-conductor ring (conductor divisible by ours,
  /// same real modulus).
  RingElement extend_to(const RingPtr& bigger) const;

  std::string to_string() const;

 private:
  void check_same_ring(const RingElement& o) const;
  RingPtr ring_;
  std::vector<Rational> coords_;
};

}  // namespace bbp
