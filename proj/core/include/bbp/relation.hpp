#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbp/formula.hpp"
#include "bbp/poly.hpp"

namespace bbp {

/// Built-in named constants that can be injected as search targets.
struct NamedConstant {
  enum class Kind { Pi } kind = Kind::Pi;
  BigReal eval(long digits) const;
  std::string name() const;
  bool operator==(const NamedConstant& o) const { return kind == o.kind; }
};

/// How the radius r is specified: an exact rational in (0, 1), or the
/// minimal polynomial of r together with an isolating interval for the
/// designated real root.
struct RadiusSpec {
  std::optional<Rational> rational;
  std::optional<Poly> minpoly;
  std::optional<RationalInterval> interval;

  std::string to_string() const;
  bool operator==(const RadiusSpec& o) const;
};

/// Working ring plus the radius as an exact element of it. Quadratic radii
/// whose discriminant has squarefree part in {2, 3, 5} are lifted into a
/// pure cyclotomic field (a proven field, via the Gauss-sum square roots);
/// everything else lives in the composite ring Q[x,y]/(Phi_L, q).
struct ResolvedRadius {
  RingPtr ring;
  RingElement r;
  std::optional<unsigned> surd_d;  // set when the pure-cyclotomic path fired
};

/// Conductor is lcm(b, 4, c_r) with c_r in {1, 8, 12, 5} as demanded by the
/// radius; throws when the spec is malformed (no root in the interval, etc).
ResolvedRadius resolve_radius(const RadiusSpec& spec, long b);

enum class RelationStatus { Candidate, Verified, Refuted, Unverified };
std::string to_string(RelationStatus s);

struct RelationTerm {
  Integer coeff;  // nonzero
  CTBTerm term;
};

struct TargetTerm {
  Integer coeff;
  NamedConstant constant;
};

struct Provenance {
  Integer N{0};
  long digits = 0;
  Rational delta{3, 4};
};

/// Integer relation  sum_i coeff_i * x_i + sum_t coeff_t * target_t = 0
/// over the arguments x_i = arg(1 + r e^(i theta_i)) and injected targets.
struct Relation {
  std::vector<RelationTerm> terms;     // shared (r, b) across entries
  std::vector<TargetTerm> targets;
  Provenance provenance;
  RelationStatus status = RelationStatus::Candidate;

  long block() const { return terms.empty() ? 0 : terms.front().term.b; }
  /// Declared winding: the realness argument forces
  /// sum coeff_i arg_i = t * pi with t = -coeff(pi).
  Integer declared_winding() const;
  /// Dense coefficient vector (CTB slots 1..b/2-1, then targets).
  std::vector<Integer> dense_coeffs() const;
  /// Flips signs so the first nonzero coefficient is positive.
  void canonicalize();
  std::string key_string() const;
};

/// Linear combination of the relation's CTB vectors (the lemma's linearity):
/// a block-b formula whose value equals sum coeff_i * arg_eval(term_i).
BBPFormula combine(const Relation& rel);

}  // namespace bbp
