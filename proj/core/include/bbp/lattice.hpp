#pragma once

#include <vector>

#include "bbp/bigreal.hpp"
#include "bbp/rational.hpp"

namespace bbp {

using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

/// Relation lattice of the search: rows (0,..,1,..,0, m_i) with
/// m_i = [N x_i], the nearest integer (ties toward even), plus the recorded
/// scale N and the worst approximation radius epsilon.
struct RelationLattice {
  std::size_t n = 0;  // number of x values; lattice lives in Z^(n+1)
  IntVec m;
  Integer N;
  Rational epsilon;   // max radius of the inputs

  IntMat rows() const;
};

/// Requires N >= 2 and every radius strictly below 1/(2N) so the rounding is
/// unambiguous; throws std::domain_error otherwise.
RelationLattice build_relation_lattice(const std::vector<BigReal>& xs, const Integer& N);

struct LLLResult {
  IntMat basis;      // reduced rows
  IntMat transform;  // unimodular U with U * input = basis
};

/// Exact integral LLL (de Weger / Cohen) with Lovasz parameter delta in
/// (1/4, 1). Throws std::invalid_argument on dependent input rows.
LLLResult lll_reduce(const IntMat& rows, const Rational& delta);

/// Exact post-hoc checks on a claimed reduced basis (rational arithmetic).
bool is_size_reduced(const IntMat& rows);
bool satisfies_lovasz(const IntMat& rows, const Rational& delta);
/// Determinant of a square integer matrix (fraction-free elimination).
Integer det_integer(const IntMat& m);

/// Exact shortest nonzero vector squared norm by Fincke-Pohst enumeration
/// over the given basis (intended for small dimensions).
Integer shortest_vector_norm2(const IntMat& rows);

struct Candidate {
  IntVec coeffs;   // a_1..a_n (not all zero)
  Integer last;    // sum a_i m_i
  Integer s;       // squared norm of the full lattice vector
};

/// Reduced-basis rows with |last| <= max_last, sorted by s ascending, each
/// normalized so the first nonzero coefficient is positive; at most
/// max_count entries.
std::vector<Candidate> extract_candidates(const IntMat& reduced, const Integer& max_last,
                                          std::size_t max_count);

/// The paper's filter bound: s/N + s*eps >= |sum a_i x_i|.
Rational residual_bound(const Candidate& c, const Integer& N, const Rational& eps);

}  // namespace bbp
