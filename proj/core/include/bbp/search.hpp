#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bbp/lattice.hpp"
#include "bbp/relation.hpp"
#include "bbp/verify.hpp"

namespace bbp {

struct SearchConfig {
  std::string label;
  RadiusSpec r_spec;
  long b = 0;
  Integer N = Integer("10000000000");  // 10^10
  std::vector<Integer> escalation;     // N values to run; empty means {N}
  long digits = 0;                     // 0: auto = 3 + ceil(log10 N) + 10
  Rational delta{3, 4};
  std::vector<NamedConstant> targets{NamedConstant{}};  // default {pi}
  Integer max_last{0};                 // 0: auto = floor(N^(1/4))
  std::size_t max_count = 32;
  Rational residual_threshold{1, 1000000};
  long verify_digits = 40;

  long auto_digits(const Integer& n) const;
};

/// One relation as it moves through the pipeline, with its verification
/// artifact and (for verified relations) the derived formula data.
struct RelationRecord {
  Relation relation;
  Certificate cert;
  Integer s{0};            // squared norm of the lattice vector (0 if derived)
  Rational residual;       // paper bound s/N + s*eps (0 if derived)
  bool derived = false;    // found by post-search derivation, not LLL
  std::string origin;      // "lll", "angle-sweep", "integer-extraction"

  bool verified() const { return cert.status == RelationStatus::Verified; }
  bool is_null() const;
};

struct RunResult {
  Integer N;
  long digits = 0;
  std::vector<RelationRecord> records;
  // post-dedup counts over verified relations
  std::size_t null_count = 0;          // independent verified null relations
  std::size_t target_count = 0;        // independent genuine target relations
  std::size_t integer_null_count = 0;  // nulls forming integer-coefficient formulas
  double seconds = 0;
};

struct SearchReport {
  SearchConfig config;
  std::string ring_description;
  bool proven_field = false;
  std::vector<RunResult> runs;
};

/// x_i = arg(1 + r e^(2 pi i a / b)) for a = 1..b/2-1 (closed form), then
/// the injected targets, each with radius <= 10^-digits.
std::vector<BigReal> compute_xs(const SearchConfig& cfg, const ResolvedRadius& rr, long digits);

/// Full pipeline for every N in the escalation profile.
SearchReport run_search(const SearchConfig& cfg);

/// Maximal linearly independent subset of the relations' integer coefficient
/// vectors (CTB slots then target slots), smaller Euclidean norm preferred,
/// then lexicographic order. Exact integer/rational rank computations.
std::vector<Relation> dedup(const std::vector<Relation>& rels);

/// Rank over Q of the dense coefficient vectors.
std::size_t rank_of(const std::vector<std::vector<Integer>>& vectors);

void print_report(std::ostream& os, const SearchReport& report);

/// Parseable single-line rendering of a relation (used in reports) and its
/// inverse. The radius/block context comes from the enclosing report.
std::string relation_line(const Relation& rel);
Relation parse_relation_line(const std::string& line, const ResolvedRadius& rr, long b);

}  // namespace bbp
