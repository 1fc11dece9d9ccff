#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbp/search.hpp"

namespace bbp {

inline constexpr int kCatalogSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// One cataloged relation: everything needed to display, expand and
/// re-verify it. All exact quantities are serialized as strings.
struct CatalogEntry {
  long id = 0;
  RadiusSpec base;
  long b = 0;
  std::vector<std::pair<long, Integer>> coeffs;            // (a, coefficient)
  std::vector<std::pair<std::string, Integer>> targets;    // (name, coefficient)
  std::string status;
  std::string realness;
  Integer winding{0};
  bool derived = false;
  std::string origin;

  // combined-formula derivations (verified entries)
  long reduced_block = 0;
  int reduced_sign = 1;
  bool integerizable = false;
  std::string lambda;                   // e.g. "486*sqrt(3)"
  std::vector<Integer> integer_vector;  // lambda * A

  // certificate
  std::string certificate_digest;
  std::string residual_upper;
  unsigned long conductor = 0;
  std::string real_modulus;
  bool proven_field = false;

  // provenance
  Integer N{0};
  long digits = 0;
  Rational delta{3, 4};
  std::string tool_version = kToolVersion;

  std::string canonical_key() const;
  Relation to_relation(const ResolvedRadius& rr) const;
};

struct Catalog {
  int schema_version = kCatalogSchemaVersion;
  std::string created;  // ISO-8601; excluded from equality
  std::vector<CatalogEntry> entries;

  /// Appends entries for the verified relations of a report, skipping
  /// canonical duplicates. Returns the number added.
  std::size_t append_report(const SearchReport& report);
  const CatalogEntry* find(long id) const;
};

bool entries_equal(const CatalogEntry& a, const CatalogEntry& b);
bool catalogs_equal(const Catalog& a, const Catalog& b);  // ignores `created`

std::string serialize_catalog(const Catalog& c);
Catalog parse_catalog(const std::string& json_text);
Catalog load_catalog(const std::string& path);     // empty catalog if absent
void save_catalog(const Catalog& c, const std::string& path);

/// Builds a catalog entry from a verified pipeline record (computes the
/// combined formula, integerization and block reduction).
CatalogEntry entry_from_record(const SearchConfig& cfg, const Integer& N, long digits,
                               const RelationRecord& rec);

/// Single-vector expanded form, paper display style:
///   "sqrt(3)*pi = 9/4096 * BBP(1,4096,24,(2048,...))"
/// Returns the display string; throws if the entry is not integerizable and
/// cti_form is false.
std::string expand_entry(const CatalogEntry& entry);

/// CTB combination display, e.g.
///   "0 = 4096*( BBP(1,4096,24,CTB_24(r,5)) - BBP(1,4096,24,CTB_24(r,11)) )".
std::string ctb_form(const CatalogEntry& entry);

}  // namespace bbp
