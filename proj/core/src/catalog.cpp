#include "bbp/catalog.hpp"

#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bbp {

using nlohmann::json;

std::string CatalogEntry::canonical_key() const {
  std::ostringstream os;
  os << base.to_string() << "|b=" << b;
  for (const auto& [a, c] : coeffs) os << "|" << c.get_str() << "@a" << a;
  for (const auto& [nm, c] : targets)
    if (c != 0) os << "|" << c.get_str() << "*" << nm;
  return os.str();
}

Relation CatalogEntry::to_relation(const ResolvedRadius& rr) const {
  Relation rel;
  for (const auto& [a, c] : coeffs) rel.terms.push_back({c, make_ctb_term(rr.r, b, a)});
  for (const auto& [nm, c] : targets) {
    if (nm != "pi") throw std::invalid_argument("unknown target constant: " + nm);
    rel.targets.push_back({c, NamedConstant{}});
  }
  rel.provenance = Provenance{N, digits, delta};
  return rel;
}

namespace {

json radius_to_json(const RadiusSpec& r) {
  json j;
  if (r.rational) {
    j["rational"] = r.rational->get_str();
  } else {
    j["minpoly"] = r.minpoly->to_string();
    j["interval"] = {r.interval->lo.get_str(), r.interval->hi.get_str()};
  }
  return j;
}

RadiusSpec radius_from_json(const json& j) {
  RadiusSpec r;
  if (j.contains("rational")) {
    r.rational = parse_rational(j.at("rational").get<std::string>());
  } else {
    r.minpoly = Poly::from_string(j.at("minpoly").get<std::string>());
    r.interval = RationalInterval{parse_rational(j.at("interval").at(0).get<std::string>()),
                                  parse_rational(j.at("interval").at(1).get<std::string>())};
  }
  return r;
}

json entry_to_json(const CatalogEntry& e) {
  json j;
  j["id"] = e.id;
  j["base"] = radius_to_json(e.base);
  j["b"] = e.b;
  json coeffs = json::array();
  for (const auto& [a, c] : e.coeffs) coeffs.push_back({{"a", a}, {"coeff", c.get_str()}});
  j["relation"] = coeffs;
  json targets = json::array();
  for (const auto& [nm, c] : e.targets) targets.push_back({{"name", nm}, {"coeff", c.get_str()}});
  j["targets"] = targets;
  j["status"] = e.status;
  j["realness"] = e.realness;
  j["winding"] = e.winding.get_str();
  j["derived"] = e.derived;
  j["origin"] = e.origin;
  j["reduced"] = {{"block", e.reduced_block}, {"base_sign", e.reduced_sign}};
  if (e.integerizable) {
    json vec = json::array();
    for (const auto& v : e.integer_vector) vec.push_back(v.get_str());
    j["integerized"] = {{"lambda", e.lambda}, {"vector", vec}};
  } else {
    j["integerized"] = nullptr;
  }
  j["certificate"] = {{"digest", e.certificate_digest},
                      {"residual_upper", e.residual_upper},
                      {"conductor", e.conductor},
                      {"real_modulus", e.real_modulus},
                      {"proven_field", e.proven_field}};
  j["provenance"] = {{"N", e.N.get_str()},
                     {"digits", e.digits},
                     {"delta", e.delta.get_str()},
                     {"tool_version", e.tool_version}};
  return j;
}

CatalogEntry entry_from_json(const json& j) {
  CatalogEntry e;
  e.id = j.at("id").get<long>();
  e.base = radius_from_json(j.at("base"));
  e.b = j.at("b").get<long>();
  for (const auto& t : j.at("relation"))
    e.coeffs.emplace_back(t.at("a").get<long>(), Integer(t.at("coeff").get<std::string>()));
  for (const auto& t : j.at("targets"))
    e.targets.emplace_back(t.at("name").get<std::string>(),
                           Integer(t.at("coeff").get<std::string>()));
  e.status = j.at("status").get<std::string>();
  e.realness = j.at("realness").get<std::string>();
  e.winding = Integer(j.at("winding").get<std::string>());
  e.derived = j.at("derived").get<bool>();
  e.origin = j.at("origin").get<std::string>();
  e.reduced_block = j.at("reduced").at("block").get<long>();
  e.reduced_sign = j.at("reduced").at("base_sign").get<int>();
  if (!j.at("integerized").is_null()) {
    e.integerizable = true;
    e.lambda = j.at("integerized").at("lambda").get<std::string>();
    for (const auto& v : j.at("integerized").at("vector"))
      e.integer_vector.emplace_back(v.get<std::string>());
  }
  const auto& cert = j.at("certificate");
  e.certificate_digest = cert.at("digest").get<std::string>();
  e.residual_upper = cert.at("residual_upper").get<std::string>();
  e.conductor = cert.at("conductor").get<unsigned long>();
  e.real_modulus = cert.at("real_modulus").get<std::string>();
  e.proven_field = cert.at("proven_field").get<bool>();
  const auto& prov = j.at("provenance");
  e.N = Integer(prov.at("N").get<std::string>());
  e.digits = prov.at("digits").get<long>();
  e.delta = parse_rational(prov.at("delta").get<std::string>());
  e.tool_version = prov.at("tool_version").get<std::string>();
  return e;
}

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

CatalogEntry entry_from_record(const SearchConfig& cfg, const Integer& N, long digits,
                               const RelationRecord& rec) {
  CatalogEntry e;
  e.base = cfg.r_spec;
  e.b = cfg.b;
  for (const auto& t : rec.relation.terms) e.coeffs.emplace_back(t.term.a, t.coeff);
  for (const auto& t : rec.relation.targets) e.targets.emplace_back(t.constant.name(), t.coeff);
  e.status = to_string(rec.cert.status);
  e.realness = to_string(rec.cert.realness);
  e.winding = rec.cert.winding;
  e.derived = rec.derived;
  e.origin = rec.origin.empty() ? "lll" : rec.origin;
  e.certificate_digest = rec.cert.digest();
  e.residual_upper = rec.cert.residual_upper;
  e.conductor = rec.cert.conductor;
  e.real_modulus = rec.cert.real_modulus;
  e.proven_field = rec.cert.proven_field;
  e.N = N;
  e.digits = digits;
  e.delta = cfg.delta;

  if (rec.cert.status == RelationStatus::Verified && !rec.relation.terms.empty()) {
    BBPFormula combined = combine(rec.relation);
    auto [reduced, info] = reduce_block(combined);
    e.reduced_block = info.block;
    e.reduced_sign = info.sign;
    IntegerizeResult integ = integerize(combined);
    if (integ.ok) {
      e.integerizable = true;
      e.lambda = integ.lambda.to_string();
      e.integer_vector = std::move(integ.vec);
    }
  } else {
    e.reduced_block = cfg.b;
  }
  return e;
}

std::size_t Catalog::append_report(const SearchReport& report) {
  std::size_t added = 0;
  long next_id = 1;
  for (const auto& e : entries) next_id = std::max(next_id, e.id + 1);
  std::vector<std::string> keys;
  keys.reserve(entries.size());
  for (const auto& e : entries) keys.push_back(e.canonical_key());
  for (const auto& run : report.runs) {
    for (const auto& rec : run.records) {
      if (rec.cert.status != RelationStatus::Verified) continue;
      CatalogEntry e = entry_from_record(report.config, run.N, run.digits, rec);
      std::string key = e.canonical_key();
      if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
      e.id = next_id++;
      keys.push_back(std::move(key));
      entries.push_back(std::move(e));
      ++added;
    }
  }
  if (created.empty()) created = now_iso8601();
  return added;
}

const CatalogEntry* Catalog::find(long id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

bool entries_equal(const CatalogEntry& a, const CatalogEntry& b) {
  return entry_to_json(a) == entry_to_json(b);
}

bool catalogs_equal(const Catalog& a, const Catalog& b) {
  if (a.schema_version != b.schema_version || a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (!entries_equal(a.entries[i], b.entries[i])) return false;
  return true;
}

std::string serialize_catalog(const Catalog& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["metadata"] = {{"created", c.created}, {"tool_version", kToolVersion}};
  json arr = json::array();
  for (const auto& e : c.entries) arr.push_back(entry_to_json(e));
  j["entries"] = arr;
  return j.dump(2) + "\n";
}

Catalog parse_catalog(const std::string& text) {
  json j = json::parse(text);
  Catalog c;
  c.schema_version = j.at("schema_version").get<int>();
  if (c.schema_version != kCatalogSchemaVersion)
    throw std::runtime_error("unsupported catalog schema version");
  if (j.contains("metadata") && j.at("metadata").contains("created"))
    c.created = j.at("metadata").at("created").get<std::string>();
  for (const auto& je : j.at("entries")) c.entries.push_back(entry_from_json(je));
  return c;
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) return Catalog{};
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

void save_catalog(const Catalog& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write catalog: " + path);
  out << serialize_catalog(c);
}

namespace {

std::string base_power_string(const CatalogEntry& e, long block) {
  // |base| = r^-block; print the exact integer when r is rational.
  ResolvedRadius rr = resolve_radius(e.base, e.b);
  RingElement rpow = rr.r.pow(static_cast<unsigned long>(block));
  auto q = rpow.as_rational();
  if (q && q->get_num() == 1) return Rational(Rational(1) / *q).get_num().get_str();
  std::ostringstream os;
  os << "r^-" << block;
  return os.str();
}

std::string winding_side(const Integer& t, unsigned surd_d) {
  std::ostringstream os;
  if (t == 0) {
    os << "0";
    return os.str();
  }
  std::string pi = "pi";
  if (surd_d != 1) pi = "sqrt(" + std::to_string(surd_d) + ")*pi";
  if (t == 1) return pi;
  if (t == -1) return "-" + pi;
  os << t.get_str() << "*" << pi;
  return os.str();
}

}  // namespace

std::string expand_entry(const CatalogEntry& entry) {
  if (!entry.integerizable)
    throw std::runtime_error("entry is not integerizable; no single-vector integer form");
  // value of the relation combination is t*pi; lambda * A = integer vector,
  // so t*pi * lambda = BBP(integer vector). Multiply both sides by sqrt(d)
  // when lambda carries a surd so the printed scalar is rational.
  ResolvedRadius rr = resolve_radius(entry.base, entry.b);
  Relation rel = entry.to_relation(rr);
  BBPFormula combined = combine(rel);
  IntegerizeResult integ = integerize(combined);
  if (!integ.ok) throw std::runtime_error("integerization failed unexpectedly");
  std::ostringstream os;
  // lhs: winding side scaled by sqrt(d) if needed; rhs: lambda^-1-ish scalar.
  // value = t*pi and BBP(vec) = lambda * value; with lambda = c*sqrt(d) the
  // identity is sqrt(d)*t*pi = (1/c) * BBP(vec).
  SurdScalar lam = integ.lambda;
  Integer t = entry.winding;
  std::string lhs = winding_side(t, lam.d);
  Rational scalar = Rational(1) / lam.rat;
  os << lhs << " = ";
  if (t != 0 && scalar != 1) os << scalar.get_str() << " * ";
  os << "BBP(1," << base_power_string(entry, entry.b) << "," << entry.b << ",(";
  for (std::size_t i = 0; i < integ.vec.size(); ++i) {
    if (i) os << ",";
    os << integ.vec[i].get_str();
  }
  os << "))";
  return os.str();
}

std::string ctb_form(const CatalogEntry& entry) {
  std::ostringstream os;
  // leading scalar: the integerizing lambda when available, else 1
  ResolvedRadius rr = resolve_radius(entry.base, entry.b);
  Relation rel = entry.to_relation(rr);
  unsigned surd = 1;
  std::string lead;
  if (entry.integerizable) {
    BBPFormula combined = combine(rel);
    IntegerizeResult integ = integerize(combined);
    surd = integ.lambda.d;
    lead = integ.lambda.to_string();
  }
  os << winding_side(entry.winding, surd) << " = ";
  if (!lead.empty() && lead != "1") os << lead << "*( ";
  std::string base = base_power_string(entry, entry.b);
  bool first = true;
  for (const auto& [a, c] : entry.coeffs) {
    if (!first)
      os << (c > 0 ? " + " : " - ");
    else if (c < 0)
      os << "-";
    first = false;
    Integer mag = abs(c);
    if (mag != 1) os << mag.get_str() << "*";
    os << "BBP(1," << base << "," << entry.b << ",CTB_" << entry.b << "(r," << a << "))";
  }
  if (!lead.empty() && lead != "1") os << " )";
  return os.str();
}

}  // namespace bbp
