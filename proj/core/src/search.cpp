#include "bbp/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bbp {

long SearchConfig::auto_digits(const Integer& n) const {
  if (digits > 0) return digits;
  return 3 + static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) + 10;
}

bool RelationRecord::is_null() const {
  for (const auto& t : relation.targets)
    if (t.coeff != 0) return false;
  return true;
}

std::vector<BigReal> compute_xs(const SearchConfig& cfg, const ResolvedRadius& rr, long digits) {
  std::vector<BigReal> xs;
  xs.reserve(static_cast<std::size_t>(cfg.b / 2 - 1) + cfg.targets.size());
  for (long a = 1; a <= cfg.b / 2 - 1; ++a) {
    CTBTerm t = make_ctb_term(rr.r, cfg.b, a);
    xs.push_back(arg_eval(t, digits));
  }
  for (const auto& target : cfg.targets) xs.push_back(target.eval(digits));
  return xs;
}

std::size_t rank_of(const std::vector<std::vector<Integer>>& vectors) {
  if (vectors.empty()) return 0;
  std::size_t cols = vectors.front().size();
  std::vector<std::vector<Rational>> mat;
  mat.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<Rational> row(cols);
    for (std::size_t i = 0; i < cols; ++i) row[i] = Rational(v[i]);
    mat.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < mat.size(); ++col) {
    std::size_t piv = rank;
    while (piv < mat.size() && mat[piv][col] == 0) ++piv;
    if (piv == mat.size()) continue;
    std::swap(mat[rank], mat[piv]);
    for (std::size_t i = 0; i < mat.size(); ++i) {
      if (i == rank || mat[i][col] == 0) continue;
      Rational f = mat[i][col] / mat[rank][col];
      for (std::size_t j = col; j < cols; ++j) mat[i][j] -= f * mat[rank][j];
    }
    ++rank;
  }
  return rank;
}

namespace {

Integer norm2_of(const std::vector<Integer>& v) {
  Integer s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

bool lex_less(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Integer floor_fourth_root(const Integer& n) {
  Integer r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), 4);
  return r;
}

Relation relation_from_candidate(const Candidate& cand, const std::vector<CTBTerm>& terms,
                                 const std::vector<NamedConstant>& targets,
                                 const Provenance& prov) {
  Relation rel;
  rel.provenance = prov;
  const std::size_t nterms = terms.size();
  for (std::size_t i = 0; i < nterms; ++i)
    if (cand.coeffs[i] != 0) rel.terms.push_back({cand.coeffs[i], terms[i]});
  for (std::size_t j = 0; j < targets.size(); ++j) {
    Integer c = cand.coeffs[nterms + j];
    rel.targets.push_back({c, targets[j]});
  }
  rel.canonicalize();
  return rel;
}

// Continued-fraction convergents of x with denominator bound; returns the
// best (p, q) with |x - p/q| smallest among convergents.
std::vector<std::pair<Integer, Integer>> convergents(const Rational& x, const Integer& qmax) {
  std::vector<std::pair<Integer, Integer>> out;
  Integer p0 = 1, q0 = 0;
  Integer p1, q1 = 1;
  Rational rem = x;
  Integer a;
  mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
  p1 = a;
  out.emplace_back(p1, q1);
  Rational frac = rem - Rational(a);
  int guard = 0;
  while (frac != 0 && ++guard < 64) {
    rem = Rational(1) / frac;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num().get_mpz_t(), rem.get_den().get_mpz_t());
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax) break;
    out.emplace_back(p2, q2);
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    frac = rem - Rational(a);
  }
  return out;
}

}  // namespace

std::vector<Relation> dedup(const std::vector<Relation>& rels) {
  std::vector<Relation> sorted = rels;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Relation& a, const Relation& b) {
    auto da = a.dense_coeffs(), db = b.dense_coeffs();
    Integer na = norm2_of(da), nb = norm2_of(db);
    if (na != nb) return na < nb;
    return lex_less(da, db);
  });
  std::vector<Relation> kept;
  std::vector<std::vector<Integer>> vecs;
  for (const auto& r : sorted) {
    vecs.push_back(r.dense_coeffs());
    if (rank_of(vecs) == vecs.size())
      kept.push_back(r);
    else
      vecs.pop_back();
  }
  return kept;
}

namespace {

struct PipelineState {
  ResolvedRadius resolved;
  std::vector<CTBTerm> terms;
};

// Verified single-term rational-angle relations q*x_a = p*pi, detected by
// continued fractions of x_a / pi and then proven exactly.
void rational_angle_sweep(const SearchConfig& cfg, const PipelineState& st, long digits,
                          const Provenance& prov, std::vector<RelationRecord>& records,
                          std::set<std::string>& seen) {
  bool has_pi = false;
  std::size_t pi_slot = 0;
  for (std::size_t j = 0; j < cfg.targets.size(); ++j)
    if (cfg.targets[j].kind == NamedConstant::Kind::Pi) {
      has_pi = true;
      pi_slot = j;
    }
  if (!has_pi) return;
  BigReal pi_val = NamedConstant{}.eval(digits);
  const Integer qmax(4 * cfg.b);
  for (const auto& term : st.terms) {
    BigReal x = arg_eval(term, digits);
    BigReal ratio = x / pi_val;
    Rational center = ratio.center_rational();
    for (const auto& [p, q] : convergents(center, qmax)) {
      if (q <= 0 || p == 0) continue;
      // plausible only if |x/pi - p/q| is tiny
      Rational err = abs(center - Rational(p) / Rational(q));
      if (err > Rational(Integer(1), Integer("10000000000000"))) continue;
      Relation rel;
      rel.provenance = prov;
      rel.terms.push_back({q, term});
      for (std::size_t j = 0; j < cfg.targets.size(); ++j)
        rel.targets.push_back({j == pi_slot ? -p : Integer(0), cfg.targets[j]});
      rel.canonicalize();
      if (!seen.insert(rel.key_string()).second) break;
      Certificate cert = verify_exact(rel, {cfg.verify_digits, 2});
      rel.status = cert.status;
      RelationRecord rec;
      rec.relation = rel;
      rec.cert = cert;
      rec.derived = true;
      rec.origin = "angle-sweep";
      if (cert.status == RelationStatus::Verified) records.push_back(std::move(rec));
      break;  // only the best convergent per term
    }
  }
}

// Integer-coefficient null formulas hidden inside the verified null span:
// directions whose combined CTB vector is a rational multiple of 1 or of a
// single supported surd. Emits primitive generators and returns the total
// dimension found.
std::size_t integer_extraction(const SearchConfig& cfg, const PipelineState& st,
                               const std::vector<Relation>& verified_nulls,
                               const Provenance& prov, std::vector<RelationRecord>& records,
                               std::set<std::string>& seen) {
  if (verified_nulls.empty()) return 0;
  const RingPtr& ring = st.resolved.ring;
  const std::size_t k = verified_nulls.size();
  const std::size_t slots = static_cast<std::size_t>(cfg.b / 2 - 1);

  // Combined CTB vectors of the null basis.
  std::vector<std::vector<RingElement>> combined;
  combined.reserve(k);
  for (const auto& rel : verified_nulls) combined.push_back(combine(rel).coeffs);

  std::size_t total_dim = 0;
  std::vector<std::optional<RingElement>> families;
  families.emplace_back(std::nullopt);  // rational family
  for (unsigned d : ring->supported_surds()) families.emplace_back(ring->sqrt_surd(d));

  for (const auto& family : families) {
    // Residual map: coordinates of each entry after projecting off the
    // family span. Solve for mu in Q^k with sum mu_i residual_i = 0.
    const std::size_t dim = ring->dimension();
    std::size_t pivot = 0;  // coordinate used to cancel the family component
    Rational pivot_val(1);
    if (family) {
      const auto& sc = family->coords();
      pivot = 0;
      bool found = false;
      for (std::size_t i = 1; i < sc.size(); ++i)
        if (sc[i] != 0) {
          pivot = i;
          pivot_val = sc[i];
          found = true;
          break;
        }
      if (!found) continue;
    }
    // rows: one per (entry j, coordinate c != pivot-ish); columns: k
    std::vector<std::vector<Rational>> mat;
    for (std::size_t j = 0; j < static_cast<std::size_t>(cfg.b); ++j) {
      for (std::size_t c = 0; c < dim; ++c) {
        std::vector<Rational> row(k);
        bool nonzero = false;
        for (std::size_t i = 0; i < k; ++i) {
          const auto& coords = combined[i][j].coords();
          Rational val = coords[c];
          if (family) {
            Rational gamma = coords[pivot] / pivot_val;
            val -= gamma * family->coords()[c];
          } else {
            if (c == 0) val = 0;  // rational family: constant slot is free
          }
          row[i] = val;
          if (val != 0) nonzero = true;
        }
        if (family && c == pivot) continue;
        if (nonzero) mat.push_back(std::move(row));
      }
    }
    // kernel of mat (columns = k) over Q
    std::vector<std::vector<Rational>> m = mat;
    std::vector<long> pivot_col(k, -1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < k && r < m.size(); ++col) {
      std::size_t piv = r;
      while (piv < m.size() && m[piv][col] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[r], m[piv]);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == r || m[i][col] == 0) continue;
        Rational f = m[i][col] / m[r][col];
        for (std::size_t j2 = 0; j2 < k; ++j2) m[i][j2] -= f * m[r][j2];
      }
      pivot_col[col] = static_cast<long>(r);
      ++r;
    }
    // free columns parameterize the kernel
    for (std::size_t free_col = 0; free_col < k; ++free_col) {
      if (pivot_col[free_col] >= 0) continue;
      std::vector<Rational> mu(k, Rational(0));
      mu[free_col] = 1;
      for (std::size_t col = 0; col < k; ++col) {
        if (pivot_col[col] < 0) continue;
        std::size_t prow = static_cast<std::size_t>(pivot_col[col]);
        if (m[prow][free_col] != 0) mu[col] = -m[prow][free_col] / m[prow][col];
      }
      // w = sum mu_i v_i over the dense CTB slots, scaled primitive
      std::vector<Rational> w(slots, Rational(0));
      for (std::size_t i = 0; i < k; ++i) {
        if (mu[i] == 0) continue;
        auto dense = verified_nulls[i].dense_coeffs();
        for (std::size_t j = 0; j < slots; ++j) w[j] += mu[i] * Rational(dense[j]);
      }
      Integer den = 1;
      for (const auto& q2 : w) den = int_lcm(den, q2.get_den());
      std::vector<Integer> wi(slots);
      for (std::size_t j = 0; j < slots; ++j)
        wi[j] = Rational(w[j] * Rational(den)).get_num();
      Integer g = vector_gcd(wi);
      if (g == 0) continue;
      for (auto& x : wi) x /= g;
      ++total_dim;
      Relation rel;
      rel.provenance = prov;
      for (std::size_t j = 0; j < slots; ++j)
        if (wi[j] != 0) rel.terms.push_back({wi[j], st.terms[j]});
      for (const auto& t : cfg.targets) rel.targets.push_back({Integer(0), t});
      rel.canonicalize();
      if (!seen.insert(rel.key_string()).second) continue;
      Certificate cert = verify_exact(rel, {cfg.verify_digits, 2});
      rel.status = cert.status;
      RelationRecord rec;
      rec.relation = rel;
      rec.cert = cert;
      rec.derived = true;
      rec.origin = "integer-extraction";
      records.push_back(std::move(rec));
    }
  }
  return total_dim;
}

RunResult run_one(const SearchConfig& cfg, const PipelineState& st, const Integer& N) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult run;
  run.N = N;
  run.digits = cfg.auto_digits(N);
  Provenance prov{N, run.digits, cfg.delta};

  std::vector<BigReal> xs = compute_xs(cfg, st.resolved, run.digits);
  RelationLattice lat = build_relation_lattice(xs, N);
  LLLResult red = lll_reduce(lat.rows(), cfg.delta);
  Integer eff_max_last = cfg.max_last > 0 ? cfg.max_last : floor_fourth_root(N);
  auto cands = extract_candidates(red.basis, eff_max_last, cfg.max_count);

  std::set<std::string> seen;
  for (const auto& cand : cands) {
    Rational bound = residual_bound(cand, N, lat.epsilon);
    if (!(bound < cfg.residual_threshold)) continue;
    Relation rel = relation_from_candidate(cand, st.terms, cfg.targets, prov);
    if (rel.terms.empty()) continue;  // pure-target rows carry no content
    if (!seen.insert(rel.key_string()).second) continue;
    RelationRecord rec;
    rec.relation = rel;
    rec.s = cand.s;
    rec.residual = bound;
    rec.origin = "lll";
    rec.cert = verify_exact(rel, {cfg.verify_digits, 2});
    rec.relation.status = rec.cert.status;
    run.records.push_back(std::move(rec));
  }

  // Post-search derivations over the verified set.
  std::vector<Relation> verified_nulls;
  for (const auto& rec : run.records)
    if (rec.verified() && rec.is_null()) verified_nulls.push_back(rec.relation);
  rational_angle_sweep(cfg, st, run.digits, prov, run.records, seen);
  run.integer_null_count =
      integer_extraction(cfg, st, dedup(verified_nulls), prov, run.records, seen);

  // Counts over the final verified set.
  std::vector<Relation> all_verified, nulls;
  for (const auto& rec : run.records)
    if (rec.verified()) {
      all_verified.push_back(rec.relation);
      if (rec.is_null()) nulls.push_back(rec.relation);
    }
  std::vector<std::vector<Integer>> null_vecs, all_vecs;
  for (const auto& r : nulls) null_vecs.push_back(r.dense_coeffs());
  for (const auto& r : all_verified) all_vecs.push_back(r.dense_coeffs());
  run.null_count = rank_of(null_vecs);
  run.target_count = rank_of(all_vecs) - run.null_count;

  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

}  // namespace

SearchReport run_search(const SearchConfig& cfg) {
  if (cfg.b < 4 || cfg.b % 2 != 0)
    throw std::invalid_argument("search needs an even block length b >= 4");
  SearchReport report;
  report.config = cfg;
  PipelineState st;
  st.resolved = resolve_radius(cfg.r_spec, cfg.b);
  report.ring_description = st.resolved.ring->describe();
  report.proven_field = st.resolved.ring->is_proven_field();
  for (long a = 1; a <= cfg.b / 2 - 1; ++a)
    st.terms.push_back(make_ctb_term(st.resolved.r, cfg.b, a));
  std::vector<Integer> ns = cfg.escalation.empty() ? std::vector<Integer>{cfg.N} : cfg.escalation;
  for (const auto& n : ns) report.runs.push_back(run_one(cfg, st, n));
  return report;
}

std::string relation_line(const Relation& rel) {
  std::ostringstream os;
  os << "rel:";
  for (const auto& t : rel.terms) {
    os << " " << (t.coeff > 0 ? "+" : "") << t.coeff.get_str() << "*x[" << t.term.a << "]";
  }
  for (const auto& t : rel.targets) {
    if (t.coeff == 0) continue;
    os << " " << (t.coeff > 0 ? "+" : "") << t.coeff.get_str() << "*" << t.constant.name();
  }
  os << " = 0";
  return os.str();
}

Relation parse_relation_line(const std::string& line, const ResolvedRadius& rr, long b) {
  auto pos = line.find("rel:");
  if (pos == std::string::npos) throw std::invalid_argument("not a relation line");
  std::istringstream is(line.substr(pos + 4));
  Relation rel;
  std::string tok;
  while (is >> tok) {
    if (tok == "=") break;
    auto star = tok.find('*');
    if (star == std::string::npos) throw std::invalid_argument("bad relation token: " + tok);
    Integer coeff(tok.substr(0, star));
    std::string what = tok.substr(star + 1);
    if (what == "pi") {
      rel.targets.push_back({coeff, NamedConstant{}});
    } else if (what.rfind("x[", 0) == 0 && what.back() == ']') {
      long a = std::stol(what.substr(2, what.size() - 3));
      rel.terms.push_back({coeff, make_ctb_term(rr.r, b, a)});
    } else {
      throw std::invalid_argument("bad relation token: " + tok);
    }
  }
  if (rel.targets.empty()) rel.targets.push_back({Integer(0), NamedConstant{}});
  return rel;
}

void print_report(std::ostream& os, const SearchReport& report) {
  const auto& cfg = report.config;
  os << "# search " << (cfg.label.empty() ? "(unlabeled)" : cfg.label) << "\n";
  os << "r = " << cfg.r_spec.to_string() << ", b = " << cfg.b << "\n";
  os << "ring: " << report.ring_description
     << (report.proven_field ? " (proven field)" : " (field not proven)") << "\n";
  for (const auto& run : report.runs) {
    os << "## N = " << run.N.get_str() << ", digits = " << run.digits << ", delta = "
       << cfg.delta.get_str() << "  [" << run.seconds << " s]\n";
    for (const auto& rec : run.records) {
      os << "  " << relation_line(rec.relation) << "   status=" << to_string(rec.cert.status);
      if (rec.verified()) {
        os << " t=" << rec.cert.winding.get_str() << " realness=" << to_string(rec.cert.realness);
      } else if (!rec.cert.note.empty()) {
        os << " (" << rec.cert.note << ")";
      }
      if (rec.derived) os << " [" << rec.origin << "]";
      os << "\n";
    }
    os << "  verified null relations (independent): " << run.null_count << "\n";
    os << "  verified target relations: " << run.target_count << "\n";
    os << "  integer-coefficient null formulas: " << run.integer_null_count << "\n";
  }
}

}  // namespace bbp
