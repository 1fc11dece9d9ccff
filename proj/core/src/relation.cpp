#include "bbp/relation.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bbp {

BigReal NamedConstant::eval(long digits) const {
  switch (kind) {
    case Kind::Pi: {
      mpfr_prec_t prec = digits_to_prec(digits) + 16;
      return BigReal::pi(prec);
    }
  }
  throw std::logic_error("unknown constant");
}

std::string NamedConstant::name() const { return "pi"; }

std::string RadiusSpec::to_string() const {
  if (rational) return rational->get_str();
  std::ostringstream os;
  os << "root of " << minpoly->to_string() << " in [" << interval->lo.get_str() << ", "
     << interval->hi.get_str() << "]";
  return os.str();
}

bool RadiusSpec::operator==(const RadiusSpec& o) const {
  if (rational.has_value() != o.rational.has_value()) return false;
  if (rational) return *rational == *o.rational;
  return *minpoly == *o.minpoly && interval->lo == o.interval->lo &&
         interval->hi == o.interval->hi;
}

namespace {

unsigned long lcm3(unsigned long a, unsigned long b, unsigned long c) {
  return std::lcm(std::lcm(a, b), c);
}

// Squarefree part of a positive integer: n = s^2 * d with d squarefree.
// Returns {d, s}; gives up (d = 0) past a trial-division bound.
std::pair<Integer, Integer> squarefree_part(const Integer& n) {
  Integer d = 1, s = 1, m = n;
  for (Integer p = 2; p * p <= m; ++p) {
    if (p > 1000000) return {Integer(0), Integer(0)};
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e == 0) continue;
    for (unsigned i = 0; i + 1 < e; i += 2) s *= p;
    if (e % 2 == 1) d *= p;
  }
  d *= m;
  return {d, s};
}

}  // namespace

ResolvedRadius resolve_radius(const RadiusSpec& spec_in, long b) {
  RadiusSpec spec = spec_in;
  if (spec.rational) spec.rational->canonicalize();
  if (spec.interval) {
    spec.interval->lo.canonicalize();
    spec.interval->hi.canonicalize();
  }
  if (b <= 0 || b % 2 != 0) throw std::invalid_argument("b must be even and positive");
  const unsigned long ub = static_cast<unsigned long>(b);

  if (spec.rational) {
    const Rational& r = *spec.rational;
    if (!(r > 0 && r < 1)) throw std::invalid_argument("rational radius must lie in (0, 1)");
    RingPtr ring = CompositeRing::cyclotomic(lcm3(ub, 4, 1));
    return {ring, ring->from_rational(r), std::nullopt};
  }
  if (!spec.minpoly || !spec.interval)
    throw std::invalid_argument("radius spec needs a minimal polynomial and interval");
  const Poly q = spec.minpoly->primitive();
  const RationalInterval& iv = *spec.interval;
  if (!(iv.lo >= 0 && iv.hi <= 1 && iv.lo < iv.hi))
    throw std::invalid_argument("radius interval must lie inside [0, 1]");
  if (q.degree() < 1) throw std::invalid_argument("radius polynomial must be nonconstant");
  if (q.count_real_roots(iv.lo, iv.hi) != 1)
    throw std::invalid_argument("radius interval must isolate exactly one root");

  if (q.degree() == 1) {
    // Linear: r is the rational root itself.
    Rational r = -q.coeff(0) / q.coeff(1);
    RadiusSpec rs;
    rs.rational = r;
    return resolve_radius(rs, b);
  }

  if (q.degree() == 2) {
    // A y^2 + B y + C: roots (-B +/- sqrt(D)) / (2A); when the squarefree
    // part of D is a supported surd the radius lives in a cyclotomic field.
    Rational A = q.coeff(2), B = q.coeff(1), C = q.coeff(0);
    Rational Dq = B * B - A * C * 4;
    if (Dq > 0 && Dq.get_den() == 1) {
      auto [d, s] = squarefree_part(Dq.get_num());
      if (d == 1) {
        // rational roots; pick the one inside the interval
        for (int sg : {1, -1}) {
          Rational root = (-B + Rational(sg) * Rational(s)) / (A * 2);
          if (root > iv.lo && root < iv.hi && q(root) == 0) {
            RadiusSpec rs;
            rs.rational = root;
            return resolve_radius(rs, b);
          }
        }
      } else if (d == 2 || d == 3 || d == 5) {
        unsigned long c_r = d == 2 ? 8 : (d == 3 ? 12 : 5);
        RingPtr ring = CompositeRing::cyclotomic(lcm3(ub, 4, c_r));
        RingElement surd = ring->sqrt_surd(static_cast<unsigned>(d.get_ui()));
        for (int sg : {1, -1}) {
          // r = -B/(2A) + sg * s/(2A) * sqrt(d)
          Rational u = -B / (A * 2);
          Rational v = Rational(sg) * Rational(s) / (A * 2);
          RingElement r = ring->from_rational(u) + surd.mul_rational(v);
          // membership test: the embedding must land inside the interval
          BigComplex rv = embed(r, 18);
          Rational lo = rv.real().lower_rational(), hi = rv.real().upper_rational();
          if (lo > iv.lo && hi < iv.hi)
            return {ring, r, static_cast<unsigned>(d.get_ui())};
        }
        throw std::invalid_argument("no quadratic root inside the radius interval");
      }
    }
  }

  // General composite ring.
  RingPtr ring = CompositeRing::composite(lcm3(ub, 4, 1), q, iv);
  return {ring, ring->y(), std::nullopt};
}

std::string to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::Candidate: return "candidate";
    case RelationStatus::Verified: return "verified";
    case RelationStatus::Refuted: return "refuted";
    case RelationStatus::Unverified: return "unverified";
  }
  return "?";
}

Integer Relation::declared_winding() const {
  for (const auto& t : targets)
    if (t.constant.kind == NamedConstant::Kind::Pi) return -t.coeff;
  return 0;
}

std::vector<Integer> Relation::dense_coeffs() const {
  long b = block();
  std::size_t slots = b > 0 ? static_cast<std::size_t>(b / 2 - 1) : 0;
  std::vector<Integer> v(slots + targets.size(), Integer(0));
  for (const auto& t : terms) v[static_cast<std::size_t>(t.term.a - 1)] = t.coeff;
  for (std::size_t i = 0; i < targets.size(); ++i) v[slots + i] = targets[i].coeff;
  return v;
}

void Relation::canonicalize() {
  auto dense = dense_coeffs();
  int lead = 0;
  for (const auto& c : dense) {
    if (c != 0) {
      lead = sgn(c);
      break;
    }
  }
  if (lead >= 0) return;
  for (auto& t : terms) t.coeff = -t.coeff;
  for (auto& t : targets) t.coeff = -t.coeff;
}

std::string Relation::key_string() const {
  std::ostringstream os;
  os << "b=" << block();
  for (const auto& t : terms) os << " " << t.coeff.get_str() << "@a" << t.term.a;
  for (const auto& t : targets)
    if (t.coeff != 0) os << " " << t.coeff.get_str() << "*" << t.constant.name();
  return os.str();
}

BBPFormula combine(const Relation& rel) {
  if (rel.terms.empty()) throw std::invalid_argument("cannot combine an empty relation");
  const RingElement& r = rel.terms.front().term.r;
  long b = rel.terms.front().term.b;
  for (const auto& t : rel.terms)
    if (t.term.b != b || !(t.term.r == r))
      throw std::invalid_argument("combine requires terms sharing (r, b)");
  std::vector<RingElement> acc(static_cast<std::size_t>(b), r.ring()->zero());
  for (const auto& t : rel.terms) {
    auto vec = ctb(r, b, t.term.a);
    for (std::size_t j = 0; j < acc.size(); ++j)
      acc[j] = acc[j] + vec[j].mul_rational(Rational(t.coeff));
  }
  return make_ctb_formula(r, b, std::move(acc));
}

}  // namespace bbp
