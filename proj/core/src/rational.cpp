#include "bbp/rational.hpp"

#include <stdexcept>

namespace bbp {

namespace {

Integer parse_power_form(const std::string& text) {
  auto caret = text.find('^');
  if (caret == std::string::npos) return Integer(text);
  Integer base(text.substr(0, caret));
  unsigned long exp = std::stoul(text.substr(caret + 1));
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Integer parse_integer(const std::string& text) {
  std::string t = strip(text);
  if (t.empty()) throw std::invalid_argument("empty integer literal");
  try {
    return parse_power_form(t);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer literal: '" + text + "'");
  }
}

Rational parse_rational(const std::string& text) {
  std::string t = strip(text);
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      Rational q(parse_power_form(t));
      return q;
    }
    Integer num = parse_power_form(strip(t.substr(0, slash)));
    Integer den = parse_power_form(strip(t.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& n) { return n.get_str(); }

Integer round_half_even(const Rational& x) {
  // floor(x + 1/2), stepping back on an exact .5 tie that landed on an odd.
  Rational shifted = x + Rational(1, 2);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num().get_mpz_t(),
             shifted.get_den().get_mpz_t());
  if (shifted == Rational(fl)) {
    // x was exactly fl - 1/2: candidates fl-1 and fl, pick the even one.
    if (mpz_odd_p(fl.get_mpz_t())) return fl - 1;
  }
  return fl;
}

Integer int_gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer int_lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer vector_gcd(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) g = int_gcd(g, x);
  return g;
}

int sign_of(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

}  // namespace bbp
