#include "bbp/poly.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bbp {

namespace {
const Rational kZero(0);

std::vector<unsigned long> divisors_of(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(std::size_t degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, kZero);
  v[degree] = c;
  return Poly(std::move(v));
}

const Rational& Poly::coeff(std::size_t k) const {
  return k < c_.size() ? c_[k] : kZero;
}

const Rational& Poly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()), kZero);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()), kZero);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
  return Poly(std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rational> v(c_.size() + o.c_.size() - 1, kZero);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(v));
}

Poly Poly::operator*(const Rational& s) const {
  std::vector<Rational> v(c_);
  for (auto& x : v) x *= s;
  return Poly(std::move(v));
}

Poly Poly::operator-() const { return *this * Rational(-1); }

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly rem = *this;
  int dd = divisor.degree();
  if (rem.degree() < dd) return {Poly(), rem};
  std::vector<Rational> q(rem.degree() - dd + 1, kZero);
  while (rem.degree() >= dd) {
    std::size_t shift = rem.degree() - dd;
    Rational factor = rem.leading() / divisor.leading();
    q[shift] = factor;
    std::vector<Rational> v(rem.c_);
    for (int i = 0; i <= dd; ++i) v[shift + i] -= factor * divisor.c_[i];
    rem = Poly(std::move(v));
  }
  return {Poly(std::move(q)), rem};
}

Poly Poly::divide_exact(const Poly& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Poly(std::move(v));
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int Poly::sign_at(const Rational& x) const { return sign_of((*this)(x)); }

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Poly r2 = r0.divmod(r1).second;
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return r0.monic();
}

bool Poly::is_squarefree() const {
  if (degree() <= 1) return !is_zero();
  return gcd(*this, derivative()).degree() == 0;
}

long Poly::count_real_roots(const Rational& lo, const Rational& hi) const {
  if (is_zero()) throw std::domain_error("root count of zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("empty interval");
  // Sturm chain: p0, p1 = p0', p_{k+1} = -rem(p_{k-1}, p_k).
  std::vector<Poly> chain{*this, derivative()};
  while (!chain.back().is_zero()) {
    Poly r = chain[chain.size() - 2].divmod(chain.back()).second;
    chain.push_back(-r);
  }
  chain.pop_back();
  auto variations = [&chain](const Rational& x) {
    long v = 0;
    int prev = 0;
    for (const auto& p : chain) {
      int s = p.sign_at(x);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  };
  return variations(lo) - variations(hi);
}

bool Poly::known_irreducible_over_Q() const {
  int d = degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  if (d > 3) return false;
  // Degree 2 or 3: irreducible over Q iff there is no rational root.
  Poly p = primitive();
  Integer a0 = p.coeff(0).get_num();
  Integer an = p.leading().get_num();
  if (a0 == 0) return false;  // root at 0
  auto small_divisors = [](const Integer& n) -> std::optional<std::vector<Integer>> {
    Integer m = abs(n);
    if (m > 1000000000) return std::nullopt;
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= m; ++d) {
      if (m % d == 0) {
        out.push_back(d);
        out.push_back(m / d);
      }
    }
    return out;
  };
  auto nums = small_divisors(a0);
  auto dens = small_divisors(an);
  if (!nums || !dens) return false;  // too large to decide cheaply
  for (const auto& pn : *nums)
    for (const auto& qn : *dens) {
      Rational root(pn, qn);
      root.canonicalize();
      if (p(root) == 0 || p(-root) == 0) return false;
    }
  return true;
}

Poly Poly::primitive() const {
  if (is_zero()) return *this;
  Integer den_lcm = 1;
  for (const auto& c : c_) den_lcm = int_lcm(den_lcm, c.get_den());
  std::vector<Integer> scaled;
  scaled.reserve(c_.size());
  for (const auto& c : c_) scaled.push_back(c.get_num() * (den_lcm / c.get_den()));
  Integer g = vector_gcd(scaled);
  std::vector<Rational> v;
  v.reserve(scaled.size());
  int lead_sign = sign_of(Rational(scaled.back()));
  for (auto& s : scaled) v.emplace_back(lead_sign < 0 ? Integer(-s / g) : Integer(s / g));
  return Poly(std::move(v));
}

Poly Poly::cyclotomic(unsigned long L) {
  if (L == 0) throw std::invalid_argument("cyclotomic conductor must be positive");
  std::map<unsigned long, Poly> phi;
  for (unsigned long d : divisors_of(L)) {
    // x^d - 1 divided by all earlier cyclotomics of divisors of d.
    std::vector<Rational> v(d + 1, kZero);
    v[0] = -1;
    v[d] = 1;
    Poly num(std::move(v));
    for (unsigned long e : divisors_of(d))
      if (e != d) num = num.divide_exact(phi.at(e));
    phi.emplace(d, std::move(num));
  }
  return phi.at(L);
}

namespace {

// Minimal recursive-descent parser for integer/rational-coefficient
// polynomials like "2*y^2 + 2*y - 1" or "y^4+y-1".
struct PolyParser {
  const std::string& s;
  std::size_t i = 0;
  char var = 0;

  explicit PolyParser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool accept(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  Rational number() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw std::invalid_argument("expected number in polynomial");
    Integer num(s.substr(start, i - start));
    if (accept('/')) {
      skip();
      std::size_t dstart = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (dstart == i) throw std::invalid_argument("expected denominator");
      Integer den(s.substr(dstart, i - dstart));
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    return Rational(num);
  }

  // term := [number ['*']] [var ['^' exp]]
  Poly term() {
    skip();
    Rational coef(1);
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = number();
      have_coef = true;
      accept('*');
    }
    skip();
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      char v = s[i];
      if (var == 0) var = v;
      if (v != var) throw std::invalid_argument("mixed variables in polynomial");
      ++i;
      std::size_t exp = 1;
      if (accept('^')) {
        Rational e = number();
        if (e.get_den() != 1 || e < 0) throw std::invalid_argument("bad exponent");
        exp = static_cast<std::size_t>(e.get_num().get_ui());
      }
      return Poly::monomial(exp, coef);
    }
    if (!have_coef) throw std::invalid_argument("expected term in polynomial");
    return Poly::constant(coef);
  }

  Poly parse() {
    Poly acc;
    skip();
    int sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    acc = acc + term() * Rational(sign);
    while (true) {
      skip();
      if (i >= s.size()) break;
      if (accept('+')) sign = 1;
      else if (accept('-')) sign = -1;
      else throw std::invalid_argument("unexpected character in polynomial");
      acc = acc + term() * Rational(sign);
    }
    return acc;
  }
};

}  // namespace

Poly Poly::from_string(const std::string& text) {
  PolyParser p(text);
  return p.parse();
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = (a == 1) && k > 0;
    if (!unit) os << a.get_str();
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace bbp
