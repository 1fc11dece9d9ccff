#include "bbp/ring.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bbp {

namespace {

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n, m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

}  // namespace

RingPtr CompositeRing::cyclotomic(unsigned long L) {
  if (L == 0) throw std::invalid_argument("conductor must be positive");
  auto ring = std::shared_ptr<CompositeRing>(new CompositeRing());
  ring->conductor_ = L;
  ring->cyclo_modulus_ = Poly::cyclotomic(L);
  ring->cyclo_degree_ = static_cast<unsigned>(euler_phi(L));
  ring->is_proven_field_ = true;
  ring->build_tables();
  return ring;
}

RingPtr CompositeRing::composite(unsigned long L, Poly q, RationalInterval root_interval) {
  root_interval.lo.canonicalize();
  root_interval.hi.canonicalize();
  if (q.degree() < 1) throw std::invalid_argument("real modulus must be nonconstant");
  if (!q.is_squarefree()) throw std::invalid_argument("real modulus is not squarefree");
  if (root_interval.lo < 0 || root_interval.hi > 1 || !(root_interval.lo < root_interval.hi))
    throw std::invalid_argument("root interval must lie within [0, 1]");
  if (q.sign_at(root_interval.lo) == 0 || q.sign_at(root_interval.hi) == 0)
    throw std::invalid_argument("root interval endpoint is a root; shrink it");
  if (q.count_real_roots(root_interval.lo, root_interval.hi) != 1)
    throw std::invalid_argument("root interval must isolate exactly one real root");

  auto ring = std::shared_ptr<CompositeRing>(new CompositeRing());
  ring->conductor_ = L;
  ring->cyclo_modulus_ = Poly::cyclotomic(L);
  ring->cyclo_degree_ = static_cast<unsigned>(euler_phi(L));
  ring->real_modulus_ = q.monic();
  ring->real_degree_ = static_cast<unsigned>(q.degree());
  ring->root_interval_ = std::move(root_interval);
  // Field detection: deg q = 1 collapses to the cyclotomic field; otherwise
  // a degree coprime to phi(L) together with irreducibility over Q suffices
  // (the cyclotomic extension is Galois, so the factors stay linearly
  // disjoint). Anything else is left unproven and handled by the one-sided
  // zero test downstream.
  if (ring->real_degree_ == 1) {
    ring->is_proven_field_ = true;
  } else {
    ring->is_proven_field_ =
        std::gcd(static_cast<unsigned long>(ring->real_degree_),
                 static_cast<unsigned long>(ring->cyclo_degree_)) == 1 &&
        q.known_irreducible_over_Q();
  }
  ring->build_tables();
  return ring;
}

void CompositeRing::build_tables() {
  const unsigned phi = cyclo_degree_;
  // x^k mod Phi_L for all k we ever need: conjugation uses exponents < L,
  // multiplication uses exponents < 2*phi - 1.
  std::size_t need = std::max<std::size_t>(conductor_, 2 * phi);
  zeta_table_.assign(need, std::vector<Rational>(phi, Rational(0)));
  zeta_table_[0][0] = 1;
  std::vector<Rational> cur(phi, Rational(0));
  cur[0] = 1;
  for (std::size_t k = 1; k < need; ++k) {
    // multiply by x, then reduce the overflow term via Phi_L.
    Rational top = cur[phi - 1];
    for (std::size_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      // x^phi = -(Phi_L - x^phi) since Phi_L is monic.
      for (std::size_t i = 0; i < phi; ++i)
        cur[i] -= top * cyclo_modulus_.coeff(i);
    }
    zeta_table_[k] = cur;
  }

  const unsigned dq = real_degree_;
  y_table_.assign(std::max<std::size_t>(2 * dq, 1), std::vector<Rational>(dq, Rational(0)));
  y_table_[0][0] = 1;
  if (dq > 1) {
    std::vector<Rational> ycur(dq, Rational(0));
    ycur[0] = 1;
    const Poly& q = *real_modulus_;  // monic
    for (std::size_t k = 1; k < 2 * dq; ++k) {
      Rational top = ycur[dq - 1];
      for (std::size_t i = dq - 1; i > 0; --i) ycur[i] = ycur[i - 1];
      ycur[0] = 0;
      if (top != 0)
        for (std::size_t i = 0; i < dq; ++i) ycur[i] -= top * q.coeff(i);
      y_table_[k] = ycur;
    }
  }
}

const Poly& CompositeRing::real_modulus() const {
  if (!real_modulus_) throw std::logic_error("ring has no real modulus");
  return *real_modulus_;
}

const RationalInterval& CompositeRing::root_interval() const {
  if (!root_interval_) throw std::logic_error("ring has no designated real root");
  return *root_interval_;
}

std::vector<unsigned> CompositeRing::supported_surds() const {
  std::vector<unsigned> out;
  if (conductor_ % 8 == 0) out.push_back(2);
  if (conductor_ % 12 == 0) out.push_back(3);
  if (conductor_ % 5 == 0) out.push_back(5);
  return out;
}

bool CompositeRing::same_ring(const CompositeRing& o) const {
  if (this == &o) return true;
  if (conductor_ != o.conductor_) return false;
  if (real_modulus_.has_value() != o.real_modulus_.has_value()) return false;
  if (real_modulus_ && !(*real_modulus_ == *o.real_modulus_)) return false;
  if (root_interval_ && o.root_interval_)
    return root_interval_->lo == o.root_interval_->lo && root_interval_->hi == o.root_interval_->hi;
  return true;
}

RingElement CompositeRing::zero() const {
  return RingElement(shared_from_this(), std::vector<Rational>(dimension(), Rational(0)));
}

RingElement CompositeRing::one() const { return from_rational(1); }

RingElement CompositeRing::from_rational(const Rational& q) const {
  std::vector<Rational> v(dimension(), Rational(0));
  v[0] = q;
  v[0].canonicalize();
  return RingElement(shared_from_this(), std::move(v));
}

RingElement CompositeRing::zeta_pow(long k) const {
  long L = static_cast<long>(conductor_);
  long m = ((k % L) + L) % L;
  std::vector<Rational> v(dimension(), Rational(0));
  const auto& row = zeta_table_[static_cast<std::size_t>(m)];
  for (std::size_t i = 0; i < cyclo_degree_; ++i) v[i] = row[i];
  return RingElement(shared_from_this(), std::move(v));
}

RingElement CompositeRing::y() const {
  if (!real_modulus_) throw std::logic_error("pure cyclotomic ring has no y");
  std::vector<Rational> v(dimension(), Rational(0));
  if (real_degree_ == 1) {
    // q is linear: y is the rational root -c0/c1 (monic: -c0).
    v[0] = -real_modulus_->coeff(0);
  } else {
    v[cyclo_degree_] = 1;  // coordinate (i=0, j=1)
  }
  return RingElement(shared_from_this(), std::move(v));
}

RingElement CompositeRing::sqrt_surd(unsigned d) const {
  const unsigned long L = conductor_;
  switch (d) {
    case 2:
      if (L % 8 != 0) throw std::domain_error("conductor does not admit sqrt(2)");
      return zeta_pow(static_cast<long>(L / 8)) + zeta_pow(-static_cast<long>(L / 8));
    case 3:
      if (L % 12 != 0) throw std::domain_error("conductor does not admit sqrt(3)");
      return zeta_pow(static_cast<long>(L / 12)) + zeta_pow(-static_cast<long>(L / 12));
    case 5: {
      if (L % 5 != 0) throw std::domain_error("conductor does not admit sqrt(5)");
      RingElement c = zeta_pow(static_cast<long>(L / 5)) + zeta_pow(-static_cast<long>(L / 5));
      return c.mul_rational(2) + one();
    }
    default:
      throw std::domain_error("unsupported surd");
  }
}

std::string CompositeRing::describe() const {
  std::ostringstream os;
  os << "Q(zeta_" << conductor_ << ")";
  if (real_modulus_) os << "[y]/(" << real_modulus_->to_string() << ")";
  return os.str();
}

RingElement::RingElement(RingPtr ring, std::vector<Rational> coords)
    : ring_(std::move(ring)), coords_(std::move(coords)) {
  if (coords_.size() != ring_->dimension())
    throw std::invalid_argument("coordinate vector has wrong dimension");
}

const Rational& RingElement::coord(std::size_t zeta_pow, std::size_t y_pow) const {
  return coords_[zeta_pow + ring_->cyclo_degree_ * y_pow];
}

bool RingElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool RingElement::operator==(const RingElement& o) const {
  return ring_->same_ring(*o.ring_) && coords_ == o.coords_;
}

void RingElement::check_same_ring(const RingElement& o) const {
  if (!ring_ || !o.ring_ || !ring_->same_ring(*o.ring_))
    throw std::invalid_argument("ring mismatch");
}

RingElement RingElement::operator+(const RingElement& o) const {
  check_same_ring(o);
  std::vector<Rational> v(coords_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.coords_[i];
  return RingElement(ring_, std::move(v));
}

RingElement RingElement::operator-(const RingElement& o) const {
  check_same_ring(o);
  std::vector<Rational> v(coords_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.coords_[i];
  return RingElement(ring_, std::move(v));
}

RingElement RingElement::operator-() const {
  std::vector<Rational> v(coords_);
  for (auto& c : v) c = -c;
  return RingElement(ring_, std::move(v));
}

RingElement RingElement::mul_rational(const Rational& s) const {
  std::vector<Rational> v(coords_);
  for (auto& c : v) c *= s;
  return RingElement(ring_, std::move(v));
}

RingElement RingElement::operator*(const RingElement& o) const {
  check_same_ring(o);
  const unsigned phi = ring_->cyclo_degree_;
  const unsigned dq = ring_->real_degree_;
  // Convolve into exponent ranges [0, 2phi-1) x [0, 2dq-1), then fold the
  // high powers back with the precomputed reduction tables.
  std::vector<Rational> conv((2 * phi - 1) * (2 * dq - 1), Rational(0));
  const std::size_t conv_xdim = 2 * phi - 1;
  auto cidx = [conv_xdim](std::size_t i, std::size_t j) { return i + conv_xdim * j; };
  for (std::size_t j1 = 0; j1 < dq; ++j1)
    for (std::size_t i1 = 0; i1 < phi; ++i1) {
      const Rational& a = coords_[i1 + phi * j1];
      if (a == 0) continue;
      for (std::size_t j2 = 0; j2 < dq; ++j2)
        for (std::size_t i2 = 0; i2 < phi; ++i2) {
          const Rational& b = o.coords_[i2 + phi * j2];
          if (b == 0) continue;
          conv[cidx(i1 + i2, j1 + j2)] += a * b;
        }
    }
  std::vector<Rational> out(ring_->dimension(), Rational(0));
  for (std::size_t j = 0; j <= 2 * (dq - 1); ++j) {
    const auto& yrow = ring_->y_table_[j];
    for (std::size_t i = 0; i <= 2 * (phi - 1); ++i) {
      const Rational& c = conv[cidx(i, j)];
      if (c == 0) continue;
      const auto& xrow = ring_->zeta_table_[i];
      for (std::size_t jj = 0; jj < dq; ++jj) {
        if (yrow[jj] == 0) continue;
        Rational cy = c * yrow[jj];
        for (std::size_t ii = 0; ii < phi; ++ii) {
          if (xrow[ii] == 0) continue;
          out[ii + phi * jj] += cy * xrow[ii];
        }
      }
    }
  }
  return RingElement(ring_, std::move(out));
}

RingElement RingElement::pow(unsigned long k) const {
  RingElement acc = ring_->one();
  RingElement base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

RingElement RingElement::conjugate() const {
  const unsigned phi = ring_->cyclo_degree_;
  const unsigned dq = ring_->real_degree_;
  const long L = static_cast<long>(ring_->conductor_);
  std::vector<Rational> out(ring_->dimension(), Rational(0));
  for (std::size_t j = 0; j < dq; ++j)
    for (std::size_t i = 0; i < phi; ++i) {
      const Rational& c = coords_[i + phi * j];
      if (c == 0) continue;
      long e = (L - static_cast<long>(i)) % L;
      const auto& row = ring_->zeta_table_[static_cast<std::size_t>(e)];
      for (std::size_t ii = 0; ii < phi; ++ii) {
        if (row[ii] == 0) continue;
        out[ii + phi * j] += c * row[ii];
      }
    }
  return RingElement(ring_, std::move(out));
}

std::optional<Rational> RingElement::as_rational() const {
  for (std::size_t k = 1; k < coords_.size(); ++k)
    if (coords_[k] != 0) return std::nullopt;
  return coords_[0];
}

RingElement RingElement::inverse_cyclotomic() const {
  if (ring_->has_real_part() && ring_->real_degree() > 1)
    throw std::logic_error("inverse only available in the cyclotomic field");
  if (is_zero()) throw std::domain_error("inverse of zero");
  // Extended Euclid of the coordinate polynomial against Phi_L over Q[x].
  const unsigned phi = ring_->cyclo_degree_;
  std::vector<Rational> cv(coords_.begin(), coords_.begin() + phi);
  Poly a{std::vector<Rational>(cv)};
  Poly b = ring_->cyclo_modulus_;
  Poly r0 = b, r1 = a;  // gcd(Phi, a)
  Poly t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0)
    throw std::domain_error("element not invertible modulo the cyclotomic modulus");
  Poly inv = t0 * (Rational(1) / r0.coeff(0));
  std::vector<Rational> out(ring_->dimension(), Rational(0));
  for (std::size_t i = 0; i < phi; ++i) out[i] = inv.coeff(i);
  return RingElement(ring_, std::move(out));
}

RingElement RingElement::extend_to(const RingPtr& bigger) const {
  const unsigned long Ls = ring_->conductor();
  const unsigned long Lb = bigger->conductor();
  if (Lb % Ls != 0) throw std::invalid_argument("target conductor not divisible");
  if (ring_->has_real_part() != bigger->has_real_part() ||
      (ring_->has_real_part() && !(ring_->real_modulus() == bigger->real_modulus())))
    throw std::invalid_argument("real modulus mismatch in ring extension");
  const unsigned long stride = Lb / Ls;
  const unsigned phis = ring_->cyclo_degree();
  const unsigned dq = ring_->real_degree();
  RingElement acc = bigger->zero();
  for (std::size_t j = 0; j < dq; ++j) {
    // y^j component, re-expressed through zeta_{Lb}^(stride * i).
    for (std::size_t i = 0; i < phis; ++i) {
      const Rational& c = coords_[i + phis * j];
      if (c == 0) continue;
      RingElement term = bigger->zeta_pow(static_cast<long>(stride * i)).mul_rational(c);
      if (j > 0) term = term * bigger->y().pow(j);
      acc = acc + term;
    }
  }
  return acc;
}

std::string RingElement::to_string() const {
  const unsigned phi = ring_->cyclo_degree_;
  const unsigned dq = ring_->real_degree_;
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < dq; ++j)
    for (std::size_t i = 0; i < phi; ++i) {
      const Rational& c = coords_[i + phi * j];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << c.get_str();
      if (i > 0) os << "*z^" << i;
      if (j > 0) os << "*y^" << j;
    }
  if (first) os << "0";
  return os.str();
}

}  // namespace bbp
