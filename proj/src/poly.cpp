#include "odoni/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace odoni {

namespace {
const Rational kZeroQ(0);
const BigInt kZeroZ(0);
}  // namespace

// ---------------------------------------------------------------------------
// PolyRat

void PolyRat::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyRat PolyRat::monomial(const Rational& c, std::size_t i) {
  if (c == 0) return PolyRat();
  std::vector<Rational> v(i + 1, Rational(0));
  v[i] = c;
  return PolyRat(std::move(v));
}

const Rational& PolyRat::coeff(std::size_t i) const {
  if (i >= c_.size()) return kZeroQ;
  return c_[i];
}

const Rational& PolyRat::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Rational PolyRat::evaluate(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PolyRat PolyRat::operator-() const {
  PolyRat r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

PolyRat operator+(const PolyRat& a, const PolyRat& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return PolyRat(std::move(v));
}

PolyRat operator-(const PolyRat& a, const PolyRat& b) { return a + (-b); }

PolyRat operator*(const PolyRat& a, const PolyRat& b) {
  if (a.is_zero() || b.is_zero()) return PolyRat();
  std::size_t n = a.c_.size() + b.c_.size() - 1;
  if (n > kMaxPolyCoeffs) throw std::domain_error("polynomial degree cap exceeded");
  std::vector<Rational> v(n, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return PolyRat(std::move(v));
}

PolyRat operator*(const Rational& s, const PolyRat& a) {
  PolyRat r = a;
  for (auto& c : r.c_) c *= s;
  r.normalize();
  return r;
}

std::string PolyRat::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeff(i);
    if (c == 0) continue;
    Rational a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool unit = (a == 1 && i != 0);
    if (!unit) os << rational_to_string(a);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PolyRat compose(const PolyRat& f, const PolyRat& g) {
  if (f.degree() >= 1 && g.degree() >= 1) {
    std::size_t bound = std::size_t(f.degree()) * std::size_t(g.degree()) + 1;
    if (bound > kMaxPolyCoeffs) throw std::domain_error("polynomial degree cap exceeded");
  }
  PolyRat acc = PolyRat::constant(f.coeff(std::max(f.degree(), 0)));
  if (f.is_zero()) return PolyRat();
  for (int i = f.degree() - 1; i >= 0; --i) acc = acc * g + PolyRat::constant(f.coeff(i));
  return acc;
}

PolyRat iterate(const PolyRat& f, unsigned k) {
  PolyRat acc = PolyRat::x();
  for (unsigned i = 0; i < k; ++i) acc = compose(f, acc);
  return acc;
}

PolyRat derivative(const PolyRat& f) {
  if (f.degree() < 1) return PolyRat();
  std::vector<Rational> v(f.degree());
  for (int i = 1; i <= f.degree(); ++i) v[i - 1] = Rational(i) * f.coeff(i);
  return PolyRat(std::move(v));
}

std::pair<PolyRat, PolyRat> divmod(const PolyRat& f, const PolyRat& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  PolyRat r = f;
  std::vector<Rational> q(f.degree() >= g.degree() ? f.degree() - g.degree() + 1 : 0,
                          Rational(0));
  while (!r.is_zero() && r.degree() >= g.degree()) {
    std::size_t shift = r.degree() - g.degree();
    Rational c = r.leading() / g.leading();
    q[shift] = c;
    r = r - PolyRat::monomial(c, shift) * g;
  }
  return {PolyRat(std::move(q)), r};
}

PolyRat poly_gcd(const PolyRat& f, const PolyRat& g) {
  PolyRat a = f, b = g;
  while (!b.is_zero()) {
    PolyRat rem = divmod(a, b).second;
    a = b;
    b = rem;
  }
  if (a.is_zero()) return a;
  return (Rational(1) / a.leading()) * a;
}

// ---------------------------------------------------------------------------
// Resultant via the integer subresultant PRS (Cohen, Algorithm 3.3.7).

namespace {

using ZP = std::vector<BigInt>;  // dense integer poly, trailing zeros trimmed

void znorm(ZP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int zdeg(const ZP& a) { return static_cast<int>(a.size()) - 1; }

ZP zscale(const ZP& a, const BigInt& s) {
  ZP r = a;
  for (auto& c : r) c *= s;
  znorm(r);
  return r;
}

ZP zsub(const ZP& a, const ZP& b) {
  ZP r(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < r.size(); ++i) {
    BigInt x = i < a.size() ? a[i] : BigInt(0);
    BigInt y = i < b.size() ? b[i] : BigInt(0);
    r[i] = x - y;
  }
  znorm(r);
  return r;
}

ZP zshift_mul(const ZP& a, std::size_t k, const BigInt& s) {
  ZP r(a.size() + k, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i + k] = a[i] * s;
  znorm(r);
  return r;
}

BigInt zcontent(const ZP& a) {
  BigInt g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g == 0 ? BigInt(1) : g;
}

ZP zdivexact_scalar(const ZP& a, const BigInt& s) {
  ZP r = a;
  for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
  return r;
}

// Pseudo remainder: lc(B)^(deg A - deg B + 1) * A = Q*B + R.
ZP zprem(const ZP& A, const ZP& B) {
  ZP R = A;
  const BigInt d = B.back();
  long e = zdeg(A) - zdeg(B) + 1;
  while (!R.empty() && zdeg(R) >= zdeg(B)) {
    ZP t = zshift_mul(B, zdeg(R) - zdeg(B), R.back());
    R = zsub(zscale(R, d), t);
    --e;
  }
  BigInt scale;
  mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), e > 0 ? static_cast<unsigned long>(e) : 0);
  return zscale(R, scale);
}

BigInt zpow(const BigInt& b, long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

// Res(A, B) for nonzero integer polynomials with deg >= 1.
BigInt resultant_z(ZP A, ZP B) {
  BigInt ca = zcontent(A), cb = zcontent(B);
  A = zdivexact_scalar(A, ca);
  B = zdivexact_scalar(B, cb);
  int sign = 1;
  BigInt t = zpow(ca, zdeg(B)) * zpow(cb, zdeg(A));
  if (zdeg(A) < zdeg(B)) {
    if ((zdeg(A) & 1) && (zdeg(B) & 1)) sign = -sign;
    std::swap(A, B);
  }
  BigInt g = 1, h = 1;
  while (true) {
    long delta = zdeg(A) - zdeg(B);
    if ((zdeg(A) & 1) && (zdeg(B) & 1)) sign = -sign;
    ZP R = zprem(A, B);
    A = B;
    BigInt divisor = g * zpow(h, delta);
    if (R.empty()) {
      B.clear();
    } else {
      B = zdivexact_scalar(R, divisor);
    }
    g = A.back();
    if (delta > 0) {
      BigInt num = zpow(g, delta);
      BigInt den = zpow(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.empty()) return BigInt(0);  // nontrivial common factor
    if (zdeg(B) == 0) break;
  }
  long dA = zdeg(A);
  BigInt num = zpow(B.back(), dA);
  BigInt den = zpow(h, dA - 1);
  BigInt hfin;
  mpz_divexact(hfin.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return sign < 0 ? BigInt(-t * hfin) : BigInt(t * hfin);
}

BigInt rational_lcm_den(const PolyRat& f) {
  BigInt l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  return l;
}

ZP clear_denominators(const PolyRat& f, const BigInt& mult) {
  ZP r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    Rational c = Rational(mult) * f.coeff(i);
    assert(c.get_den() == 1);
    r[i] = c.get_num();
  }
  znorm(r);
  return r;
}

Rational pow_rat(const Rational& b, long e) {
  Rational r(1);
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

Rational resultant(const PolyRat& f, const PolyRat& g) {
  if (f.is_zero() || g.is_zero()) return Rational(0);
  if (f.degree() == 0) return pow_rat(f.coeff(0), g.degree());
  if (g.degree() == 0) return pow_rat(g.coeff(0), f.degree());
  BigInt df = rational_lcm_den(f), dg = rational_lcm_den(g);
  ZP F = clear_denominators(f, df);
  ZP G = clear_denominators(g, dg);
  BigInt rz = resultant_z(F, G);
  Rational scale = make_rational(1, zpow(df, g.degree()) * zpow(dg, f.degree()));
  return Rational(rz) * scale;
}

Rational discriminant(const PolyRat& f) {
  int d = f.degree();
  if (d < 1) throw std::domain_error("discriminant requires degree >= 1");
  if (d == 1) return Rational(1);
  Rational res = resultant(f, derivative(f));
  Rational disc = res / f.leading();
  if (((long(d) * (d - 1)) / 2) % 2 != 0) disc = -disc;
  return disc;
}

// ---------------------------------------------------------------------------
// PolyFp

void PolyFp::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void PolyFp::check_same(const PolyFp& o) const {
  if (p_ != o.p_) throw std::logic_error("mixed moduli in PolyFp arithmetic");
}

const BigInt& PolyFp::coeff(std::size_t i) const {
  if (i >= c_.size()) return kZeroZ;
  return c_[i];
}

const BigInt& PolyFp::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

BigInt PolyFp::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = mod_floor(acc * x + *it, p_);
  return acc;
}

PolyFp PolyFp::derivative() const {
  if (degree() < 1) return PolyFp(p_);
  std::vector<BigInt> v(degree());
  for (int i = 1; i <= degree(); ++i) v[i - 1] = mod_floor(BigInt(i) * c_[i], p_);
  PolyFp r(p_);
  r.c_ = std::move(v);
  r.normalize();
  return r;
}

PolyFp operator+(const PolyFp& a, const PolyFp& b) {
  a.check_same(b);
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(a.coeff(i) + b.coeff(i), a.p_);
  return PolyFp(a.p_, std::move(v));
}

PolyFp operator-(const PolyFp& a, const PolyFp& b) {
  a.check_same(b);
  std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(a.coeff(i) - b.coeff(i), a.p_);
  return PolyFp(a.p_, std::move(v));
}

PolyFp operator*(const PolyFp& a, const PolyFp& b) {
  a.check_same(b);
  if (a.is_zero() || b.is_zero()) return PolyFp(a.p_);
  std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return PolyFp(a.p_, std::move(v));
}

PolyFp PolyFp::scaled(const BigInt& s) const {
  PolyFp r(p_);
  r.c_ = c_;
  for (auto& c : r.c_) c = mod_floor(c * s, p_);
  r.normalize();
  return r;
}

std::string PolyFp::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (coeff(i) == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (coeff(i) != 1 || i == 0) os << coeff(i).get_str();
    if (i > 0) {
      if (coeff(i) != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  os << " (mod " << p_.get_str() << ")";
  return os.str();
}

namespace {
BigInt inv_mod(const BigInt& a, const BigInt& p) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::domain_error("non-invertible element mod " + p.get_str());
  return r;
}
}  // namespace

std::pair<PolyFp, PolyFp> divmod(const PolyFp& f, const PolyFp& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  const BigInt& p = f.modulus();
  BigInt lcinv = inv_mod(g.leading(), p);
  PolyFp r = f;
  std::vector<BigInt> q(f.degree() >= g.degree() ? f.degree() - g.degree() + 1 : 0, BigInt(0));
  while (!r.is_zero() && r.degree() >= g.degree()) {
    std::size_t shift = r.degree() - g.degree();
    BigInt c = mod_floor(r.leading() * lcinv, p);
    q[shift] = c;
    std::vector<BigInt> sub(shift + g.degree() + 1, BigInt(0));
    for (int i = 0; i <= g.degree(); ++i) sub[shift + i] = mod_floor(g.coeff(i) * c, p);
    r = r - PolyFp(p, std::move(sub));
  }
  return {PolyFp(p, std::move(q)), r};
}

PolyFp gcd(const PolyFp& f, const PolyFp& g) {
  PolyFp a = f, b = g;
  while (!b.is_zero()) {
    PolyFp rem = divmod(a, b).second;
    a = b;
    b = rem;
  }
  if (a.is_zero()) return a;
  return a.scaled(inv_mod(a.leading(), a.modulus()));
}

FpEgcd egcd(const PolyFp& a, const PolyFp& b) {
  const BigInt& p = a.modulus();
  PolyFp r0 = a, r1 = b;
  PolyFp s0 = PolyFp::constant(p, 1), s1 = PolyFp(p);
  PolyFp t0 = PolyFp(p), t1 = PolyFp::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    PolyFp s2 = s0 - q * s1;
    PolyFp t2 = t0 - q * t1;
    r0 = r1; r1 = r;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  if (r0.is_zero()) return {r0, s0, t0};
  BigInt inv = inv_mod(r0.leading(), p);
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

PolyFp pow_mod(const PolyFp& base, const BigInt& e, const PolyFp& mod) {
  if (e < 0) throw std::domain_error("negative exponent");
  PolyFp result = PolyFp::constant(base.modulus(), 1);
  PolyFp b = divmod(base, mod).second;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return divmod(result, mod).second;
  for (std::size_t i = bits; i-- > 0;) {
    result = divmod(result * result, mod).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(result * b, mod).second;
  }
  return result;
}

PolyFp FactorizationFp::replay(const BigInt& p) const {
  PolyFp prod = PolyFp::constant(p, unit);
  for (const auto& [f, m] : factors)
    for (unsigned i = 0; i < m; ++i) prod = prod * f;
  return prod;
}

BigInt Rng::below(const BigInt& bound) {
  if (bound <= 0) throw std::domain_error("Rng::below requires positive bound");
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  while (true) {
    BigInt r = 0;
    for (std::size_t got = 0; got < bits; got += 64) {
      r <<= 64;
      r += BigInt(static_cast<unsigned long>(next()));
    }
    r >>= (((bits + 63) / 64) * 64 - bits);
    if (r < bound) return r;
  }
}

PolyFp reduce_mod(const PolyRat& f, const BigInt& p) {
  if (!is_prime(p)) throw std::domain_error("reduce_mod: modulus " + p.get_str() + " is not prime");
  std::vector<BigInt> v(f.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational& c = f.coeff(i);
    BigInt den = mod_floor(c.get_den(), p);
    if (den == 0)
      throw BadReduction(i, "coefficient of x^" + std::to_string(i) + " (" +
                                rational_to_string(c) + ") has denominator divisible by " +
                                p.get_str());
    v[i] = mod_floor(c.get_num() * inv_mod(den, p), p);
  }
  return PolyFp(p, std::move(v));
}

// ---------------------------------------------------------------------------
// Factorization over F_p: squarefree split, distinct degree, Cantor-Zassenhaus.

namespace {

// f with f' = 0 is a p-th power; coefficient p-th roots are trivial in F_p.
PolyFp pth_root(const PolyFp& f) {
  unsigned long p = f.modulus().get_ui();
  std::vector<BigInt> v(f.degree() / p + 1, BigInt(0));
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coeff(i) == 0) continue;
    assert(i % p == 0);
    v[i / p] = f.coeff(i);
  }
  return PolyFp(f.modulus(), std::move(v));
}

void squarefree_decomp(const PolyFp& f, unsigned long scale,
                       std::vector<std::pair<PolyFp, unsigned long>>& out) {
  PolyFp fd = f.derivative();
  if (fd.is_zero()) {
    squarefree_decomp(pth_root(f), scale * f.modulus().get_ui(), out);
    return;
  }
  PolyFp c = gcd(f, fd);
  PolyFp w = divmod(f, c).first;
  unsigned long i = 1;
  while (!w.is_one()) {
    PolyFp y = gcd(w, c);
    PolyFp z = divmod(w, y).first;
    if (!z.is_one()) out.push_back({z, i * scale});
    ++i;
    w = y;
    c = divmod(c, y).first;
  }
  if (!c.is_one()) squarefree_decomp(pth_root(c), scale * f.modulus().get_ui(), out);
}

// Distinct-degree split of a monic squarefree polynomial.
std::vector<std::pair<PolyFp, unsigned>> ddf(const PolyFp& g) {
  std::vector<std::pair<PolyFp, unsigned>> res;
  PolyFp f = g;
  const BigInt& p = g.modulus();
  PolyFp h = divmod(PolyFp::x(p), f).second;
  unsigned d = 0;
  while (f.degree() >= 2 * static_cast<int>(d + 1)) {
    ++d;
    h = pow_mod(h, p, f);
    PolyFp gd = gcd(f, h - PolyFp::x(p));
    if (gd.degree() > 0) {
      res.push_back({gd, d});
      f = divmod(f, gd).first;
      h = divmod(h, f).second;
    }
  }
  if (f.degree() > 0) res.push_back({f, static_cast<unsigned>(f.degree())});
  return res;
}

PolyFp random_poly(const BigInt& p, int deg_below, Rng& rng) {
  std::vector<BigInt> v(deg_below);
  for (auto& c : v) c = rng.below(p);
  return PolyFp(p, std::move(v));
}

// Equal-degree splitting of a monic product of degree-d irreducibles.
void edf(const PolyFp& h, unsigned d, Rng& rng, std::vector<PolyFp>& out) {
  if (h.degree() == static_cast<int>(d)) {
    out.push_back(h);
    return;
  }
  const BigInt& p = h.modulus();
  while (true) {
    PolyFp a = random_poly(p, h.degree(), rng);
    if (a.degree() < 1) continue;
    PolyFp g = gcd(a, h);
    if (g.degree() == 0) {
      if (p == 2) {
        // Trace map sum a^(2^i), i < d.
        PolyFp t = a, cur = a;
        for (unsigned i = 1; i < d; ++i) {
          cur = divmod(cur * cur, h).second;
          t = t + cur;
        }
        g = gcd(t, h);
      } else {
        BigInt e = pow_int(p, d) - 1;
        e /= 2;
        PolyFp b = pow_mod(a, e, h);
        g = gcd(b - PolyFp::constant(p, 1), h);
      }
    }
    if (g.degree() > 0 && g.degree() < h.degree()) {
      edf(g, d, rng, out);
      edf(divmod(h, g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

FactorizationFp factor_mod_p(const PolyFp& f, Rng& rng) {
  if (f.is_zero()) throw std::domain_error("factor_mod_p of the zero polynomial");
  FactorizationFp out;
  out.unit = f.leading();
  if (f.degree() == 0) return out;
  PolyFp fm = f.scaled(inv_mod(f.leading(), f.modulus()));
  std::vector<std::pair<PolyFp, unsigned long>> parts;
  squarefree_decomp(fm, 1, parts);
  for (const auto& [part, mult] : parts) {
    for (const auto& [prod, d] : ddf(part)) {
      std::vector<PolyFp> irr;
      edf(prod, d, rng, irr);
      for (auto& q : irr) out.factors.push_back({q, static_cast<unsigned>(mult)});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    for (int i = a.first.degree(); i >= 0; --i) {
      if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
    }
    return a.second < b.second;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting (quadratic; von zur Gathen & Gerhard, Algorithm 15.10).

namespace {

using MP = std::vector<BigInt>;  // poly with coefficients mod M

void mnorm(MP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int mdeg(const MP& a) { return static_cast<int>(a.size()) - 1; }

MP mreduce(const MP& a, const BigInt& M) {
  MP r = a;
  for (auto& c : r) c = mod_floor(c, M);
  mnorm(r);
  return r;
}

MP madd(const MP& a, const MP& b, const BigInt& M) {
  MP r(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < r.size(); ++i) {
    BigInt x = i < a.size() ? a[i] : BigInt(0);
    BigInt y = i < b.size() ? b[i] : BigInt(0);
    r[i] = mod_floor(x + y, M);
  }
  mnorm(r);
  return r;
}

MP msub(const MP& a, const MP& b, const BigInt& M) {
  MP r(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < r.size(); ++i) {
    BigInt x = i < a.size() ? a[i] : BigInt(0);
    BigInt y = i < b.size() ? b[i] : BigInt(0);
    r[i] = mod_floor(x - y, M);
  }
  mnorm(r);
  return r;
}

MP mmul(const MP& a, const MP& b, const BigInt& M) {
  if (a.empty() || b.empty()) return {};
  MP r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return mreduce(r, M);
}

// Division by a monic divisor, exact over Z/M.
std::pair<MP, MP> mdivmod_monic(const MP& f, const MP& g, const BigInt& M) {
  if (g.empty() || g.back() != 1) throw std::logic_error("mdivmod_monic needs a monic divisor");
  MP r = f;
  MP q(mdeg(f) >= mdeg(g) ? mdeg(f) - mdeg(g) + 1 : 0, BigInt(0));
  while (!r.empty() && mdeg(r) >= mdeg(g)) {
    std::size_t shift = mdeg(r) - mdeg(g);
    BigInt c = r.back();
    q[shift] = c;
    MP sub(shift + g.size(), BigInt(0));
    for (std::size_t i = 0; i < g.size(); ++i) sub[shift + i] = mod_floor(g[i] * c, M);
    r = msub(r, sub, M);
  }
  mnorm(q);
  return {q, r};
}

MP rat_poly_mod(const PolyRat& f, const BigInt& M, const BigInt& p) {
  MP v(f.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational& c = f.coeff(i);
    BigInt g;
    mpz_gcd(g.get_mpz_t(), c.get_den().get_mpz_t(), p.get_mpz_t());
    if (g != 1)
      throw BadReduction(i, "coefficient of x^" + std::to_string(i) +
                                " is not integral at " + p.get_str());
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), M.get_mpz_t());
    v[i] = mod_floor(c.get_num() * inv, M);
  }
  mnorm(v);
  return v;
}

MP from_fp(const PolyFp& f) {
  MP v(f.coeffs().begin(), f.coeffs().end());
  return v;
}

}  // namespace

HenselPair hensel_pair_lift(const PolyRat& f, const BigInt& p, const PolyFp& bbar,
                            const PolyFp& gbar, unsigned m) {
  if (m < 1) throw std::domain_error("hensel_pair_lift: target exponent must be >= 1");
  if (!is_prime(p)) throw std::domain_error("hensel_pair_lift: modulus not prime");
  if (bbar.modulus() != p || gbar.modulus() != p)
    throw std::domain_error("hensel_pair_lift: factor pair has wrong modulus");
  if (!f.is_monic()) throw std::domain_error("hensel_pair_lift: f must be monic");
  if (!bbar.is_monic() || !gbar.is_monic())
    throw std::domain_error("hensel_pair_lift: factor pair must be monic");
  if (!(bbar * gbar == reduce_mod(f, p)))
    throw std::domain_error("hensel_pair_lift: pair does not multiply to f mod p");
  FpEgcd bez = egcd(gbar, bbar);
  if (bez.g.degree() != 0)
    throw std::domain_error("hensel_pair_lift: factor pair is not coprime mod p");

  BigInt P = pow_int(p, m);
  HenselPair out{p, m, P, {}, {}};

  if (gbar.degree() == 0) {  // (f, 1)
    out.B = rat_poly_mod(f, P, p);
    out.G = {BigInt(1)};
    return out;
  }
  if (bbar.degree() == 0) {  // (1, f)
    out.B = {BigInt(1)};
    out.G = rat_poly_mod(f, P, p);
    return out;
  }

  // Track h := bbar (kept monic), g := gbar, with s*g + t*h = 1.
  BigInt q = p;
  MP h = from_fp(bbar), g = from_fp(gbar);
  MP s = from_fp(bez.s), t = from_fp(bez.t);
  while (q < P) {
    BigInt q2 = q * q;
    MP fq = rat_poly_mod(f, q2, p);
    MP e = msub(fq, mmul(g, h, q2), q2);
    auto [qq, r] = mdivmod_monic(mmul(s, e, q2), h, q2);
    g = madd(g, madd(mmul(t, e, q2), mmul(qq, g, q2), q2), q2);
    h = madd(h, r, q2);
    MP b = msub(madd(mmul(s, g, q2), mmul(t, h, q2), q2), MP{BigInt(1)}, q2);
    auto [cc, dd] = mdivmod_monic(mmul(s, b, q2), h, q2);
    s = msub(s, dd, q2);
    t = msub(t, madd(mmul(t, b, q2), mmul(cc, g, q2), q2), q2);
    q = q2;
  }

  out.B = mreduce(h, P);
  MP fP = rat_poly_mod(f, P, p);
  auto [G, rem] = mdivmod_monic(fP, out.B, P);
  if (!rem.empty()) throw std::logic_error("hensel_pair_lift: lifted factor does not divide");
  out.G = G;
  return out;
}

}  // namespace odoni
