#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "odoni/exact.hpp"

namespace odoni {

/// Thrown by reduce_mod when a coefficient denominator vanishes mod p.
struct BadReduction : std::domain_error {
  std::size_t coeff_index;
  BadReduction(std::size_t i, const std::string& what)
      : std::domain_error(what), coeff_index(i) {}
};

/// Dense univariate polynomial over Q, coefficients indexed by degree,
/// trailing zeros stripped. Degree of the zero polynomial is -1.
class PolyRat {
 public:
  PolyRat() = default;
  explicit PolyRat(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static PolyRat zero() { return PolyRat(); }
  static PolyRat constant(const Rational& c) { return PolyRat({c}); }
  static PolyRat x() { return PolyRat({Rational(0), Rational(1)}); }
  static PolyRat monomial(const Rational& c, std::size_t i);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const Rational& coeff(std::size_t i) const;
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational evaluate(const Rational& x) const;

  PolyRat operator-() const;
  friend PolyRat operator+(const PolyRat& a, const PolyRat& b);
  friend PolyRat operator-(const PolyRat& a, const PolyRat& b);
  friend PolyRat operator*(const PolyRat& a, const PolyRat& b);
  friend PolyRat operator*(const Rational& s, const PolyRat& a);
  bool operator==(const PolyRat& o) const = default;

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<Rational> c_;
};

/// Hard cap on coefficient counts produced by products/compositions.
inline constexpr std::size_t kMaxPolyCoeffs = 1000001;

PolyRat compose(const PolyRat& f, const PolyRat& g);
PolyRat iterate(const PolyRat& f, unsigned k);  // f^(0) = X, f^(k) = f o f^(k-1)
PolyRat derivative(const PolyRat& f);
std::pair<PolyRat, PolyRat> divmod(const PolyRat& f, const PolyRat& g);
PolyRat poly_gcd(const PolyRat& f, const PolyRat& g);  // monic, gcd(0,0) = 0

/// Resultant of f and g via the integer subresultant PRS after clearing
/// denominators (exact; no floating point, no root finding).
Rational resultant(const PolyRat& f, const PolyRat& g);

/// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f); deg f >= 1 required.
Rational discriminant(const PolyRat& f);

/// Dense polynomial over Z/p (p prime), coefficients canonical in [0, p).
class PolyFp {
 public:
  explicit PolyFp(BigInt p) : p_(std::move(p)) {}
  PolyFp(BigInt p, std::vector<BigInt> coeffs) : p_(std::move(p)), c_(std::move(coeffs)) {
    for (auto& c : c_) c = mod_floor(c, p_);
    normalize();
  }
  static PolyFp x(const BigInt& p) { return PolyFp(p, {0, 1}); }
  static PolyFp constant(const BigInt& p, const BigInt& c) { return PolyFp(p, {c}); }

  const BigInt& modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_one() const { return degree() == 0 && c_[0] == 1; }
  const BigInt& coeff(std::size_t i) const;
  const BigInt& leading() const;
  const std::vector<BigInt>& coeffs() const { return c_; }

  BigInt evaluate(const BigInt& x) const;
  PolyFp derivative() const;

  friend PolyFp operator+(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator-(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator*(const PolyFp& a, const PolyFp& b);
  PolyFp scaled(const BigInt& s) const;
  bool operator==(const PolyFp& o) const = default;

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  void check_same(const PolyFp& o) const;
  BigInt p_;
  std::vector<BigInt> c_;
};

std::pair<PolyFp, PolyFp> divmod(const PolyFp& f, const PolyFp& g);
PolyFp gcd(const PolyFp& f, const PolyFp& g);  // monic
/// s*a + t*b = g with g the monic gcd.
struct FpEgcd {
  PolyFp g, s, t;
};
FpEgcd egcd(const PolyFp& a, const PolyFp& b);
PolyFp pow_mod(const PolyFp& base, const BigInt& e, const PolyFp& mod);

/// unit * prod factors[i]^mult[i] == input; factors monic irreducible,
/// pairwise distinct, sorted by (degree, coefficients).
struct FactorizationFp {
  BigInt unit;
  std::vector<std::pair<PolyFp, unsigned>> factors;
  PolyFp replay(const BigInt& p) const;
};

/// Seeded randomness handle for equal-degree splitting; never shared
/// between concurrent tasks.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  BigInt below(const BigInt& bound);  // uniform in [0, bound)
 private:
  std::mt19937_64 eng_;
};

/// p prime required; p must divide no coefficient denominator.
PolyFp reduce_mod(const PolyRat& f, const BigInt& p);

/// Complete factorization (squarefree split + distinct-degree +
/// Cantor-Zassenhaus equal-degree); deterministic for a fixed seed.
FactorizationFp factor_mod_p(const PolyFp& f, Rng& rng);

/// Hensel lift of a coprime monic pair (bbar, gbar) with bbar*gbar = f mod p
/// to B*G = f mod p^m. Coefficients reported mod p^m.
struct HenselPair {
  BigInt p;
  unsigned m;
  BigInt modulus;  // p^m
  std::vector<BigInt> B, G;
};
HenselPair hensel_pair_lift(const PolyRat& f, const BigInt& p, const PolyFp& bbar,
                            const PolyFp& gbar, unsigned m);

}  // namespace odoni
