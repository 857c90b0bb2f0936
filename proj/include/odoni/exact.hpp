#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace odoni {

using BigInt = mpz_class;
using Rational = mpq_class;

/// alpha = plus / minus with plus a positive integer, gcd(plus, minus) = 1;
/// the sign of alpha travels on the minus part, so e.g. -3/4 -> (3, -4).
struct PlusMinus {
  BigInt plus;
  BigInt minus;
};

/// A p-adic valuation: either a finite integer or infinity (valuation of 0).
class Valuation {
 public:
  static Valuation infinity() { return Valuation(true, 0); }
  static Valuation finite(long v) { return Valuation(false, v); }

  bool is_infinity() const { return infinite_; }
  long value() const {
    if (infinite_) throw std::domain_error("infinite valuation has no finite value");
    return v_;
  }
  /// Finite comparison with infinity on top.
  bool operator==(const Valuation& o) const = default;
  bool operator<(const Valuation& o) const {
    if (infinite_) return false;
    if (o.infinite_) return true;
    return v_ < o.v_;
  }
  bool operator>=(long bound) const { return infinite_ || v_ >= bound; }

 private:
  Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
  bool infinite_;
  long v_;
};

/// Canonical rational num/den (den forced positive, reduced).
Rational make_rational(const BigInt& num, const BigInt& den);
/// Parses "num", "num/den" or "-num/den" in base 10.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& a);

PlusMinus pm_decompose(const Rational& alpha);
Rational pm_reconstruct(const PlusMinus& pm);

/// Deterministic Miller-Rabin below 2^64, mpz_probab_prime_p above.
bool is_prime(const BigInt& n);

/// Multiplicity of p in m; m must be nonzero (p assumed prime, unchecked).
long vp_int(const BigInt& m, const BigInt& p);

/// Exact p-adic valuation of a rational; vp(0) = infinity. p must be prime.
Valuation vp(const Rational& alpha, const BigInt& p);

bool is_perfect_square(const BigInt& m);

struct FactorBudget {
  unsigned long trial_bound = 100000;
  unsigned long rho_iterations = 4000000;
  bool disabled() const { return trial_bound == 0 && rho_iterations == 0; }
};

struct Factorization {
  std::vector<std::pair<BigInt, unsigned long>> primes;  // sorted by prime
  BigInt cofactor{1};  // 1 on full success, composite remainder otherwise
  bool complete() const { return cofactor == 1; }
  BigInt replay() const;
};

/// Trial division up to budget.trial_bound, then Brent's rho with a
/// deterministic parameter schedule, at most budget.rho_iterations squarings.
/// Budget exhaustion is reported through the cofactor, never as an error.
Factorization factor(const BigInt& m, const FactorBudget& budget = {});

BigInt pow_int(const BigInt& base, unsigned long exp);
BigInt mod_floor(const BigInt& a, const BigInt& m);  // result in [0, m)

}  // namespace odoni
