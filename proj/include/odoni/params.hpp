#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odoni/exact.hpp"

namespace odoni {

/// Parameters of the family f(X) = X^a (X - A)^(n-a) + A over a base field
/// abstracted by its finite set of ramified primes.
struct OdoniParams {
  unsigned n = 2;
  unsigned a = 1;
  Rational A;
  std::vector<BigInt> s_ram;
};

/// Which of the three exponent rules n falls under.
enum class ARule { kSmallN, kSevenMod8, kPrimeComplement };
ARule a_rule(unsigned n);

/// a = 1 when n <= 6 or n = 7 mod 8, otherwise the smallest a < n/2 with
/// n - a prime (exists by Bertrand).
unsigned choose_a(unsigned n);

struct HypothesisReport {
  bool a1 = false;   // vp(A) > 0 at every ramified prime
  bool a2 = false;   // witness p0 unramified, prime to n, vp0(A) = 1
  bool a3 = false;   // A^(n-1) (a/n)^a ((n-a)/n)^(n-a) > 2, A > 0
  bool a4 = false;   // (n-1) v2(A) >= 3 + n v2(n)
  bool a5 = false;   // gcd(A+, n) = 2^(v2(n))
  bool a6 = false;   // gcd(A-, a(a-n)) = 1
  bool a699 = false; // witness pinf > n unramified with vpinf(A) = -1
  bool a7 = false;   // n even -> A- != +-1 mod 8
  std::optional<BigInt> p0;
  std::optional<BigInt> pinf;
  std::string first_failure;  // empty iff valid
  bool valid() const { return first_failure.empty(); }
};

/// Checks every hypothesis exactly (integer/rational arithmetic only).
/// Failures are verdicts, never errors. Witness primes are located by
/// factoring A+ / A- with the given budget.
HypothesisReport check_hypotheses(const OdoniParams& params, const FactorBudget& budget = {});

/// Verifies a recorded witness pair against the hypotheses without any
/// factoring (used by certificate re-verification).
bool recheck_with_witnesses(const OdoniParams& params, const BigInt& p0, const BigInt& pinf);

struct SearchResult {
  Rational A;
  HypothesisReport report;
};

/// Enumerates structured candidates A = 2^e * w * p0 * u / (pinf * d) in
/// increasing height max(A+, |A-|) and returns the first `count` that pass
/// check_hypotheses. Deterministic. May return fewer than `count`.
std::vector<SearchResult> search_A(unsigned n, unsigned a, const std::vector<BigInt>& s_ram,
                                   const BigInt& height_bound, unsigned count);

/// A_x = ((x + M)/x) A0, exactly.
Rational perturb(const Rational& A0, const BigInt& M, const BigInt& x);

void validate_params(const OdoniParams& params);

}  // namespace odoni
