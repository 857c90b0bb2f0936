#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odoni/newton.hpp"
#include "odoni/params.hpp"
#include "odoni/poly.hpp"

namespace odoni {

/// f(X) = X^a (X - A)^(n-a) + A, expanded (monic, degree n, constant term A).
PolyRat build_poly(const OdoniParams& params);

struct EisensteinCert {
  BigInt p0;
  unsigned k_max = 0;
  std::vector<bool> verified;  // verified[k-1] <=> f^(k) Eisenstein at p0
  bool valid = false;
  std::string reason;
};

/// Verifies f = X^n mod p0 and Eisenstein-ness of every iterate up to k_max.
EisensteinCert certify_eisenstein(const OdoniParams& params, unsigned k_max);

struct OrbitRecord {
  unsigned k = 0;
  Rational c;        // c_k = f^(k)(aA/n) / A
  BigInt ck_plus;
  BigInt ck_minus;
  Valuation v2_of_ck_minus_1 = Valuation::finite(0);
  bool denominator_check = false;  // closed form (A-)^(n^k-1) n2^(n^k) (-1)^((n-a)n^(k-1))
  bool v2_check = false;           // v2(c_k - 1) >= 3
  bool gcd_check = false;          // gcd(c_k+, n A- A+) = 1
  bool square_check = false;       // c_k+ not a perfect square
  bool all_checks() const { return denominator_check && v2_check && gcd_check && square_check; }
};

/// Exact critical orbit c_0 = a/n, c_k = A^(n-1) c_(k-1)^a (c_(k-1)-1)^(n-a) + 1,
/// with every per-record identity checked. Records are returned for k = 1..k.
std::vector<OrbitRecord> critical_orbit(const OdoniParams& params, unsigned k);

/// Name of the first failed identity, e.g. "k=2: denominator"; empty if none.
std::string orbit_first_failure(const std::vector<OrbitRecord>& records);

struct PkResult {
  std::optional<BigInt> pk;     // smallest certified prime with odd exponent
  bool nonsquare_witness = false;  // existential fallback when factoring ran out
  Factorization factorization;
};

/// Factors c_k+ within the budget and picks the smallest prime of odd
/// exponent. Zero budget (or exhaustion without an odd-exponent prime)
/// falls back to certifying c_k+ non-square.
PkResult find_pk(const OdoniParams& params, unsigned k, const FactorBudget& budget = {});

struct TranspositionCert {
  unsigned k = 0;
  BigInt pk;
  BigInt double_root;               // aA/n mod pk
  unsigned simple_part_degree = 0;  // degree of the separable cofactor
  Rational lifted_quadratic_slope;  // v/2 with v = vpk(f^(k)(aA/n)), odd
  bool valid = false;
  std::string stage;  // failure tag: factor_shape | hensel | polygon
};

/// (i) f^(k) = (X - aA/n)^2 * (separable, coprime) mod pk, (ii) Hensel-lift
/// the pair to mod pk^(v+1), (iii) the shifted lifted quadratic has a single
/// Newton segment of non-integral slope v/2.
TranspositionCert verify_transposition(const OdoniParams& params, unsigned k, const BigInt& pk);

struct TameLevel {
  Rational eps_prev_valuation;   // v(eps_(i-1)), level input
  unsigned long zero_valuation_roots = 0;  // expect a
  Rational positive_valuation;   // expect (v(eps_(i-1)) + n - 1)/(n - a)
  unsigned long positive_count = 0;        // expect n - a
  bool ok = false;
};

struct TameInfinityCert {
  BigInt pinf;
  unsigned k_max = 0;
  std::vector<Rational> r_valuations;    // predicted v(r_k - A) = 1 + sum (n-1)/(n-a)^i
  std::vector<Rational> eps_valuations;  // see-saw values v(eps_k)
  std::vector<TameLevel> levels;
  std::vector<BigInt> e_k;               // (n-a)^k, or (n-a)^(k-1) when a = 1
  bool split_unramified = false;         // a = 1 branch
  bool valid = false;
  std::string reason;
};

/// Valuation-space verification of the ramification ladder above pinf.
TameInfinityCert certify_tame_infinity(const OdoniParams& params, unsigned k_max);

/// S(X) = B^(-1) X^n + X^(n-1) + 1 reduces to X^(n-1) + 1 mod l, separable
/// there, with Newton segments [(0, n-1), (1, 1)]. Requires vl(B) = -1 and
/// l prime to n - 1.
bool check_split_unramified(unsigned n, const Rational& B, const BigInt& l);

struct FamilyDiscReport {
  bool ok = false;
  int sign = 0;                    // disc = sign * paper RHS
  PolyRat disc_in_t;               // disc_X(X^n - t X^(n-1) - t) as a polynomial in t
  PolyRat expected_rhs;            // n^n (-t)^(n-1) ((1/n)(((n-1)/n) t)^(n-1) + 1)
  bool equal_modulus_roots = false;
};

/// Symbolic-in-t discriminant identity for the one-parameter family,
/// computed by exact evaluation/interpolation over the subresultant route.
FamilyDiscReport family_discriminant_check(unsigned n);

// --------------------------------------------------------------------------
// Bundled certificate (the JSON artifact produced by the CLI).

struct TranspositionRecord {
  unsigned k = 0;
  std::optional<BigInt> pk;
  bool nonsquare_witness = false;
  std::optional<TranspositionCert> cert;  // present iff pk is
};

struct CertificateBundle {
  OdoniParams params;
  HypothesisReport hypotheses;
  EisensteinCert eisenstein;
  TameInfinityCert tame_infinity;
  std::vector<OrbitRecord> orbit;
  std::vector<TranspositionRecord> transpositions;
  std::uint64_t seed = 0;
  std::string version;
  bool fully_witnessed() const;
  std::vector<unsigned> existential_levels() const;
};

/// Runs the whole certificate pipeline. Throws std::domain_error when the
/// hypotheses fail (the caller distinguishes that from stage failures).
CertificateBundle make_certificate_bundle(const OdoniParams& params, unsigned k_max,
                                          const FactorBudget& budget, std::uint64_t seed);

/// True when every certificate in the bundle (re)verifies.
bool bundle_valid(const CertificateBundle& bundle);

}  // namespace odoni
