#include "odoni/params.hpp"

#include <algorithm>
#include <set>

namespace odoni {

namespace {

long v2_of_uint(unsigned n) {
  long v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  return v;
}

BigInt gcd_z(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

ARule a_rule(unsigned n) {
  if (n <= 6) return ARule::kSmallN;
  if (n % 8 == 7) return ARule::kSevenMod8;
  return ARule::kPrimeComplement;
}

unsigned choose_a(unsigned n) {
  if (n < 2) throw std::domain_error("choose_a requires n >= 2");
  switch (a_rule(n)) {
    case ARule::kSmallN:
    case ARule::kSevenMod8:
      return 1;
    case ARule::kPrimeComplement:
      for (unsigned a = 1; 2 * a < n; ++a) {
        if (is_prime(BigInt(n - a))) return a;
      }
      throw std::logic_error("no admissible a found (contradicts Bertrand)");
  }
  throw std::logic_error("unreachable");
}

void validate_params(const OdoniParams& p) {
  if (p.n < 2) throw std::domain_error("params: n must be >= 2");
  if (p.a < 1 || p.a >= p.n) throw std::domain_error("params: need 1 <= a < n");
  for (const auto& q : p.s_ram)
    if (!is_prime(q)) throw std::domain_error("params: s_ram entry " + q.get_str() + " is not prime");
}

HypothesisReport check_hypotheses(const OdoniParams& params, const FactorBudget& budget) {
  validate_params(params);
  HypothesisReport rep;
  const unsigned n = params.n;
  const unsigned a = params.a;
  const Rational& A = params.A;
  if (A == 0) {
    rep.first_failure = "A.2";  // no prime has vp(A) = 1
    return rep;
  }
  PlusMinus pm = pm_decompose(A);
  BigInt A_plus = pm.plus;
  BigInt A_minus_abs = abs(pm.minus);
  std::set<BigInt> ram(params.s_ram.begin(), params.s_ram.end());

  // (A.1) positive valuation at every ramified prime.
  rep.a1 = true;
  for (const auto& q : params.s_ram) {
    Valuation v = vp(A, q);
    if (v.is_infinity() || v.value() <= 0) {
      rep.a1 = false;
      break;
    }
  }

  // (A.2) a prime p0 outside the ramified set, prime to n, with vp0(A) = 1.
  Factorization fplus = factor(A_plus, budget);
  for (const auto& [q, e] : fplus.primes) {
    if (e != 1) continue;
    if (ram.count(q)) continue;
    if (mpz_divisible_p(BigInt(n).get_mpz_t(), q.get_mpz_t())) continue;
    rep.p0 = q;
    break;
  }
  rep.a2 = rep.p0.has_value();

  // (A.3) in the cleared-denominator exact form, with the positivity guard
  // that makes it equivalent to the real inequality.
  {
    Rational lhs(1);
    for (unsigned i = 0; i + 1 < n; ++i) lhs *= A;
    Rational factor_a = make_rational(a, n);
    Rational factor_na = make_rational(n - a, n);
    for (unsigned i = 0; i < a; ++i) lhs *= factor_a;
    for (unsigned i = 0; i < n - a; ++i) lhs *= factor_na;
    rep.a3 = (A > 0) && (lhs > 2);
  }

  // (A.4) as an integer inequality.
  {
    long v2A = vp(A, 2).value();
    rep.a4 = static_cast<long>(n - 1) * v2A >= 3 + static_cast<long>(n) * v2_of_uint(n);
  }

  // (A.5)
  {
    BigInt expected = pow_int(2, v2_of_uint(n));
    rep.a5 = gcd_z(A_plus, BigInt(n)) == expected;
  }

  // (A.6)
  rep.a6 = gcd_z(A_minus_abs, BigInt(a) * BigInt(n - a)) == 1;

  // (A.699) a prime pinf > n outside the ramified set with vpinf(A) = -1.
  Factorization fminus = factor(A_minus_abs, budget);
  for (const auto& [q, e] : fminus.primes) {
    if (e != 1) continue;
    if (q <= n) continue;
    if (ram.count(q)) continue;
    rep.pinf = q;
    break;
  }
  rep.a699 = rep.pinf.has_value();

  // (A.7)
  if (n % 2 == 0) {
    BigInt r = mod_floor(pm.minus, 8);
    rep.a7 = (r != 1 && r != 7);
  } else {
    rep.a7 = true;
  }

  if (!rep.a1) rep.first_failure = "A.1";
  else if (!rep.a2) rep.first_failure = fplus.complete() ? "A.2" : "A.2 (factor budget exhausted)";
  else if (!rep.a3) rep.first_failure = "A.3";
  else if (!rep.a4) rep.first_failure = "A.4";
  else if (!rep.a5) rep.first_failure = "A.5";
  else if (!rep.a6) rep.first_failure = "A.6";
  else if (!rep.a699) rep.first_failure = fminus.complete() ? "A.699" : "A.699 (factor budget exhausted)";
  else if (!rep.a7) rep.first_failure = "A.7";
  return rep;
}

bool recheck_with_witnesses(const OdoniParams& params, const BigInt& p0, const BigInt& pinf) {
  validate_params(params);
  if (params.A == 0) return false;
  std::set<BigInt> ram(params.s_ram.begin(), params.s_ram.end());
  if (!is_prime(p0) || !is_prime(pinf)) return false;
  if (ram.count(p0) || ram.count(pinf)) return false;
  if (mpz_divisible_p(BigInt(params.n).get_mpz_t(), p0.get_mpz_t())) return false;
  if (pinf <= params.n) return false;
  Valuation v0 = vp(params.A, p0);
  Valuation vi = vp(params.A, pinf);
  if (v0.is_infinity() || v0.value() != 1) return false;
  if (vi.is_infinity() || vi.value() != -1) return false;
  // Remaining hypotheses are witness-free computations.
  OdoniParams q = params;
  HypothesisReport rep = check_hypotheses(q, FactorBudget{0, 0});
  return rep.a1 && rep.a3 && rep.a4 && rep.a5 && rep.a6 && rep.a7;
}

std::vector<SearchResult> search_A(unsigned n, unsigned a, const std::vector<BigInt>& s_ram,
                                   const BigInt& height_bound, unsigned count) {
  if (n < 2 || a < 1 || a >= n) throw std::domain_error("search_A: need n >= 2, 1 <= a < n");
  std::set<BigInt> ram(s_ram.begin(), s_ram.end());
  for (const auto& q : s_ram)
    if (!is_prime(q)) throw std::domain_error("search_A: s_ram entry not prime");

  // Required ramified part of the numerator. An odd ramified prime dividing n
  // makes (A.1) and (A.5) contradictory, so nothing can be found.
  BigInt w = 1;
  for (const auto& q : s_ram) {
    if (q == 2) continue;  // covered by the forced 2-power
    if (mpz_divisible_p(BigInt(n).get_mpz_t(), q.get_mpz_t())) return {};
    w *= q;
  }

  long v2n = 0;
  for (unsigned m = n; m % 2 == 0; m /= 2) ++v2n;
  // Minimal e with (n-1) e >= 3 + n v2(n).
  long e_min = (3 + static_cast<long>(n) * v2n + static_cast<long>(n) - 2) /
               (static_cast<long>(n) - 1);

  auto admissible_p0 = [&](const BigInt& q) {
    return !ram.count(q) && !mpz_divisible_p(BigInt(n).get_mpz_t(), q.get_mpz_t());
  };
  auto admissible_pinf = [&](const BigInt& q) {
    return q > n && !ram.count(q) &&
           gcd_z(q, BigInt(a) * BigInt(n - a)) == 1;
  };

  std::vector<BigInt> p0_pool, pinf_pool;
  for (BigInt q = 3; p0_pool.size() < 8 || pinf_pool.size() < 8; q += 2) {
    if (!is_prime(q)) continue;
    if (p0_pool.size() < 8 && admissible_p0(q)) p0_pool.push_back(q);
    if (pinf_pool.size() < 8 && admissible_pinf(q)) pinf_pool.push_back(q);
    if (q > 1000) break;  // plenty for desk-scale heights
  }

  struct Cand {
    BigInt height, num, den;
    bool operator<(const Cand& o) const {
      if (height != o.height) return height < o.height;
      if (num != o.num) return num < o.num;
      return den < o.den;
    }
    bool operator==(const Cand& o) const { return num == o.num && den == o.den; }
  };
  std::vector<Cand> cands;
  for (long e = e_min; e <= e_min + 4; ++e) {
    BigInt pow2 = pow_int(2, static_cast<unsigned long>(e));
    if (pow2 * w > height_bound) break;
    for (const auto& p0 : p0_pool) {
      BigInt base = pow2 * w * p0;
      if (base > height_bound) continue;
      for (unsigned long u = 1; u <= 47; u += 2) {
        if (gcd_z(BigInt(u), BigInt(n) * p0 * w) != 1) continue;
        BigInt num = base * u;
        if (num > height_bound) break;
        for (const auto& pinf : pinf_pool) {
          if (gcd_z(num, pinf) != 1) continue;
          for (unsigned long d = 1; d <= 47; d += 2) {
            BigInt den = pinf * d;
            if (den > height_bound) break;
            if (gcd_z(BigInt(d), pinf * BigInt(a) * BigInt(n - a)) != 1) continue;
            if (gcd_z(num, den) != 1) continue;
            cands.push_back({std::max(num, den), num, den});
          }
        }
      }
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  std::vector<SearchResult> out;
  for (const auto& c : cands) {
    OdoniParams params{n, a, make_rational(c.num, c.den), s_ram};
    HypothesisReport rep = check_hypotheses(params);
    if (rep.valid()) {
      out.push_back({params.A, std::move(rep)});
      if (out.size() >= count) break;
    }
  }
  return out;
}

Rational perturb(const Rational& A0, const BigInt& M, const BigInt& x) {
  if (x < 1) throw std::domain_error("perturb: x must be a positive integer");
  if (M < 1) throw std::domain_error("perturb: M must be a positive integer");
  return make_rational(x + M, x) * A0;
}

}  // namespace odoni
