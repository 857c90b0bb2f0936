#include "odoni/exact.hpp"

#include <algorithm>
#include <map>

namespace odoni {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return make_rational(BigInt(s), 1);
  return make_rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

std::string rational_to_string(const Rational& a) {
  if (a.get_den() == 1) return a.get_num().get_str();
  return a.get_num().get_str() + "/" + a.get_den().get_str();
}

PlusMinus pm_decompose(const Rational& alpha) {
  if (alpha == 0) throw std::domain_error("pm_decompose: zero has no plus/minus decomposition");
  BigInt num = alpha.get_num();   // canonical: den > 0, reduced
  BigInt den = alpha.get_den();
  if (num > 0) return {num, den};
  return {-num, -den};
}

Rational pm_reconstruct(const PlusMinus& pm) { return make_rational(pm.plus, pm.minus); }

namespace {

bool miller_rabin_witness(const BigInt& n, const BigInt& nm1, const BigInt& d, unsigned long r,
                          const BigInt& a) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return false;
  for (unsigned long i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == nm1) return false;
  }
  return true;  // composite witness
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static const unsigned long small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned long p : small_primes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  BigInt two_64;
  mpz_ui_pow_ui(two_64.get_mpz_t(), 2, 64);
  if (n < two_64) {
    // Deterministic for n < 2^64 with the first twelve prime bases.
    BigInt nm1 = n - 1;
    BigInt d = nm1;
    unsigned long r = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), BigInt(2).get_mpz_t());
    for (unsigned long a : small_primes) {
      if (miller_rabin_witness(n, nm1, d, r, a)) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 32) > 0;
}

long vp_int(const BigInt& m, const BigInt& p) {
  if (m == 0) throw std::domain_error("vp_int of zero");
  BigInt rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

Valuation vp(const Rational& alpha, const BigInt& p) {
  if (!is_prime(p)) throw std::domain_error("vp: modulus " + p.get_str() + " is not prime");
  if (alpha == 0) return Valuation::infinity();
  return Valuation::finite(vp_int(alpha.get_num(), p) - vp_int(alpha.get_den(), p));
}

bool is_perfect_square(const BigInt& m) {
  if (m < 0) return false;
  return mpz_perfect_square_p(m.get_mpz_t()) != 0;
}

BigInt Factorization::replay() const {
  BigInt prod = cofactor;
  for (const auto& [p, e] : primes) prod *= pow_int(p, e);
  return prod;
}

namespace {

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor
// of n, or 0 when the iteration budget runs out. `iters` is decremented by
// the number of squarings performed.
BigInt brent_rho(const BigInt& n, unsigned long c, unsigned long& iters) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  BigInt y = 2, g = 1, q = 1, x, ys;
  unsigned long r = 1;
  const unsigned long block = 64;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) {
      if (iters == 0) return 0;
      --iters;
      y = (y * y + c) % n;
    }
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long steps = std::min(block, r - k);
      for (unsigned long i = 0; i < steps; ++i) {
        if (iters == 0) return 0;
        --iters;
        y = (y * y + c) % n;
        q = (q * abs(x - y)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += steps;
    }
    r <<= 1;
  }
  if (g == n) {
    // Backtrack one step at a time.
    do {
      if (iters == 0) return 0;
      --iters;
      ys = (ys * ys + c) % n;
      BigInt diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n) return 0;  // this c failed; caller retries with the next one
  return g;
}

}  // namespace

Factorization factor(const BigInt& m, const FactorBudget& budget) {
  if (m < 1) throw std::domain_error("factor: input must be >= 1");
  Factorization out;
  if (m == 1) return out;

  std::map<BigInt, unsigned long> found;
  BigInt rest = m;

  auto take_prime = [&](const BigInt& p) {
    unsigned long e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    found[p] += e;
  };

  if (!budget.disabled() && budget.trial_bound >= 2) {
    if (mpz_even_p(rest.get_mpz_t())) take_prime(2);
    for (unsigned long d = 3; d <= budget.trial_bound && rest > 1; d += 2) {
      BigInt dd(d);
      if (dd * dd > rest) break;
      if (mpz_divisible_p(rest.get_mpz_t(), dd.get_mpz_t())) take_prime(dd);
    }
  }

  // Split what remains with rho; composites that resist the budget pile up
  // into the cofactor.
  unsigned long iters = budget.rho_iterations;
  std::vector<std::pair<BigInt, unsigned long>> pending;  // (value, multiplicity)
  BigInt incomplete = 1;
  if (rest > 1) pending.push_back({rest, 1});
  while (!pending.empty()) {
    auto [v, mult] = pending.back();
    pending.pop_back();
    if (v == 1) continue;
    if (is_prime(v)) {
      found[v] += mult;
      continue;
    }
    if (mpz_perfect_power_p(v.get_mpz_t())) {
      // v = root^e for some prime e; peel one exponent layer.
      for (unsigned long e = 2; e <= mpz_sizeinbase(v.get_mpz_t(), 2); ++e) {
        BigInt root;
        if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), e) != 0) {
          pending.push_back({root, mult * e});
          break;
        }
      }
      continue;
    }
    BigInt d = 0;
    for (unsigned long c = 1; c <= 24 && iters > 0; ++c) {
      d = brent_rho(v, c, iters);
      if (d != 0) break;
    }
    if (d == 0) {
      incomplete *= pow_int(v, mult);
      continue;
    }
    pending.push_back({d, mult});
    pending.push_back({v / d, mult});
  }

  for (auto& [p, e] : found) out.primes.push_back({p, e});
  out.cofactor = incomplete;
  return out;
}

BigInt pow_int(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace odoni
