#include "odoni/certificates.hpp"

#include <algorithm>

namespace odoni {

namespace {

BigInt gcd_z(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Rational pow_rat(const Rational& b, unsigned long e) {
  Rational r(1);
  for (unsigned long i = 0; i < e; ++i) r *= b;
  return r;
}

unsigned long odd_part(unsigned n) {
  while (n % 2 == 0) n /= 2;
  return n;
}

}  // namespace

PolyRat build_poly(const OdoniParams& params) {
  validate_params(params);
  PolyRat xa = PolyRat::monomial(Rational(1), params.a);
  PolyRat lin({-params.A, Rational(1)});
  PolyRat pw = PolyRat::constant(Rational(1));
  for (unsigned i = 0; i < params.n - params.a; ++i) pw = pw * lin;
  return xa * pw + PolyRat::constant(params.A);
}

EisensteinCert certify_eisenstein(const OdoniParams& params, unsigned k_max) {
  EisensteinCert cert;
  cert.k_max = k_max;
  HypothesisReport rep = check_hypotheses(params);
  if (!rep.valid()) {
    cert.reason = "hypotheses failed at " + rep.first_failure;
    return cert;
  }
  cert.p0 = *rep.p0;
  PolyRat f = build_poly(params);
  try {
    PolyFp fbar = reduce_mod(f, cert.p0);
    std::vector<BigInt> xn(params.n + 1, BigInt(0));
    xn[params.n] = 1;
    if (!(fbar == PolyFp(cert.p0, xn))) {
      cert.reason = "f is not X^n mod p0";
      return cert;
    }
    PolyRat fk = PolyRat::x();
    bool all = true;
    for (unsigned k = 1; k <= k_max; ++k) {
      fk = compose(f, fk);
      bool ok = is_eisenstein(fk, cert.p0);
      cert.verified.push_back(ok);
      all = all && ok;
    }
    cert.valid = all;
    if (!all) cert.reason = "some iterate is not Eisenstein at p0";
  } catch (const std::domain_error& e) {
    cert.valid = false;
    cert.reason = std::string("reduction failure at p0: ") + e.what();
  }
  return cert;
}

std::vector<OrbitRecord> critical_orbit(const OdoniParams& params, unsigned k) {
  validate_params(params);
  if (k < 1) throw std::domain_error("critical_orbit requires k >= 1");
  if (params.A == 0) throw std::domain_error("critical_orbit requires A != 0");
  const unsigned n = params.n;
  const unsigned a = params.a;
  PlusMinus Apm = pm_decompose(params.A);
  BigInt nAA = BigInt(n) * abs(Apm.minus) * Apm.plus;
  BigInt n2(odd_part(n));

  std::vector<OrbitRecord> out;
  Rational c = make_rational(a, n);
  Rational An1 = pow_rat(params.A, n - 1);
  for (unsigned j = 1; j <= k; ++j) {
    c = An1 * pow_rat(c, a) * pow_rat(c - 1, n - a) + 1;
    OrbitRecord rec;
    rec.k = j;
    rec.c = c;
    PlusMinus pm = pm_decompose(c);
    rec.ck_plus = pm.plus;
    rec.ck_minus = pm.minus;

    // (i) closed-form denominator with sign.
    unsigned long nk = 1, nk1 = 1;
    for (unsigned i = 0; i < j; ++i) nk *= n;
    for (unsigned i = 0; i + 1 < j; ++i) nk1 *= n;
    BigInt expected = pow_int(Apm.minus, nk - 1) * pow_int(n2, nk);
    if (((static_cast<unsigned long>(n - a) * nk1) % 2) != 0) expected = -expected;
    rec.denominator_check = (rec.ck_minus == expected);

    // (ii) 2-adic congruence c_k = 1 mod 8.
    rec.v2_of_ck_minus_1 = vp(c - 1, 2);
    rec.v2_check = rec.v2_of_ck_minus_1 >= 3;

    // (iii) numerator coprime to n A- A+.
    rec.gcd_check = gcd_z(rec.ck_plus, nAA) == 1;

    // (iv) numerator not a perfect square.
    rec.square_check = !is_perfect_square(rec.ck_plus);

    out.push_back(std::move(rec));
  }
  return out;
}

std::string orbit_first_failure(const std::vector<OrbitRecord>& records) {
  for (const auto& r : records) {
    std::string where = "k=" + std::to_string(r.k) + ": ";
    if (!r.denominator_check) return where + "denominator";
    if (!r.v2_check) return where + "v2(c_k - 1) >= 3";
    if (!r.gcd_check) return where + "gcd(c_k+, n A- A+) = 1";
    if (!r.square_check) return where + "c_k+ non-square";
  }
  return "";
}

PkResult find_pk(const OdoniParams& params, unsigned k, const FactorBudget& budget) {
  std::vector<OrbitRecord> orbit = critical_orbit(params, k);
  std::string bad = orbit_first_failure(orbit);
  if (!bad.empty()) throw std::domain_error("find_pk: invalid orbit (" + bad + ")");
  const BigInt& ckp = orbit.back().ck_plus;
  PkResult res;
  if (budget.disabled()) {
    if (is_perfect_square(ckp)) throw std::logic_error("find_pk: c_k+ is a perfect square");
    res.nonsquare_witness = true;
    return res;
  }
  res.factorization = factor(ckp, budget);
  for (const auto& [q, e] : res.factorization.primes) {
    if (e % 2 == 1) {
      res.pk = q;  // primes are sorted ascending; exponents are exact
      return res;
    }
  }
  if (is_perfect_square(ckp)) throw std::logic_error("find_pk: c_k+ is a perfect square");
  res.nonsquare_witness = true;
  return res;
}

TranspositionCert verify_transposition(const OdoniParams& params, unsigned k, const BigInt& pk) {
  validate_params(params);
  if (!is_prime(pk)) throw std::domain_error("verify_transposition: pk is not prime");
  PlusMinus Apm = pm_decompose(params.A);
  if (gcd_z(pk, BigInt(params.n) * abs(Apm.minus) * Apm.plus) != 1)
    throw std::domain_error("verify_transposition: pk divides n A- A+");

  TranspositionCert cert;
  cert.k = k;
  cert.pk = pk;

  const unsigned n = params.n;
  const unsigned a = params.a;
  Rational theta = Rational(a) * params.A / Rational(n);
  PolyRat f = build_poly(params);
  PolyRat fk = iterate(f, k);
  Rational crit = fk.evaluate(theta);
  long v = (crit == 0) ? -1 : vp(crit, pk).value();  // exact critical value valuation

  // (i) factorization shape mod pk.
  PolyFp fbar = reduce_mod(fk, pk);
  BigInt theta_bar = reduce_mod(PolyRat::constant(theta), pk).coeff(0);
  cert.double_root = theta_bar;
  PolyFp lin(pk, {mod_floor(-theta_bar, pk), BigInt(1)});
  PolyFp g1 = gcd(fbar, fbar.derivative());
  if (v <= 0 || fbar.evaluate(theta_bar) != 0 || !(g1 == lin)) {
    cert.stage = "factor_shape";
    return cert;
  }
  PolyFp bbar = lin * lin;
  auto [gbar, rem] = divmod(fbar, bbar);
  if (!rem.is_zero() || gbar.evaluate(theta_bar) == 0) {
    cert.stage = "factor_shape";
    return cert;
  }
  cert.simple_part_degree = gbar.degree();

  // (ii) Hensel lift to precision v + 1.
  unsigned m = static_cast<unsigned>(v) + 1;
  HenselPair lift;
  try {
    lift = hensel_pair_lift(fk, pk, bbar, gbar, m);
  } catch (const std::exception&) {
    cert.stage = "hensel";
    return cert;
  }

  // (iii) Newton polygon of the shifted lifted quadratic B(X + theta):
  // constant term of valuation exactly v, middle coefficient of valuation
  // > v/2, hence a single segment of slope v/2, non-integral iff v is odd.
  const BigInt& M = lift.modulus;
  BigInt theta_m;
  {
    BigInt den_inv;
    Rational t = theta;
    mpz_invert(den_inv.get_mpz_t(), t.get_den().get_mpz_t(), M.get_mpz_t());
    theta_m = mod_floor(t.get_num() * den_inv, M);
  }
  BigInt beta1 = lift.B.size() > 1 ? lift.B[1] : BigInt(0);
  BigInt beta0 = lift.B.size() > 0 ? lift.B[0] : BigInt(0);
  BigInt b0 = mod_floor(theta_m * theta_m + beta1 * theta_m + beta0, M);
  BigInt b1 = mod_floor(beta1 + 2 * theta_m, M);
  long v0 = (b0 == 0) ? m : vp_int(b0, pk);
  long v1 = (b1 == 0) ? m : vp_int(b1, pk);
  bool single_segment = 2 * v1 > v0;
  if (v0 != v || v % 2 == 0 || !single_segment) {
    cert.stage = "polygon";
    return cert;
  }
  cert.lifted_quadratic_slope = make_rational(v, 2);
  cert.valid = true;
  return cert;
}

bool check_split_unramified(unsigned n, const Rational& B, const BigInt& l) {
  if (n < 2) throw std::domain_error("check_split_unramified: n >= 2 required");
  if (!is_prime(l)) throw std::domain_error("check_split_unramified: l not prime");
  Valuation vB = vp(B, l);
  if (vB.is_infinity() || vB.value() != -1)
    throw std::domain_error("check_split_unramified requires vl(B) = -1");
  if (mpz_divisible_p(BigInt(n - 1).get_mpz_t(), l.get_mpz_t()))
    throw std::domain_error("check_split_unramified requires l prime to n - 1");

  std::vector<Rational> coeffs(n + 1, Rational(0));
  coeffs[0] = 1;
  coeffs[n - 1] = 1;
  coeffs[n] = Rational(1) / B;
  PolyRat S(coeffs);

  PolyFp Sbar = reduce_mod(S, l);
  std::vector<BigInt> want(n, BigInt(0));
  want[0] = 1;
  want[n - 1] = 1;
  if (!(Sbar == PolyFp(l, want))) return false;
  if (gcd(Sbar, Sbar.derivative()).degree() != 0) return false;

  NewtonPolygon np = newton_polygon(S, l);
  std::vector<NewtonSegment> expect = {{Rational(0), n - 1}, {Rational(1), 1}};
  return np.segments == expect;
}

TameInfinityCert certify_tame_infinity(const OdoniParams& params, unsigned k_max) {
  TameInfinityCert cert;
  cert.k_max = k_max;
  HypothesisReport rep = check_hypotheses(params);
  if (!rep.valid()) {
    cert.reason = "hypotheses failed at " + rep.first_failure;
    return cert;
  }
  cert.pinf = *rep.pinf;
  const unsigned n = params.n;
  const unsigned a = params.a;

  // Expected inertia orbit sizes.
  for (unsigned k = 1; k <= k_max; ++k) {
    unsigned long e = a > 1 ? k : (k >= 1 ? k - 1 : 0);
    cert.e_k.push_back(pow_int(BigInt(n - a), e));
  }

  // Ladder of valuations: v(eps_0) = 0 and
  // v(eps_i) = (v(eps_(i-1)) + n - 1)/(n - a), certified level by level by a
  // Newton polygon in valuation space: g_i = A^n (1+X)^a X^(n-a) + eps_(i-1) A
  // has anchors (0, v(eps_(i-1)) - 1) and (n-a+j, -n) for 0 <= j <= a, since
  // v(A) = -1 at pinf and the binomials are units (pinf > n).
  bool all_ok = true;
  Rational veps(0);
  Rational sum(0);
  for (unsigned i = 1; i <= k_max; ++i) {
    TameLevel level;
    level.eps_prev_valuation = veps;
    std::vector<std::pair<long, Rational>> anchors;
    anchors.push_back({0, veps - 1});
    for (unsigned j = 0; j <= a; ++j) anchors.push_back({static_cast<long>(n - a + j), Rational(-static_cast<long>(n))});
    auto segs = lower_hull_segments(anchors);
    Rational expected_val = (veps + Rational(n - 1)) / Rational(n - a);
    std::vector<NewtonSegment> expect = {{-expected_val, n - a}, {Rational(0), a}};
    level.ok = (segs == expect);
    level.zero_valuation_roots = level.ok ? a : 0;
    level.positive_valuation = expected_val;
    level.positive_count = level.ok ? (n - a) : 0;
    all_ok = all_ok && level.ok;
    cert.levels.push_back(level);

    veps = expected_val;
    cert.eps_valuations.push_back(veps);
    sum += make_rational(n - 1, 1) / pow_rat(Rational(n - a), i);
    cert.r_valuations.push_back(Rational(1) + sum);
  }

  if (a == 1) {
    cert.split_unramified = check_split_unramified(n, params.A, cert.pinf);
    all_ok = all_ok && cert.split_unramified;
  }
  cert.valid = all_ok;
  if (!all_ok && cert.reason.empty()) cert.reason = "polygon mismatch";
  return cert;
}

namespace {

// Exact Lagrange interpolation through (x_i, y_i).
PolyRat lagrange(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  PolyRat acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PolyRat term = PolyRat::constant(ys[i]);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      term = (Rational(1) / (xs[i] - xs[j])) * (term * PolyRat({-xs[j], Rational(1)}));
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace

FamilyDiscReport family_discriminant_check(unsigned n) {
  if (n < 3 || n > 12) throw std::domain_error("family_discriminant_check needs 3 <= n <= 12");
  FamilyDiscReport rep;

  // disc_X(X^n - t X^(n-1) - t) has degree <= 2n - 2 in t; interpolate from
  // 2n + 1 exact evaluations (the specialization is monic in X, so
  // specializing commutes with taking the discriminant).
  std::vector<Rational> xs, ys;
  for (unsigned long t0 = 0; t0 <= 2 * n; ++t0) {
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    c[n - 1] = -Rational(static_cast<long>(t0));
    c[0] = -Rational(static_cast<long>(t0));
    xs.push_back(Rational(static_cast<long>(t0)));
    ys.push_back(discriminant(PolyRat(c)));
  }
  rep.disc_in_t = lagrange(xs, ys);

  // Paper right-hand side: n^n (-t)^(n-1) ((1/n)(((n-1)/n) t)^(n-1) + 1)
  //                      = (-1)^(n-1) [ (n-1)^(n-1) t^(2n-2) + n^n t^(n-1) ].
  {
    std::vector<Rational> c(2 * n - 1, Rational(0));
    Rational s = (n % 2 == 0) ? Rational(-1) : Rational(1);
    c[2 * n - 2] = s * pow_rat(Rational(n - 1), n - 1);
    c[n - 1] = s * pow_rat(Rational(n), n);
    rep.expected_rhs = PolyRat(c);
  }

  if (rep.disc_in_t == rep.expected_rhs)
    rep.sign = 1;
  else if (rep.disc_in_t == -rep.expected_rhs)
    rep.sign = -1;
  else {
    rep.ok = false;
    return rep;
  }

  // Root shape: t = 0 with multiplicity exactly n-1, and the cofactor
  // u + w t^(n-1) with u, w nonzero, whose n-1 simple roots share |.|.
  bool shape = rep.disc_in_t.degree() == static_cast<int>(2 * n - 2);
  for (unsigned i = 0; i < n - 1 && shape; ++i) shape = rep.disc_in_t.coeff(i) == 0;
  shape = shape && rep.disc_in_t.coeff(n - 1) != 0;
  for (unsigned i = n; i < 2 * n - 2 && shape; ++i) shape = rep.disc_in_t.coeff(i) == 0;
  shape = shape && rep.disc_in_t.coeff(2 * n - 2) != 0;
  rep.equal_modulus_roots = shape;
  rep.ok = shape;
  return rep;
}

// ---------------------------------------------------------------------------
// Bundle

bool CertificateBundle::fully_witnessed() const {
  for (const auto& t : transpositions)
    if (!t.pk.has_value()) return false;
  return true;
}

std::vector<unsigned> CertificateBundle::existential_levels() const {
  std::vector<unsigned> out;
  for (const auto& t : transpositions)
    if (t.nonsquare_witness) out.push_back(t.k);
  return out;
}

CertificateBundle make_certificate_bundle(const OdoniParams& params, unsigned k_max,
                                          const FactorBudget& budget, std::uint64_t seed) {
  CertificateBundle b;
  b.params = params;
  b.seed = seed;
  b.version = "0.1.0";
  b.hypotheses = check_hypotheses(params);
  if (!b.hypotheses.valid())
    throw std::domain_error("hypotheses failed at " + b.hypotheses.first_failure);
  b.eisenstein = certify_eisenstein(params, k_max);
  b.tame_infinity = certify_tame_infinity(params, k_max);
  b.orbit = critical_orbit(params, k_max);
  for (unsigned k = 1; k <= k_max; ++k) {
    TranspositionRecord rec;
    rec.k = k;
    PkResult pk = find_pk(params, k, budget);
    if (pk.pk) {
      rec.pk = pk.pk;
      rec.cert = verify_transposition(params, k, *pk.pk);
    } else {
      rec.nonsquare_witness = true;
    }
    b.transpositions.push_back(std::move(rec));
  }
  return b;
}

bool bundle_valid(const CertificateBundle& b) {
  if (!b.hypotheses.valid() || !b.eisenstein.valid || !b.tame_infinity.valid) return false;
  if (!orbit_first_failure(b.orbit).empty()) return false;
  for (const auto& t : b.transpositions) {
    if (t.pk) {
      if (!t.cert || !t.cert->valid) return false;
    } else if (!t.nonsquare_witness) {
      return false;
    }
  }
  return true;
}

}  // namespace odoni
