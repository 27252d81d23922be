#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mntkit/families.hpp"
#include "mntkit/integer.hpp"
#include "mntkit/intpoly.hpp"
#include "mntkit/pell.hpp"
#include "mntkit/primality.hpp"
#include "mntkit/search.hpp"

namespace mnt {

/// Delta(x) = (w0*x + w1)^2 + w2, checked against u*(4q - t^2).
inline QuadPoly delta_poly(const Family& f) {
  const PellInstance inst = reduce(f);
  QuadPoly delta = inst.delta();
  if (delta != inst.u * (Integer(4) * f.q - square(f.t))) {
    throw InvariantViolation("delta-identity: Delta != u*(4q - t^2)");
  }
  return delta;
}

namespace detail {

/// A quadratic with coefficients reduced mod n, evaluated in 128-bit arithmetic.
struct ModQuad {
  std::uint64_t c2, c1, c0, n;

  ModQuad(const QuadPoly& p, std::uint64_t modulus)
      : c2(mod_u64(p.c2, modulus)), c1(mod_u64(p.c1, modulus)), c0(mod_u64(p.c0, modulus)), n(modulus) {}

  std::uint64_t operator()(std::uint64_t x) const {
    using u128 = unsigned __int128;
    x %= n;
    u128 v = (static_cast<u128>(c2) * x + c1) % n;
    return static_cast<std::uint64_t>((v * x + c0) % n);
  }
};

inline void require_small_prime(std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("p must be prime");
  if (p > 3'000'000'000ULL) throw std::invalid_argument("p too large for local counts");
}

struct LocalPolys {
  QuadPoly q, r, delta;
};

inline LocalPolys local_polys(const Family& f) { return {f.q, f.r, delta_poly(f)}; }

}  // namespace detail

/// #{n in [0, p^2) : (q(n) r(n))^2 Delta(n) = 0 mod p^2}, by exhaustion.
inline std::uint64_t c_p_brute(const Family& f, std::uint64_t p) {
  detail::require_small_prime(p);
  const auto polys = detail::local_polys(f);
  const std::uint64_t n = p * p;
  detail::ModQuad q(polys.q, n), r(polys.r, n), d(polys.delta, n);
  using u128 = unsigned __int128;
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    u128 qr = static_cast<u128>(q(x)) * r(x) % n;
    u128 v = qr * qr % n * d(x) % n;
    if (v == 0) ++count;
  }
  return count;
}

struct LocalCounts {
  std::uint64_t C = 0;    ///< C_p
  std::uint64_t rho = 0;  ///< rho(p)
};

/// C_p and rho(p) in O(p) steps, exact for every prime: residues n0 mod p with
/// p | q(n0) r(n0) contribute all p lifts to C_p; the others contribute the
/// lifts n0 + p*j with p^2 | Delta, found from Delta(n0 + pj) = Delta(n0) + pj*Delta'(n0) mod p^2.
inline LocalCounts local_counts(const Family& f, std::uint64_t p) {
  detail::require_small_prime(p);
  const auto polys = detail::local_polys(f);
  const std::uint64_t n = p * p;
  detail::ModQuad q(polys.q, p), r(polys.r, p), d2(polys.delta, n);
  const QuadPoly& dl = polys.delta;
  detail::ModQuad deriv(QuadPoly{0, 2 * dl.c2, dl.c1}, p);
  LocalCounts out;
  for (std::uint64_t x = 0; x < p; ++x) {
    if (q(x) == 0 || r(x) == 0) {
      out.C += p;
      continue;
    }
    const std::uint64_t dv = d2(x);
    if (dv % p != 0) continue;
    std::uint64_t lifts = 0;
    if (deriv(x) != 0) {
      lifts = 1;
    } else if (dv == 0) {
      lifts = p;
    }
    out.C += lifts;
    out.rho += lifts;
  }
  return out;
}

inline std::uint64_t c_p(const Family& f, std::uint64_t p) {
  // Exhaustion is cheap for small p; beyond that the exact residue count is used.
  if (p <= 2000) return c_p_brute(f, p);
  return local_counts(f, p).C;
}

/// Product of every quantity whose prime divisors break the generic root count:
/// 2, u, w0, the leading coefficients and discriminants of q, r, Delta, and
/// the pairwise resultants. Zero means every prime is treated as exceptional.
inline Integer exceptional_modulus(const Family& f) {
  const PellInstance inst = reduce(f);
  const QuadPoly delta = delta_poly(f);
  Integer e = 2 * inst.u * inst.w0 * f.q.c2 * f.r.c2 * delta.c2;
  e *= discriminant(f.q) * discriminant(f.r) * discriminant(delta);
  e *= resultant(f.q, f.r) * resultant(f.q, delta) * resultant(f.r, delta);
  return abs(e);
}

inline bool is_exceptional(const Integer& modulus, std::uint64_t p) {
  return sgn(modulus) == 0 || divides(Integer(static_cast<unsigned long>(p)), modulus);
}

namespace detail {
/// Number of roots mod an odd prime p of a quadratic whose leading coefficient
/// and discriminant are prime to p.
inline std::uint64_t quadratic_roots_mod_p(const QuadPoly& g, std::uint64_t p) {
  Integer disc = discriminant(g);
  Integer pp = static_cast<unsigned long>(p);
  return static_cast<std::uint64_t>(1 + mpz_legendre(disc.get_mpz_t(), pp.get_mpz_t()));
}
}  // namespace detail

/// C_p = p*(n_q + n_r) + n_Delta from root counts mod p; valid for primes not
/// dividing exceptional_modulus(f).
inline std::uint64_t c_p_by_roots(const Family& f, std::uint64_t p) {
  if (is_exceptional(exceptional_modulus(f), p)) {
    throw std::domain_error("exceptional prime " + std::to_string(p) + ": use the exhaustive count");
  }
  const QuadPoly delta = delta_poly(f);
  return p * (detail::quadratic_roots_mod_p(f.q, p) + detail::quadratic_roots_mod_p(f.r, p)) +
         detail::quadratic_roots_mod_p(delta, p);
}

namespace detail {
inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// #{beta mod p^(2e) : Delta(beta) = 0 mod p^(2e), p does not divide q(beta) r(beta)},
/// by lifting roots one power of p at a time.
inline std::uint64_t rho_prime_power(const LocalPolys& polys, std::uint64_t p, unsigned e) {
  const Integer P = static_cast<unsigned long>(p);
  std::vector<Integer> level;
  for (std::uint64_t x = 0; x < p; ++x) {
    Integer X = static_cast<unsigned long>(x);
    if (divides(P, eval(polys.q, X) * eval(polys.r, X))) continue;
    if (divides(P, eval(polys.delta, X))) level.push_back(X);
  }
  Integer pj = P;
  for (unsigned j = 1; j < 2 * e; ++j) {
    Integer next_mod = pj * P;
    std::vector<Integer> next;
    for (const Integer& x : level) {
      for (std::uint64_t s = 0; s < p; ++s) {
        Integer y = x + pj * static_cast<unsigned long>(s);
        if (divides(next_mod, eval(polys.delta, y))) next.push_back(y);
      }
    }
    level = std::move(next);
    pj = std::move(next_mod);
  }
  return level.size();
}
}  // namespace detail

/// rho(m) = #{beta in [0, m^2) : m^2 | Delta(beta), q(beta) r(beta) prime to m}.
inline std::uint64_t rho_brute(const Family& f, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("m must be positive");
  const auto polys = detail::local_polys(f);
  const auto factors = detail::factor_u64(m);
  const std::uint64_t n = m * m;
  detail::ModQuad d(polys.delta, n);
  std::vector<std::pair<detail::ModQuad, detail::ModQuad>> qr;
  for (const auto& [p, e] : factors) qr.emplace_back(detail::ModQuad(polys.q, p), detail::ModQuad(polys.r, p));
  std::uint64_t count = 0;
  for (std::uint64_t b = 0; b < n; ++b) {
    if (d(b) != 0) continue;
    bool ok = true;
    for (const auto& [qp, rp] : qr) {
      if (qp(b) == 0 || rp(b) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

inline std::uint64_t rho_fn(const Family& f, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("m must be positive");
  if (m <= 2000) return rho_brute(f, m);
  const auto polys = detail::local_polys(f);
  std::uint64_t out = 1;
  for (const auto& [p, e] : detail::factor_u64(m)) {
    out *= detail::rho_prime_power(polys, p, e);
    if (out == 0) break;
  }
  return out;
}

struct AdmissibleClasses {
  Integer w2;
  Integer w2_prime;       ///< product of the odd primes in the square-free part of |w2|
  Integer modulus;        ///< 8 * w2_prime
  Integer discriminant;   ///< fundamental discriminant attached to -w2
  std::vector<Integer> classes;
  Integer expected_count;  ///< 2 * phi(w2_prime)
  bool split = false;      ///< -w2 is a square: Delta factors and every class is admissible
};

inline Integer euler_phi(const Integer& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("phi needs a positive integer");
  Integer rest = n, out = n;
  for (Integer p = 2; p * p <= rest; ++p) {
    if (!divides(p, rest)) continue;
    while (divides(p, rest)) rest /= p;
    out = out / p * (p - 1);
  }
  if (rest > 1) out = out / rest * (rest - 1);
  return out;
}

/// Residues c mod 8*w2' such that -w2 is a square modulo every large prime p = c.
inline AdmissibleClasses admissible_classes(const Family& f) {
  const PellInstance inst = reduce(f);
  if (sgn(inst.w2) == 0) throw std::domain_error("degenerate discriminant");
  AdmissibleClasses out;
  out.w2 = inst.w2;
  const Integer core_abs = squarefree_part(abs(inst.w2)).D;
  out.w2_prime = core_abs;
  while (divides(2, out.w2_prime)) out.w2_prime /= 2;
  out.modulus = 8 * out.w2_prime;
  const Integer core = sgn(inst.w2) < 0 ? core_abs : Integer(-core_abs);  // square class of -w2
  out.discriminant = mod(core, 4) == 1 ? core : Integer(4 * core);
  out.split = out.discriminant == 1;
  out.expected_count = 2 * euler_phi(out.w2_prime);
  for (Integer c = 1; c < out.modulus; c += 2) {
    if (gcd(c, out.modulus) != 1) continue;
    if (mpz_kronecker(out.discriminant.get_mpz_t(), c.get_mpz_t()) == 1) out.classes.push_back(c);
  }
  return out;
}

inline bool admissible(const AdmissibleClasses& a, const Integer& p) {
  const Integer c = mod(p, a.modulus);
  return std::binary_search(a.classes.begin(), a.classes.end(), c);
}

/// Values kept with ~320 extra bits so that 50 printed digits are exact.
inline constexpr unsigned kEulerPrecisionBits = 512;

inline std::string to_decimal(const mpf_class& v, int digits = 50) {
  if (v == 0) return "0";
  mp_exp_t exp = 0;
  std::string s = v.get_str(exp, 10, static_cast<std::size_t>(digits));
  std::string sign;
  if (!s.empty() && s[0] == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  if (exp <= 0) return sign + "0." + std::string(static_cast<std::size_t>(-exp), '0') + s;
  if (static_cast<std::size_t>(exp) >= s.size()) return sign + s + std::string(exp - s.size(), '0');
  return sign + s.substr(0, exp) + "." + s.substr(exp);
}

struct EulerTruncation {
  std::uint64_t P = 0;
  mpf_class S1{0, kEulerPrecisionBits};
  mpf_class S2{0, kEulerPrecisionBits};
  mpf_class S0{0, kEulerPrecisionBits};
};

struct EulerConstants {
  EulerTruncation at_P;
  EulerTruncation at_half;  ///< truncation at P/2, for the convergence delta
  mpf_class delta{0, kEulerPrecisionBits};  ///< |S0(P) - S0(P/2)|
  bool obstructed = false;
  std::vector<std::uint64_t> obstructing_primes;  ///< p with C_p = p^2
};

namespace detail {
struct RationalProduct {
  Integer num = 1;
  Integer den = 1;

  void times(const Integer& n, const Integer& d) {
    num *= n;
    den *= d;
  }
  mpf_class value() const {
    mpf_class n(num, kEulerPrecisionBits), d(den, kEulerPrecisionBits);
    return n / d;
  }
};
}  // namespace detail

/// Truncated products S1, S2 over primes p <= P, and S0 = sqrt(u)/(4|w0|) * S1 * S2.
/// Factors are multiplied as exact rationals; only the final quotient is rounded.
inline EulerConstants euler_constants(const Family& f, std::uint64_t P) {
  if (P < 3) throw std::invalid_argument("Euler truncation bound must be >= 3");
  if (P > 100'000'000ULL) throw std::invalid_argument("Euler truncation bound too large");
  const PellInstance inst = reduce(f);
  const Integer exc = exceptional_modulus(f);
  const QuadPoly delta = delta_poly(f);
  mpf_class scale(inst.u, kEulerPrecisionBits);
  scale = sqrt(scale) / mpf_class(4 * abs(inst.w0), kEulerPrecisionBits);

  EulerConstants out;
  detail::RationalProduct s1, s2;
  const std::uint64_t half = P / 2;
  auto snapshot = [&](std::uint64_t bound) {
    EulerTruncation t;
    t.P = bound;
    if (out.obstructed) return t;
    t.S1 = s1.value();
    t.S2 = s2.value();
    t.S0 = scale * t.S1 * t.S2;
    return t;
  };
  bool half_taken = false;
  for (std::uint32_t p32 : primes_up_to(static_cast<std::uint32_t>(P))) {
    const std::uint64_t p = p32;
    if (!half_taken && p > half) {
      out.at_half = snapshot(half);
      half_taken = true;
    }
    LocalCounts lc;
    if (is_exceptional(exc, p)) {
      lc = local_counts(f, p);
    } else {
      lc.rho = detail::quadratic_roots_mod_p(delta, p);
      lc.C = p * (detail::quadratic_roots_mod_p(f.q, p) + detail::quadratic_roots_mod_p(f.r, p)) + lc.rho;
    }
    const Integer pp = static_cast<unsigned long>(p);
    const Integer local = pp * pp - static_cast<unsigned long>(lc.C);
    if (sgn(local) == 0) {
      out.obstructed = true;
      out.obstructing_primes.push_back(p);
      continue;
    }
    const Integer pm1 = pp - 1;
    s1.times(local, pm1 * pm1);
    s2.times(pm1 * (pp * local + pm1 * pm1 * static_cast<unsigned long>(lc.rho)), pp * pp * local);
  }
  if (!half_taken) out.at_half = snapshot(half);
  out.at_P = snapshot(P);
  out.delta = abs(out.at_P.S0 - out.at_half.S0);
  return out;
}

struct Census {
  std::uint64_t count = 0;          ///< distinct (q, r, t) with D <= z
  std::uint64_t indeterminate = 0;  ///< seeds skipped for an unresolved square-free part
  std::vector<CurveInstance> instances;
};

/// E(z): curves (q, r, t) from seeds |x| <= x_max with D <= z.
inline Census census(const Family& f, const Integer& z, const Integer& x_max, unsigned jobs = 1) {
  Census out;
  if (sgn(z) <= 0) return out;
  SweepResult sw = sweep(f, -x_max, x_max, z, jobs);
  std::set<std::tuple<Integer, Integer, Integer>> seen;
  for (auto& c : sw.instances) {
    if (seen.emplace(c.q, c.r, c.t).second) out.instances.push_back(std::move(c));
  }
  out.count = out.instances.size();
  out.indeterminate = sw.indeterminate.size();
  return out;
}

/// E(z') for each z' in checkpoints, from one census at the largest z.
inline std::vector<std::pair<Integer, std::uint64_t>> census_checkpoints(const Census& c,
                                                                         const std::vector<Integer>& checkpoints) {
  std::vector<std::pair<Integer, std::uint64_t>> out;
  for (const Integer& z : checkpoints) {
    std::uint64_t n = 0;
    for (const auto& inst : c.instances) {
      if (inst.D <= z) ++n;
    }
    out.emplace_back(z, n);
  }
  return out;
}

struct DensityProfile {
  Family family;
  QuadPoly delta;
  Integer u, w0, w1, w2;
  std::map<std::uint64_t, std::uint64_t> C;    ///< C_p for small p
  std::map<std::uint64_t, std::uint64_t> rho;  ///< rho(p) for small p
  AdmissibleClasses classes;
  EulerConstants euler;
};

inline DensityProfile density_profile(const Family& f, std::uint64_t P, std::uint32_t local_bound = 100) {
  DensityProfile d;
  const PellInstance inst = reduce(f);
  d.family = f;
  d.delta = delta_poly(f);
  d.u = inst.u;
  d.w0 = inst.w0;
  d.w1 = inst.w1;
  d.w2 = inst.w2;
  for (std::uint32_t p : primes_up_to(local_bound)) {
    d.C[p] = c_p(f, p);
    d.rho[p] = rho_fn(f, p);
  }
  d.classes = admissible_classes(f);
  d.euler = euler_constants(f, P);
  return d;
}

}  // namespace mnt
