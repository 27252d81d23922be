#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mntkit/integer.hpp"
#include "mntkit/intpoly.hpp"

namespace mnt {

/// The embedding degrees for which the cyclotomic polynomial has degree 2.
enum class EmbeddingDegree : int { k3 = 3, k4 = 4, k6 = 6 };

inline EmbeddingDegree embedding_degree(long k) {
  switch (k) {
    case 3: return EmbeddingDegree::k3;
    case 4: return EmbeddingDegree::k4;
    case 6: return EmbeddingDegree::k6;
    default: throw std::invalid_argument("unsupported embedding degree " + std::to_string(k) + " (expected 3, 4 or 6)");
  }
}

inline int value(EmbeddingDegree k) { return static_cast<int>(k); }

/// Phi_k(y - 1) = y^2 - eps*y + eps, with eps = 1, 2, 3 for k = 3, 4, 6.
inline int epsilon(EmbeddingDegree k) {
  switch (k) {
    case EmbeddingDegree::k3: return 1;
    case EmbeddingDegree::k4: return 2;
    case EmbeddingDegree::k6: return 3;
  }
  throw std::invalid_argument("unsupported embedding degree");
}

/// Phi_k evaluated at an integer.
inline Integer cyclotomic(EmbeddingDegree k, const Integer& z) {
  switch (k) {
    case EmbeddingDegree::k3: return z * z + z + 1;
    case EmbeddingDegree::k4: return z * z + 1;
    case EmbeddingDegree::k6: return z * z - z + 1;
  }
  throw std::invalid_argument("unsupported embedding degree");
}

/// A curve family (t, r, q) with cofactor h and split factor d, where
/// Phi_k(t - 1) = d*r and q = h*r + t - 1.
struct Family {
  EmbeddingDegree k = EmbeddingDegree::k6;
  Integer h;
  Integer d;
  LinPoly t;
  QuadPoly r;
  QuadPoly q;

  int eps() const { return epsilon(k); }

  /// Group order polynomial n(x) = h*r(x) = q(x) + 1 - t(x).
  QuadPoly order() const { return h * r; }

  friend bool operator==(const Family& l, const Family& r) {
    return l.k == r.k && l.h == r.h && l.d == r.d && l.t == r.t && l.r == r.r && l.q == r.q;
  }
};

/// Phi_k(t(x) - 1) expanded.
inline QuadPoly phi_shifted(EmbeddingDegree k, const LinPoly& t) {
  const Integer e = epsilon(k);
  return {t.a * t.a, t.a * (2 * t.b - e), t.b * t.b - e * t.b + e};
}

struct DrSplit {
  Integer d;
  QuadPoly r;
};

inline DrSplit split_d_r(EmbeddingDegree k, const LinPoly& t) {
  if (sgn(t.a) == 0) throw std::invalid_argument("trace polynomial must have nonzero leading coefficient");
  QuadPoly f = phi_shifted(k, t);
  Integer d = content(f);
  return {d, divide_exact(f, d)};
}

enum class Rejection {
  reducible,            ///< q has a rational root
  common_factor,        ///< every value of q shares a prime
  fixed_prime_divisor,  ///< every value of q*r shares a prime
};

inline const char* to_string(Rejection r) {
  switch (r) {
    case Rejection::reducible: return "reducible";
    case Rejection::common_factor: return "common factor";
    case Rejection::fixed_prime_divisor: return "fixed prime divisor of q*r";
  }
  return "?";
}

struct QCandidate {
  QuadPoly q;
  std::optional<Rejection> rejected;

  explicit operator bool() const { return !rejected.has_value(); }
};

/// q = h*r + t - 1, kept when q is irreducible, q has no fixed prime divisor
/// and neither has q*r.
inline QCandidate make_q(const Integer& h, const QuadPoly& r, const LinPoly& t) {
  QCandidate out{h * r + t - 1, std::nullopt};
  if (sgn(out.q.c2) == 0 || !is_irreducible_quadratic(out.q)) {
    out.rejected = Rejection::reducible;
  } else if (value_gcd(out.q) != 1) {
    out.rejected = Rejection::common_factor;
  } else if (fixed_divisor_of_product(out.q, r) != 1) {
    out.rejected = Rejection::fixed_prime_divisor;
  }
  return out;
}

/// Substitution x -> sign*x + shift.
struct LinearTransform {
  int sign = 1;
  Integer shift = 0;

  bool is_identity() const { return sign == 1 && sgn(shift) == 0; }
};

struct CanonicalTrace {
  LinPoly t;
  LinearTransform transform;  ///< t_canon(x) = t(sign*x + shift)
};

/// Normal form a > 0, 0 <= b < a under x -> +-x + v.
inline CanonicalTrace canonicalize(const LinPoly& t) {
  if (sgn(t.a) == 0) throw std::invalid_argument("trace polynomial must have nonzero leading coefficient");
  const int sign = sgn(t.a) > 0 ? 1 : -1;
  const Integer a_abs = abs(t.a);
  // a*shift + b must land in [0, |a|).
  Integer shift = sign > 0 ? Integer(-floor_div(t.b, a_abs)) : floor_div(t.b, a_abs);
  LinPoly out = substitute_linear(t, sign, shift);
  return {out, {sign, shift}};
}

struct Deduction {
  Integer u;
  Integer v;
};

/// Some (u, v) with (t, r) = (t'(ux+v), r'(ux+v)), where (t', r') is the base.
inline std::optional<Deduction> is_deduced(const LinPoly& t, const QuadPoly& r, const LinPoly& base_t,
                                           const QuadPoly& base_r) {
  if (sgn(base_t.a) == 0 || sgn(t.a) == 0) return std::nullopt;
  if (!divides(base_t.a, t.a) || !divides(base_t.a, t.b - base_t.b)) return std::nullopt;
  Integer u = exact_div(t.a, base_t.a);
  Integer v = exact_div(t.b - base_t.b, base_t.a);
  if (substitute_linear(base_r, u, v) != r) return std::nullopt;
  return Deduction{u, v};
}

/// Equivalence in the strict sense: deducible both ways, i.e. with u = +-1.
inline bool equivalent(const LinPoly& t1, const QuadPoly& r1, const LinPoly& t2, const QuadPoly& r2) {
  auto ded = is_deduced(t1, r1, t2, r2);
  return ded && abs(ded->u) == 1;
}

inline bool equivalent(const Family& a, const Family& b) {
  if (a.k != b.k || a.h != b.h) return false;
  auto ded = is_deduced(a.t, a.r, b.t, b.r);
  return ded && abs(ded->u) == 1 && substitute_linear(b.q, ded->u, ded->v) == a.q;
}

/// The primitive (t, r) class a trace belongs to: the tuple (d*x + b mod d)
/// from which (t, r) is deduced. Keyed by (d, b mod d).
struct PrimitiveClass {
  Integer d;
  Integer residue;
  LinPoly t;
  QuadPoly r;
  Deduction deduction;  ///< input = base(u*x + v)
};

inline PrimitiveClass primitive_class(EmbeddingDegree k, const LinPoly& t) {
  DrSplit split = split_d_r(k, t);
  if (!divides(split.d, t.a)) {
    throw InvariantViolation("split-factor-divides-trace: d = " + split.d.get_str() + " does not divide " + t.a.get_str());
  }
  Integer residue = mod(t.b, split.d);
  LinPoly base{split.d, residue};
  QuadPoly base_r = split_d_r(k, base).r;
  auto ded = is_deduced(t, split.r, base, base_r);
  if (!ded) throw InvariantViolation("primitive-class: trace is not deduced from its primitive base");
  return {split.d, residue, base, base_r, *ded};
}

inline bool same_primitive_class(EmbeddingDegree k, const LinPoly& t1, const LinPoly& t2) {
  auto c1 = primitive_class(k, t1);
  auto c2 = primitive_class(k, t2);
  return c1.d == c2.d && c1.residue == c2.residue;
}

/// One entry of the (t, r) list kept by the generator.
struct CandidateClass {
  Integer d;
  LinPoly t;
  QuadPoly r;
};

struct GeneratorOutput {
  std::vector<CandidateClass> classes;  ///< non-deducible (t, r) tuples in discovery order
  std::vector<Family> families;         ///< sorted by cofactor, then discovery order
  std::vector<std::pair<Family, Rejection>> rejected;
};

/// Enumerates every family with cofactor <= h_max, one canonical representative
/// per equivalence class. Traces a*x + b are visited with |a| ascending,
/// positive a first, and b in [0, |a|): shifts reach every other b, and this
/// order meets primitive tuples before their deductions.
inline GeneratorOutput generate_all(EmbeddingDegree k, long h_max) {
  if (h_max < 1) throw std::invalid_argument("h_max must be >= 1");
  GeneratorOutput out;
  const long a_max = 4 * h_max;
  for (long mag = 1; mag <= a_max; ++mag) {
    for (long a : {mag, -mag}) {
      for (long b = 0; b < mag; ++b) {
        LinPoly t{a, b};
        DrSplit split = split_d_r(k, t);
        bool deduced = std::any_of(out.classes.begin(), out.classes.end(), [&](const CandidateClass& c) {
          return is_deduced(t, split.r, c.t, c.r).has_value();
        });
        if (deduced) continue;
        out.classes.push_back({split.d, t, split.r});
        // h from ceil(d/4); 4h = d makes the CM equation degenerate.
        Integer h = (split.d + 3) / 4;
        if (h < 1) h = 1;
        for (; h <= h_max; ++h) {
          if (4 * h == split.d) continue;
          QCandidate cand = make_q(h, split.r, t);
          Family fam{k, h, split.d, t, split.r, cand.q};
          if (cand) {
            out.families.push_back(std::move(fam));
          } else {
            out.rejected.emplace_back(std::move(fam), *cand.rejected);
          }
        }
      }
    }
  }
  std::stable_sort(out.families.begin(), out.families.end(),
                   [](const Family& l, const Family& r) { return l.h < r.h; });
  return out;
}

inline std::vector<Family> generate(EmbeddingDegree k, long h_max) { return generate_all(k, h_max).families; }

/// Families with cofactor exactly h.
inline std::vector<Family> families_with_cofactor(EmbeddingDegree k, long h) {
  std::vector<Family> out;
  for (auto& f : generate(k, h)) {
    if (f.h == h) out.push_back(std::move(f));
  }
  return out;
}

/// The family t' = eps - t, q' = q - 2t + eps with the same r and h.
inline Family companion(const Family& f) {
  const Integer e = f.eps();
  Family c = f;
  c.t = e - f.t;
  c.q = f.q - 2 * f.t + e;
  return c;
}

/// Maps a family through x -> u*x + v.
inline Family substitute(const Family& f, const Integer& u, const Integer& v) {
  Family g = f;
  g.t = substitute_linear(f.t, u, v);
  g.r = substitute_linear(f.r, u, v);
  g.q = substitute_linear(f.q, u, v);
  return g;
}

inline Family canonical(const Family& f) {
  auto c = canonicalize(f.t);
  return substitute(f, c.transform.sign, c.transform.shift);
}

struct FamilyCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct FamilyReport {
  std::vector<FamilyCheck> checks;
  /// Observations that do not make the family invalid.
  std::vector<std::string> notes;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const FamilyCheck& c) { return c.passed; });
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
      if (!c.passed) out.push_back(c.name);
    }
    return out;
  }
};

namespace detail {
inline std::string first_mismatch(const QuadPoly& expected, const QuadPoly& actual) {
  const char* names[] = {"x^0", "x^1", "x^2"};
  auto e = expected.ascending();
  auto a = actual.ascending();
  for (int i = 0; i < 3; ++i) {
    if (e[i] != a[i]) {
      return std::string("coefficient of ") + names[i] + ": expected " + e[i].get_str() + ", got " + a[i].get_str();
    }
  }
  return {};
}
}  // namespace detail

/// Audits every family invariant; failures carry the first differing coefficient.
inline FamilyReport verify_family(const Family& f) {
  FamilyReport rep;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(detail)});
  };

  if (sgn(f.t.a) == 0) {
    add("trace-nonconstant", false, "t has zero leading coefficient");
    return rep;
  }
  const QuadPoly phi = phi_shifted(f.k, f.t);
  const QuadPoly dr = f.d * f.r;
  add("phi-split", phi == dr, detail::first_mismatch(phi, dr));

  const QuadPoly expect_q = f.h * f.r + f.t - 1;
  add("q-identity", expect_q == f.q, detail::first_mismatch(expect_q, f.q));

  add("hasse", sgn(f.h) > 0 && 4 * f.h >= f.d, "4h < d");

  bool r_quad = sgn(f.r.c2) != 0;
  add("r-irreducible", r_quad && is_irreducible_quadratic(f.r), "r is not an irreducible quadratic");
  add("r-primitive", !f.r.is_zero() && content(f.r) == 1, "content of r is not 1");

  bool q_quad = sgn(f.q.c2) != 0;
  add("q-irreducible", q_quad && is_irreducible_quadratic(f.q), "q is not an irreducible quadratic");
  bool q_nonzero = !f.q.is_zero();
  add("q-value-gcd", q_nonzero && value_gcd(f.q) == 1,
      q_nonzero ? "gcd of values of q is " + value_gcd(f.q).get_str() : "q is zero");
  if (q_nonzero && !f.r.is_zero()) {
    // q and r can then be simultaneously prime only at finitely many x.
    Integer fd = fixed_divisor_of_product(f.q, f.r);
    if (fd != 1) rep.notes.push_back("every value of q*r is divisible by " + fd.get_str());
  }
  return rep;
}

struct RealCofactor {
  Integer h;
  QuadPoly r;
};

/// Splits n = q + 1 - t as (integer) * (primitive irreducible quadratic).
inline RealCofactor real_cofactor(const QuadPoly& q, const LinPoly& t, EmbeddingDegree k) {
  QuadPoly n = q + Integer(1) - t;
  if (sgn(n.c2) == 0 || !is_irreducible_quadratic(n)) throw std::domain_error("not a near-prime family");
  Integer c = content(n);
  if (sgn(n.c2) < 0) c = -c;
  QuadPoly r = divide_exact(n, c);
  if (value_gcd(r) != 1) throw std::domain_error("not a near-prime family: primitive part has a fixed prime divisor");
  DrSplit split = split_d_r(k, t);
  if (split.r != r) throw std::domain_error("not a near-prime family: order polynomial does not divide Phi_k(t - 1)");
  return {c, r};
}

}  // namespace mnt
