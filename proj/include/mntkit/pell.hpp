#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mntkit/families.hpp"
#include "mntkit/integer.hpp"
#include "mntkit/intpoly.hpp"

namespace mnt {

/// The CM equation D*m^2 = 4q(x) - t(x)^2 of a family, rewritten as
/// (w0*x + w1)^2 + w2 = u*D*m^2, i.e. y^2 - (u*D)*m^2 = f with y = w0*x + w1.
struct PellInstance {
  Integer w0;
  Integer w1;
  Integer w2;
  Integer u;
  Integer f;
  Family family;

  Integer g(const Integer& D) const { return u * D; }

  /// Delta(x) = (w0*x + w1)^2 + w2.
  QuadPoly delta() const { return square(LinPoly{w0, w1}) + w2; }

  /// The same equation under y -> -y, chosen so that w1 <= 0.
  PellInstance sign_normalized() const {
    PellInstance out = *this;
    if (sgn(w1) > 0) {
      out.w0 = -w0;
      out.w1 = -w1;
    }
    return out;
  }

  /// x = (y - w1) / w0 when the division is exact.
  std::optional<Integer> x_from_y(const Integer& y) const {
    Integer num = y - w1;
    if (!divides(w0, num)) return std::nullopt;
    return exact_div(num, w0);
  }
};

/// The linear-term offset in its second algebraic form, 2h(2b - eps) - (b - 2)d.
inline Integer pell_offset_alt(const Family& fam) {
  const Integer e = fam.eps();
  return 2 * fam.h * (2 * fam.t.b - e) - (fam.t.b - 2) * fam.d;
}

/// Right-hand side in its expanded form, a_k^2 - ((4h - d)b)^2 + 4(4h - d)(b - 1)(eps*h - d).
inline Integer pell_rhs_expanded(const Family& fam) {
  const Integer e = fam.eps();
  const Integer gap = 4 * fam.h - fam.d;
  const Integer ak = pell_offset_alt(fam);
  const Integer lead = gap * fam.t.b;
  return ak * ak - lead * lead + 4 * gap * (fam.t.b - 1) * (e * fam.h - fam.d);
}

inline PellInstance reduce(const Family& fam) {
  const Integer gap = 4 * fam.h - fam.d;
  if (sgn(gap) == 0) throw std::domain_error("degenerate Hasse boundary");
  if (sgn(gap) < 0) throw std::invalid_argument("family violates 4h >= d");
  const Integer e = fam.eps();
  PellInstance inst;
  inst.w0 = fam.t.a * gap;
  inst.w1 = fam.t.b * gap - 2 * (e * fam.h - fam.d);
  inst.w2 = 4 * fam.h * (4 - e) * (e * fam.h - fam.d);
  inst.u = fam.d * gap;
  inst.f = -inst.w2;
  inst.family = fam;
  if (inst.w1 != pell_offset_alt(fam)) {
    throw InvariantViolation("pell-offset-forms: the two expressions for w1 disagree");
  }
  if (inst.f != pell_rhs_expanded(fam)) {
    throw InvariantViolation("pell-rhs-forms: f differs from its expanded form");
  }
  return inst;
}

struct PellUnit {
  Integer T;
  Integer U;
};

/// Least T, U > 0 with T^2 - g*U^2 = 1, from the continued fraction of sqrt(g).
inline PellUnit fundamental_unit(const Integer& g) {
  if (sgn(g) <= 0) throw std::invalid_argument("Pell modulus must be positive");
  if (is_square(g)) throw std::invalid_argument("not a Pell modulus: " + g.get_str() + " is a perfect square");
  const Integer a0 = isqrt(g);
  Integer m = 0, d = 1, a = a0;
  Integer p_prev = 1, p = a0;
  Integer q_prev = 0, q = 1;
  while (p * p - g * q * q != 1) {
    m = d * a - m;
    d = (g - m * m) / d;
    a = (a0 + m) / d;
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    p = std::move(p_next);
    q_prev = std::move(q);
    q = std::move(q_next);
  }
  return {p, q};
}

/// Least T, U > 0 with T^2 - g*U^2 = -1, if the period of sqrt(g) is odd.
inline std::optional<PellUnit> negative_unit(const Integer& g) {
  if (sgn(g) <= 0 || is_square(g)) throw std::invalid_argument("not a Pell modulus: " + g.get_str());
  const Integer a0 = isqrt(g);
  Integer m = 0, d = 1, a = a0;
  Integer p_prev = 1, p = a0;
  Integer q_prev = 0, q = 1;
  while (true) {
    Integer n = p * p - g * q * q;
    if (n == -1) return PellUnit{p, q};
    if (n == 1) return std::nullopt;
    m = d * a - m;
    d = (g - m * m) / d;
    a = (a0 + m) / d;
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    p = std::move(p_next);
    q_prev = std::move(q);
    q = std::move(q_next);
  }
}

struct PellSolution {
  Integer y;
  Integer m;

  friend bool operator==(const PellSolution& l, const PellSolution& r) { return l.y == r.y && l.m == r.m; }
  friend bool operator<(const PellSolution& l, const PellSolution& r) {
    return l.m != r.m ? l.m < r.m : l.y < r.y;
  }
};

/// Fundamental member of one class of y^2 - g*m^2 = f.
struct PellSolutionClass {
  Integer y;
  Integer m;
  Integer g;
  Integer f;

  PellSolution solution() const { return {y, m}; }
};

/// Whether two solutions differ by a unit (including -1).
inline bool same_class(const Integer& g, const Integer& f, const PellSolution& a, const PellSolution& b) {
  return divides(f, a.y * b.y - g * a.m * b.m) && divides(f, a.y * b.m - b.y * a.m);
}

inline bool is_ambiguous(const PellSolutionClass& c) {
  return divides(c.f, c.y * c.y + c.g * c.m * c.m) && divides(c.f, 2 * c.y * c.m);
}

inline bool is_primitive(const PellSolutionClass& c) { return gcd(c.y, c.m) == 1; }

namespace detail {
inline std::uint64_t isqrt_u64(std::uint64_t v) {
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}
}  // namespace detail

/// Search bound on |m| for fundamental solutions: ceil(sqrt(|f|(T+1)/(2g))) + 1.
inline Integer fundamental_search_bound(const Integer& g, const Integer& f, const PellUnit& unit) {
  Integer num = abs(f) * (unit.T + 1);
  Integer den = 2 * g;
  Integer q = (num + den - 1) / den;
  Integer s = isqrt(q);
  if (s * s < q) ++s;
  return s + 1;
}

namespace detail {

inline void add_representative(std::vector<PellSolutionClass>& reps, const Integer& g, const Integer& f,
                               const Integer& y, const Integer& m) {
  PellSolution s{y, m};
  for (const auto& r : reps) {
    if (same_class(g, f, s, r.solution())) return;
  }
  reps.push_back({y, m, g, f});
}

/// Class representatives by scanning m = 0..bound for g*m^2 + f a square.
inline std::vector<PellSolutionClass> representatives_by_scan(const Integer& g, const Integer& f,
                                                              const Integer& bound) {
  std::vector<PellSolutionClass> reps;
  auto consider_both = [&](const Integer& y, const Integer& m) {
    add_representative(reps, g, f, y, m);
    if (sgn(y) != 0) add_representative(reps, g, f, -y, m);
  };
  // Small instances take a 64-bit path; |f| + g*bound^2 < 2^62 keeps it exact.
  const bool small = fits_u64(bound) && bound < (Integer(1) << 31) && abs(f) + g * bound * bound < (Integer(1) << 62);
  if (small) {
    const std::int64_t fi = to_i64(f);
    const std::uint64_t gi = to_u64(g);
    const std::uint64_t mb = to_u64(bound);
    for (std::uint64_t m = 0; m <= mb; ++m) {
      const std::int64_t v = static_cast<std::int64_t>(gi * m * m) + fi;
      if (v < 0) continue;
      const std::uint64_t s = isqrt_u64(static_cast<std::uint64_t>(v));
      if (s * s != static_cast<std::uint64_t>(v)) continue;
      consider_both(Integer(static_cast<unsigned long>(s)), Integer(static_cast<unsigned long>(m)));
    }
  } else {
    for (Integer m = 0; m <= bound; ++m) {
      Integer v = g * m * m + f;
      if (!is_square(v)) continue;
      consider_both(isqrt(v), m);
    }
  }
  return reps;
}

/// The member of the class of (y, m) with least |m|, signed so that m >= 0
/// and, on a tie between (y, m) and (-y, m), y > 0.
inline PellSolution least_member(const Integer& g, const PellUnit& unit, PellSolution s) {
  auto fwd = [&](const PellSolution& a) {
    return PellSolution{a.y * unit.T + g * a.m * unit.U, a.y * unit.U + a.m * unit.T};
  };
  auto bwd = [&](const PellSolution& a) {
    return PellSolution{a.y * unit.T - g * a.m * unit.U, a.m * unit.T - a.y * unit.U};
  };
  // |m| is unimodal along the orbit: walk downhill, then look one step past the minimum.
  for (auto step : {+1, -1}) {
    while (true) {
      PellSolution next = step > 0 ? fwd(s) : bwd(s);
      if (abs(next.m) >= abs(s.m)) break;
      s = std::move(next);
    }
  }
  std::vector<PellSolution> ties{s};
  for (const PellSolution& n : {fwd(s), bwd(s)}) {
    if (abs(n.m) == abs(s.m)) ties.push_back(n);
  }
  PellSolution best{0, -1};
  for (PellSolution c : ties) {
    if (sgn(c.m) < 0 || (sgn(c.m) == 0 && sgn(c.y) < 0)) c = {-c.y, -c.m};
    if (sgn(best.m) < 0 || c.y > best.y) best = c;
  }
  return best;
}

/// Class representatives from continued fractions (the Lagrange-Matthews-Mollin
/// method): for each e with e^2 | f and each root z of z^2 = g mod |f/e^2|, the
/// expansion of (z + sqrt(g))/|f/e^2| either reaches Q = +-1, giving one class,
/// or cycles without it.
inline std::vector<PellSolutionClass> representatives_by_cf(const Integer& g, const Integer& f, const PellUnit& unit) {
  const Integer s = isqrt(g);
  const std::optional<PellUnit> neg = negative_unit(g);
  std::vector<PellSolutionClass> reps;
  const Integer af = abs(f);
  for (Integer e = 1; e * e <= af; ++e) {
    if (!divides(e * e, f)) continue;
    const Integer mf = f / (e * e);
    const Integer Q0 = abs(mf);
    // z in (-Q0/2, Q0/2].
    for (Integer z = -((Q0 - 1) / 2); 2 * z <= Q0; ++z) {
      if (!divides(Q0, z * z - g)) continue;
      Integer P = z, Q = Q0;
      Integer B2 = 1, B1 = 0, G2 = -z, G1 = Q0;
      std::set<std::pair<Integer, Integer>> seen;
      bool found = false;
      Integer r, t;
      for (long i = 0;; ++i) {
        if (i >= 1 && (Q == 1 || Q == -1)) {
          r = G1;
          t = B1;
          found = true;
          break;
        }
        if (!seen.emplace(P, Q).second) break;
        Integer a = sgn(Q) > 0 ? floor_div(P + s, Q) : Integer(-(floor_div(P + s, -Q) + 1));
        Integer B0 = a * B1 + B2, G0 = a * G1 + G2;
        B2 = std::move(B1);
        B1 = std::move(B0);
        G2 = std::move(G1);
        G1 = std::move(G0);
        Integer P_next = a * Q - P;
        Q = (g - P_next * P_next) / Q;
        P = std::move(P_next);
      }
      if (!found) continue;
      const Integer n = r * r - g * t * t;
      PellSolution sol;
      if (n == mf) {
        sol = {e * r, e * t};
      } else if (n == -mf && neg) {
        sol = {e * (r * neg->T + t * neg->U * g), e * (r * neg->U + t * neg->T)};
      } else {
        continue;
      }
      if (sol.y * sol.y - g * sol.m * sol.m != f) throw InvariantViolation("pell-cf: representative off the curve");
      PellSolution least = least_member(g, unit, sol);
      add_representative(reps, g, f, least.y, least.m);
    }
  }
  std::sort(reps.begin(), reps.end(), [](const PellSolutionClass& a, const PellSolutionClass& b) {
    return a.m != b.m ? a.m < b.m : a.y > b.y;
  });
  return reps;
}

/// Above this many candidate m values the continued-fraction method is used.
inline constexpr unsigned long kScanLimit = 200'000;

}  // namespace detail

/// One representative per class of y^2 - g*m^2 = f, each with least m >= 0
/// (y > 0 preferred on ties), ordered by m. With m_cap, only classes that
/// contain a solution with |m| <= m_cap are reported.
inline std::vector<PellSolutionClass> class_representatives(const Integer& g, const Integer& f, const PellUnit& unit,
                                                            std::optional<Integer> m_cap = std::nullopt) {
  if (sgn(f) == 0) throw std::invalid_argument("class representatives need f != 0");
  Integer bound = fundamental_search_bound(g, f, unit);
  if (m_cap && *m_cap < bound) bound = *m_cap;
  if (bound <= detail::kScanLimit) return detail::representatives_by_scan(g, f, bound);
  auto reps = detail::representatives_by_cf(g, f, unit);
  if (m_cap) {
    std::erase_if(reps, [&](const PellSolutionClass& c) { return c.m > *m_cap; });
  }
  return reps;
}

inline std::vector<PellSolutionClass> class_representatives(const Integer& g, const Integer& f) {
  return class_representatives(g, f, fundamental_unit(g));
}

enum class OrbitBound { y, m };

/// Every signed solution (y, m) with |y| (or |m|) <= limit that lies in the
/// orbit of some representative under multiplication by +-(T + U*sqrt(g))^n.
inline std::vector<PellSolution> orbit_solutions(const Integer& g, const std::vector<PellSolutionClass>& reps,
                                                 const PellUnit& unit, OrbitBound kind, const Integer& limit) {
  std::set<PellSolution> found;
  auto measure = [&](const PellSolution& s) { return kind == OrbitBound::y ? abs(s.y) : abs(s.m); };
  auto walk = [&](PellSolution s, bool forward) {
    // |y| and |m| are unimodal along an orbit, so stop once the measure
    // exceeds the limit while growing.
    Integer prev = measure(s);
    while (true) {
      PellSolution next = forward ? PellSolution{s.y * unit.T + g * s.m * unit.U, s.y * unit.U + s.m * unit.T}
                                  : PellSolution{s.y * unit.T - g * s.m * unit.U, s.m * unit.T - s.y * unit.U};
      Integer cur = measure(next);
      if (cur <= limit) found.insert(next);
      if (cur > limit && cur > prev) break;
      prev = std::move(cur);
      s = std::move(next);
    }
  };
  for (const auto& r : reps) {
    for (int sign : {1, -1}) {
      PellSolution start{sign * r.y, sign * r.m};
      if (measure(start) <= limit) found.insert(start);
      walk(start, true);
      walk(start, false);
    }
  }
  return {found.begin(), found.end()};
}

struct PellPoint {
  Integer x;
  Integer y;
  Integer m;  ///< >= 0

  friend bool operator<(const PellPoint& l, const PellPoint& r) { return l.x != r.x ? l.x < r.x : l.m < r.m; }
};

namespace detail {
inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> small, large;
  Integer a = abs(n);
  for (Integer i = 1; i * i <= a; ++i) {
    if (divides(i, a)) {
      small.push_back(i);
      Integer j = a / i;
      if (j != i) large.push_back(j);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Solutions of y^2 - s^2 m^2 = f with |y| <= y_limit, m >= 0 (square modulus).
inline std::vector<PellSolution> square_modulus_solutions(const Integer& s, const Integer& f, const Integer& y_limit) {
  std::set<PellSolution> out;
  if (sgn(f) == 0) {
    for (Integer m = 0; s * m <= y_limit; ++m) {
      out.insert({s * m, m});
      out.insert({-(s * m), m});
    }
    return {out.begin(), out.end()};
  }
  // (y - s m)(y + s m) = f
  for (const Integer& e : divisors(f)) {
    for (int sign : {1, -1}) {
      Integer e1 = sign * e;
      Integer e2 = f / e1;
      Integer sum = e1 + e2;
      Integer diff = e2 - e1;
      if (!divides(2, sum) || !divides(2 * s, diff)) continue;
      Integer y = sum / 2;
      Integer m = abs(diff / (2 * s));
      if (abs(y) <= y_limit) out.insert({y, m});
    }
  }
  return {out.begin(), out.end()};
}
}  // namespace detail

/// Solutions of y^2 - u*D*m^2 = f with |y| <= y_limit that map back to an
/// integer x = (y - w1) / w0. Both signs of y are tried.
inline std::vector<PellPoint> solutions_in_congruence(const PellInstance& inst, const Integer& D,
                                                      const Integer& y_limit) {
  if (sgn(D) <= 0) throw std::invalid_argument("D must be positive");
  const Integer g = inst.g(D);
  std::vector<PellSolution> sols;
  if (is_square(g)) {
    sols = detail::square_modulus_solutions(isqrt(g), inst.f, y_limit);
  } else if (sgn(inst.f) == 0) {
    sols.push_back({0, 0});
  } else {
    PellUnit unit = fundamental_unit(g);
    Integer m_cap = isqrt((y_limit * y_limit + abs(inst.f)) / g) + 1;
    auto reps = class_representatives(g, inst.f, unit, m_cap);
    sols = orbit_solutions(g, reps, unit, OrbitBound::y, y_limit);
  }
  std::set<PellPoint> points;
  for (const auto& s : sols) {
    Integer m = abs(s.m);
    for (const Integer& y : {s.y, Integer(-s.y)}) {
      if (auto x = inst.x_from_y(y)) points.insert({*x, y, m});
    }
  }
  return {points.begin(), points.end()};
}

}  // namespace mnt
