#pragma once

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mntkit/families.hpp"
#include "mntkit/integer.hpp"
#include "mntkit/pell.hpp"
#include "mntkit/primality.hpp"

namespace mnt {

/// Concrete curve parameters taken from one seed x of a family.
struct CurveInstance {
  Integer x;
  Integer q;
  Integer r;
  Integer t;
  Integer h;
  EmbeddingDegree k = EmbeddingDegree::k6;
  Integer D;
  Integer m;
  double rho = 0.0;       ///< log(q) / log(r)
  bool probable = false;  ///< q or r only passed the probabilistic test

  friend bool operator==(const CurveInstance& a, const CurveInstance& b) {
    return a.x == b.x && a.q == b.q && a.r == b.r && a.t == b.t && a.h == b.h && a.k == b.k && a.D == b.D &&
           a.m == b.m;
  }
};

/// r | Phi_k(q), the embedding degree condition for prime r not dividing k*q.
/// When t is given the equivalent condition r | Phi_k(t - 1) is checked too.
inline bool check_embedding_degree(const Integer& q, const Integer& r, EmbeddingDegree k,
                                   std::optional<Integer> t = std::nullopt) {
  if (sgn(r) <= 0) throw std::invalid_argument("r must be positive");
  if (divides(r, value(k) * q)) throw std::domain_error("precondition violated: r divides k*q");
  const bool by_q = divides(r, cyclotomic(k, q));
  if (t) {
    const bool by_t = divides(r, cyclotomic(k, *t - 1));
    if (by_q != by_t && divides(r, q + 1 - *t)) {
      throw InvariantViolation("embedding-cross-check: Phi_k(q) and Phi_k(t - 1) disagree mod r");
    }
  }
  return by_q;
}

enum class SkipReason {
  zero_trace,
  tiny_subgroup,
  q_not_prime,
  r_not_prime,
  hasse,
  embedding,
  discriminant_too_large,
  indeterminate_squarefree,
};

inline const char* to_string(SkipReason s) {
  switch (s) {
    case SkipReason::zero_trace: return "zero trace";
    case SkipReason::tiny_subgroup: return "r <= 3";
    case SkipReason::q_not_prime: return "q not prime";
    case SkipReason::r_not_prime: return "r not prime";
    case SkipReason::hasse: return "Hasse bound";
    case SkipReason::embedding: return "embedding degree";
    case SkipReason::discriminant_too_large: return "D > D_max";
    case SkipReason::indeterminate_squarefree: return "indeterminate square-free part";
  }
  return "?";
}

struct Evaluation {
  std::optional<CurveInstance> instance;
  std::optional<SkipReason> skipped;
};

/// Re-checks every instance invariant; throws InvariantViolation naming the
/// first one that fails.
inline void validate(const CurveInstance& c) {
  auto fail = [](const std::string& name) { throw InvariantViolation("curve-instance: " + name); };
  if (c.q + 1 - c.t != c.h * c.r) fail("order q + 1 - t = h*r");
  if (sgn(c.t) == 0) fail("nonzero trace");
  if (abs(c.t) > 2 * isqrt(c.q)) fail("Hasse bound");
  if (divides(c.r, value(c.k) * c.q)) fail("r does not divide k*q");
  if (!divides(c.r, cyclotomic(c.k, c.q))) fail("r divides Phi_k(q)");
  if (c.D * c.m * c.m != 4 * c.q - c.t * c.t) fail("D*m^2 = 4q - t^2");
  if (sgn(c.D) <= 0 || squarefree_part(c.D).m != 1) fail("D square-free");
}

/// Evaluates the family at x and applies every filter, in a fixed order.
inline Evaluation evaluate_at(const Family& f, const Integer& x, const Integer& D_max) {
  Evaluation out;
  const Integer t = eval(f.t, x);
  if (sgn(t) == 0) return {std::nullopt, SkipReason::zero_trace};
  const Integer r = eval(f.r, x);
  if (r <= 3) return {std::nullopt, SkipReason::tiny_subgroup};
  const Integer q = eval(f.q, x);
  const Primality pq = primality(q);
  if (pq == Primality::composite) return {std::nullopt, SkipReason::q_not_prime};
  const Primality pr = primality(r);
  if (pr == Primality::composite) return {std::nullopt, SkipReason::r_not_prime};
  const Integer disc = 4 * q - t * t;
  if (sgn(disc) <= 0 || abs(t) > 2 * isqrt(q)) return {std::nullopt, SkipReason::hasse};
  if (divides(r, value(f.k) * q) || !check_embedding_degree(q, r, f.k, t)) {
    return {std::nullopt, SkipReason::embedding};
  }
  SquarefreeSplit split;
  try {
    split = squarefree_part(disc);
  } catch (const IndeterminateSquarefree&) {
    return {std::nullopt, SkipReason::indeterminate_squarefree};
  }
  if (split.D > D_max) return {std::nullopt, SkipReason::discriminant_too_large};
  CurveInstance c{x, q, r, t, f.h, f.k, split.D, split.m, log_abs(q) / log_abs(r),
                  pq == Primality::probable_prime || pr == Primality::probable_prime};
  validate(c);
  out.instance = std::move(c);
  return out;
}

struct SweepResult {
  std::vector<CurveInstance> instances;  ///< ordered by x
  std::map<SkipReason, std::size_t> skipped;
  std::vector<Integer> indeterminate;  ///< seeds whose discriminant could not be split
};

namespace detail {
inline void merge_into(SweepResult& into, SweepResult&& part) {
  for (auto& c : part.instances) into.instances.push_back(std::move(c));
  for (const auto& [k, v] : part.skipped) into.skipped[k] += v;
  for (auto& x : part.indeterminate) into.indeterminate.push_back(std::move(x));
}

inline SweepResult sweep_range(const Family& f, const Integer& lo, const Integer& hi, const Integer& D_max) {
  SweepResult res;
  for (Integer x = lo; x <= hi; ++x) {
    Evaluation e = evaluate_at(f, x, D_max);
    if (e.instance) {
      res.instances.push_back(std::move(*e.instance));
    } else {
      ++res.skipped[*e.skipped];
      if (*e.skipped == SkipReason::indeterminate_squarefree) res.indeterminate.push_back(x);
    }
  }
  return res;
}
}  // namespace detail

/// Every valid instance with x in [x_min, x_max] and D <= D_max. With jobs > 1
/// the range is split into contiguous blocks; the merge keeps x order.
inline SweepResult sweep(const Family& f, const Integer& x_min, const Integer& x_max, const Integer& D_max,
                         unsigned jobs = 1) {
  if (x_min > x_max) return {};
  if (jobs <= 1) return detail::sweep_range(f, x_min, x_max, D_max);
  const Integer span = x_max - x_min + 1;
  std::vector<SweepResult> parts(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (unsigned j = 0; j < jobs; ++j) {
    Integer lo = x_min + span * j / jobs;
    Integer hi = x_min + span * (j + 1) / jobs - 1;
    workers.emplace_back([&, j, lo, hi] {
      try {
        parts[j] = detail::sweep_range(f, lo, hi, D_max);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SweepResult out;
  for (auto& p : parts) detail::merge_into(out, std::move(p));
  return out;
}

/// Square-free integers in [lo, hi].
inline std::vector<Integer> squarefree_range(const Integer& lo, const Integer& hi) {
  std::vector<Integer> out;
  for (Integer D = std::max(lo, Integer(1)); D <= hi; ++D) {
    if (squarefree_part(D).m == 1) out.push_back(D);
  }
  return out;
}

/// Seeds x reached through the Pell equation of f for square-free D in
/// [D_min, D_max] with |y| <= y_limit, filtered like sweep. Ordered by (x, D).
inline std::vector<CurveInstance> pell_search(const Family& f, const Integer& D_min, const Integer& D_max,
                                              const Integer& y_limit) {
  std::vector<CurveInstance> out;
  if (D_min > D_max) return out;
  const PellInstance inst = reduce(f);
  for (const Integer& D : squarefree_range(D_min, D_max)) {
    for (const PellPoint& p : solutions_in_congruence(inst, D, y_limit)) {
      if (sgn(p.m) == 0) continue;
      Evaluation e = evaluate_at(f, p.x, D_max);
      if (e.instance && e.instance->D == D) out.push_back(std::move(*e.instance));
    }
  }
  std::sort(out.begin(), out.end(), [](const CurveInstance& a, const CurveInstance& b) { return a.x < b.x; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// pell_search restricted to seeds in [x_min, x_max]; comparable with sweep on the same box.
inline std::vector<CurveInstance> pell_search_box(const Family& f, const Integer& x_min, const Integer& x_max,
                                                  const Integer& D_max) {
  const PellInstance inst = reduce(f);
  const Integer y_limit = std::max(abs(inst.w0 * x_min + inst.w1), abs(inst.w0 * x_max + inst.w1));
  std::vector<CurveInstance> all = pell_search(f, 1, D_max, y_limit);
  std::vector<CurveInstance> out;
  for (auto& c : all) {
    if (c.x >= x_min && c.x <= x_max) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace mnt
