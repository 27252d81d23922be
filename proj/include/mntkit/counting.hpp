#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mntkit/families.hpp"

namespace mnt {

/// d = p^u0 * prod q_i^u_i, where p is the largest prime factor of k.
struct FactoredD {
  std::uint64_t p = 0;
  unsigned u0 = 0;
  std::vector<std::pair<std::uint64_t, unsigned>> odd_factors;  ///< (q_i, u_i), q_i != p
  std::uint64_t value = 1;
};

inline std::uint64_t largest_prime_of_k(EmbeddingDegree k) { return k == EmbeddingDegree::k4 ? 2 : 3; }

inline FactoredD factor_d(EmbeddingDegree k, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("d must be positive");
  FactoredD out;
  out.p = largest_prime_of_k(k);
  out.value = d;
  std::uint64_t rest = d;
  for (std::uint64_t f = 2; f * f <= rest; ++f) {
    unsigned e = 0;
    while (rest % f == 0) {
      rest /= f;
      ++e;
    }
    if (e == 0) continue;
    if (f == out.p) {
      out.u0 = e;
    } else {
      out.odd_factors.emplace_back(f, e);
    }
  }
  if (rest > 1) {
    if (rest == out.p) {
      out.u0 += 1;
    } else {
      out.odd_factors.emplace_back(rest, 1);
    }
  }
  return out;
}

/// Closed form for the number of primitive (t, r) classes with split factor d.
inline std::uint64_t n_d_formula(EmbeddingDegree k, std::uint64_t d) {
  FactoredD f = factor_d(k, d);
  if (d == 1 || d == f.p) return 1;
  if (f.u0 > 1) return 0;
  const auto kk = static_cast<std::uint64_t>(value(k));
  for (const auto& [q, e] : f.odd_factors) {
    if (q % kk != 1) return 0;
  }
  return std::uint64_t{1} << f.odd_factors.size();
}

/// #{b mod d : d | Phi_k(b - 1)} by exhaustion.
inline std::uint64_t n_d_oracle(EmbeddingDegree k, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("d must be positive");
  const auto e = static_cast<unsigned __int128>(epsilon(k));
  std::uint64_t count = 0;
  for (std::uint64_t b = 0; b < d; ++b) {
    // Phi_k(b - 1) = b^2 - eps*b + eps, evaluated mod d without going negative.
    unsigned __int128 v = static_cast<unsigned __int128>(b) * b + e * (d - b % d) + e;
    if (v % d == 0) ++count;
  }
  return count;
}

/// Sum of N_d over d <= 4h: the number of (t, r) candidate classes usable at
/// cofactor h, before the filters on q.
inline std::uint64_t candidate_total(EmbeddingDegree k, std::uint64_t h) {
  if (h == 0) throw std::invalid_argument("h must be positive");
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d <= 4 * h; ++d) total += n_d_formula(k, d);
  return total;
}

/// Number of families with cofactor exactly h that survive every filter.
inline std::uint64_t family_total(EmbeddingDegree k, std::uint64_t h) {
  if (h == 0) throw std::invalid_argument("h must be positive");
  return families_with_cofactor(k, static_cast<long>(h)).size();
}

}  // namespace mnt
