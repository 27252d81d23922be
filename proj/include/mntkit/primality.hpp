#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "mntkit/integer.hpp"

namespace mnt {

enum class Primality { composite, prime, probable_prime };

/// Sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

inline bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool strong_probable_prime(const Integer& n, const Integer& a) {
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Integer n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n1) return true;
  }
  return false;
}

constexpr std::array<std::uint32_t, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                        43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace detail

/// Above this bound the answer is probabilistic (40 random-base rounds).
inline const Integer& deterministic_primality_bound() {
  // Strong pseudoprime tests to the first 13 prime bases are exact below this.
  static const Integer bound("3317044064679887385961981");
  return bound;
}

inline Primality primality(const Integer& n) {
  if (n < 2) return Primality::composite;
  for (std::uint32_t p : detail::kSmallPrimes) {
    if (n == p) return Primality::prime;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
  }
  if (n < 97 * 97) return Primality::prime;
  if (fits_u64(n)) {
    const std::uint64_t v = to_u64(n);
    // Bases known to make the strong test exact for all 64-bit inputs.
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
      if (!detail::strong_probable_prime(v, a)) return Primality::composite;
    }
    return Primality::prime;
  }
  if (n < deterministic_primality_bound()) {
    for (std::size_t i = 0; i < 13; ++i) {
      if (!detail::strong_probable_prime(n, Integer(detail::kSmallPrimes[i]))) return Primality::composite;
    }
    return Primality::prime;
  }
  // Fixed seed keeps output reproducible run to run.
  std::mt19937_64 rng(0x6d6e746b6974ULL);
  gmp_randclass gr(gmp_randinit_default);
  gr.seed(static_cast<unsigned long>(rng()));
  const Integer span = n - 3;
  for (int round = 0; round < 40; ++round) {
    Integer a = gr.get_z_range(span) + 2;
    if (!detail::strong_probable_prime(n, a)) return Primality::composite;
  }
  return Primality::probable_prime;
}

inline bool is_prime(const Integer& n) { return primality(n) != Primality::composite; }

struct SquarefreeSplit {
  Integer D;  ///< square-free
  Integer m;  ///< n = D * m^2
};

class IndeterminateSquarefree : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::uint32_t>& trial_primes(std::uint32_t bound) {
  static thread_local std::uint32_t cached_bound = 0;
  static thread_local std::vector<std::uint32_t> cached;
  if (bound != cached_bound) {
    cached = primes_up_to(bound);
    cached_bound = bound;
  }
  return cached;
}

/// n = D*m^2 with D square-free, by trial division up to trial_bound. A
/// cofactor left over is resolved when it is 1, a perfect square, prime, or
/// below trial_bound^3 (then it has at most two prime factors, both large).
inline SquarefreeSplit squarefree_part(const Integer& n, std::uint32_t trial_bound = 1'000'000) {
  if (n < 1) throw std::invalid_argument("squarefree_part needs a positive integer");
  Integer rest = n;
  Integer D = 1;
  Integer m = 1;
  auto absorb = [&](std::uint64_t p, unsigned e) {
    for (unsigned i = 0; i + 1 < e; i += 2) m *= static_cast<unsigned long>(p);
    if (e % 2 == 1) D *= static_cast<unsigned long>(p);
  };
  if (fits_u64(rest)) {
    std::uint64_t v = to_u64(rest);
    for (std::uint32_t p : trial_primes(trial_bound)) {
      if (static_cast<std::uint64_t>(p) * p > v) break;
      unsigned e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      if (e) absorb(p, e);
    }
    rest = static_cast<unsigned long>(v);
  } else {
    for (std::uint32_t p : trial_primes(trial_bound)) {
      if (Integer(p) * p > rest) break;
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      if (e) absorb(p, e);
    }
  }
  if (rest == 1) return {D, m};
  const Integer b = trial_bound;
  // No factor <= trial_bound remains, so a cofactor below bound^2 is prime.
  if (rest <= b * b || is_prime(rest)) return {D * rest, m};
  if (is_square(rest)) return {D, m * isqrt(rest)};
  if (rest < b * b * b) return {D * rest, m};  // p*q with distinct large primes
  throw IndeterminateSquarefree("indeterminate square-free part of " + n.get_str());
}

}  // namespace mnt
