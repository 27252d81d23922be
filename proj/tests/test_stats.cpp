#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <set>
#include <tuple>

#include "mntkit/families.hpp"
#include "mntkit/pell.hpp"
#include "mntkit/stats.hpp"

using mnt::EmbeddingDegree;
using mnt::Family;
using mnt::Integer;
using mnt::LinPoly;
using mnt::QuadPoly;

namespace {

using i128 = __int128;

Family family(EmbeddingDegree k, long h, LinPoly t) {
  auto split = mnt::split_d_r(k, t);
  Integer H = h;
  return {k, H, split.d, t, split.r, H * split.r + t - 1};
}

Family k6h1() { return family(EmbeddingDegree::k6, 1, {-1, 1}); }

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (auto k : {EmbeddingDegree::k3, EmbeddingDegree::k4, EmbeddingDegree::k6}) {
    for (auto& f : mnt::generate(k, 6)) out.push_back(f);
  }
  return out;
}

// Polynomial reduced into plain machine integers mod n.
struct Small {
  long c2, c1, c0, n;
  Small(const QuadPoly& p, long modulus)
      : c2(mnt::to_i64(mnt::mod(p.c2, modulus))),
        c1(mnt::to_i64(mnt::mod(p.c1, modulus))),
        c0(mnt::to_i64(mnt::mod(p.c0, modulus))),
        n(modulus) {}
  long operator()(long x) const {
    x %= n;
    return static_cast<long>(((static_cast<i128>(c2) * x % n) * x + static_cast<i128>(c1) * x + c0) % n);
  }
};

// Delta = u*(4q - t^2) built straight from the family.
QuadPoly oracle_delta(const Family& f) {
  auto inst = mnt::reduce(f);
  QuadPoly t2 = mnt::square(f.t);
  return inst.u * (Integer(4) * f.q - t2);
}

struct OracleCounts {
  std::uint64_t C = 0, rho = 0;
};

// Roots mod p by scanning, then each root of Delta lifted to p^2 by scanning
// the p candidates above it.
OracleCounts hensel_oracle(const Family& f, long p) {
  QuadPoly delta = oracle_delta(f);
  Small q(f.q, p), r(f.r, p), dp(delta, p), d2(delta, p * p);
  OracleCounts out;
  for (long x = 0; x < p; ++x) {
    if (q(x) == 0 || r(x) == 0) {
      out.C += static_cast<std::uint64_t>(p);
      continue;
    }
    if (dp(x) != 0) continue;
    for (long j = 0; j < p; ++j) {
      if (d2(x + p * j) == 0) {
        ++out.C;
        ++out.rho;
      }
    }
  }
  return out;
}

bool naive_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST(Stats, DeltaExample) {
  Family f = k6h1();
  auto inst = mnt::reduce(f);
  EXPECT_EQ(inst.w0, -3);
  EXPECT_EQ(inst.w1, -1);
  EXPECT_EQ(inst.w2, 8);
  EXPECT_EQ(inst.u, 3);
  EXPECT_EQ(mnt::delta_poly(f), QuadPoly(9, 6, 9));
  EXPECT_EQ(mnt::eval(mnt::delta_poly(f), 2), 57);  // 3 * (4*5 - 1)
}

TEST(Stats, LocalCountExamples) {
  Family f = k6h1();
  EXPECT_EQ(mnt::c_p(f, 5), 10u);
  EXPECT_EQ(mnt::c_p(f, 7), 14u);
  EXPECT_EQ(mnt::rho_fn(f, 1), 1u);
  EXPECT_EQ(mnt::rho_fn(f, 11), 2u);
  EXPECT_THROW(mnt::rho_fn(f, 0), std::invalid_argument);
}

TEST(Stats, CpMatchesHenselOracle) {
  for (const auto& f : all_families()) {
    const Integer exc = mnt::exceptional_modulus(f);
    for (std::uint32_t p : mnt::primes_up_to(101)) {
      auto oracle = hensel_oracle(f, p);
      ASSERT_EQ(mnt::c_p(f, p), oracle.C) << mnt::to_string(f.t) << " p=" << p;
      auto lc = mnt::local_counts(f, p);
      ASSERT_EQ(lc.C, oracle.C);
      ASSERT_EQ(lc.rho, oracle.rho);
      ASSERT_LE(lc.C, 6ull * p);
      if (!mnt::is_exceptional(exc, p)) {
        ASSERT_EQ(mnt::c_p_by_roots(f, p), oracle.C);
      }
    }
  }
}

TEST(Stats, ByRootsRejectsExceptionalPrimes) {
  EXPECT_THROW(mnt::c_p_by_roots(k6h1(), 2), std::domain_error);
  EXPECT_THROW(mnt::c_p_by_roots(k6h1(), 3), std::domain_error);
}

TEST(Stats, LocalCountsAgreeWithExhaustionAboveThreshold) {
  Family f = k6h1();
  for (std::uint64_t p : {2003u, 2011u, 2017u}) {
    EXPECT_EQ(mnt::local_counts(f, p).C, mnt::c_p_brute(f, p));
  }
}

TEST(Stats, RhoMultiplicative) {
  for (const auto& f : all_families()) {
    for (std::uint64_t a = 1; a <= 12; ++a) {
      for (std::uint64_t b = 1; b <= 12; ++b) {
        if (std::gcd(a, b) != 1) continue;
        ASSERT_EQ(mnt::rho_brute(f, a * b), mnt::rho_brute(f, a) * mnt::rho_brute(f, b));
      }
    }
  }
}

TEST(Stats, RhoStableOnPrimePowers) {
  for (const auto& f : all_families()) {
    const Integer exc = mnt::exceptional_modulus(f);
    for (std::uint32_t p : mnt::primes_up_to(50)) {
      if (mnt::is_exceptional(exc, p)) continue;
      const std::uint64_t base = mnt::rho_fn(f, p);
      ASSERT_EQ(mnt::rho_fn(f, std::uint64_t{p} * p), base) << p;
      ASSERT_EQ(mnt::rho_fn(f, std::uint64_t{p} * p * p), base) << p;
    }
  }
}

TEST(Stats, LiftingTreeMatchesBrute) {
  for (const auto& f : all_families()) {
    auto polys = mnt::detail::local_polys(f);
    for (std::uint64_t m : {2u, 3u, 4u, 5u, 8u, 9u, 25u, 27u, 49u}) {
      auto fac = mnt::detail::factor_u64(m);
      ASSERT_EQ(fac.size(), 1u);
      ASSERT_EQ(mnt::detail::rho_prime_power(polys, fac[0].first, fac[0].second), mnt::rho_brute(f, m))
          << mnt::to_string(f.t) << " m=" << m;
    }
  }
}

TEST(Stats, AdmissibleClassesExample) {
  auto a = mnt::admissible_classes(k6h1());
  EXPECT_EQ(a.modulus, 8);
  EXPECT_EQ(a.classes, (std::vector<Integer>{1, 3}));
  EXPECT_EQ(a.expected_count, 2);
  EXPECT_FALSE(a.split);
  EXPECT_TRUE(mnt::admissible(a, 11));
  EXPECT_FALSE(mnt::admissible(a, 13));
}

TEST(Stats, AdmissibleClassesPredictRho) {
  for (const auto& f : all_families()) {
    auto a = mnt::admissible_classes(f);
    ASSERT_EQ(Integer(static_cast<unsigned long>(a.classes.size())),
              a.split ? mnt::euler_phi(a.modulus) : a.expected_count);
    const Integer exc = mnt::exceptional_modulus(f);
    for (std::uint32_t p : mnt::primes_up_to(10'000)) {
      if (mnt::is_exceptional(exc, p)) continue;
      const std::uint64_t rho = mnt::local_counts(f, p).rho;
      ASSERT_EQ(rho, mnt::admissible(a, p) ? 2u : 0u) << mnt::to_string(f.t) << " p=" << p;
    }
  }
}

TEST(Stats, EulerConstantsConverge) {
  auto e = mnt::euler_constants(k6h1(), 10'000);
  EXPECT_FALSE(e.obstructed);
  EXPECT_GT(e.at_P.S0, 0);
  EXPECT_LT(e.at_P.S0, 1);
  EXPECT_LT(e.delta, 1e-2);
  EXPECT_EQ(e.at_half.P, 5000u);
  auto again = mnt::euler_constants(k6h1(), 10'000);
  EXPECT_EQ(mnt::to_decimal(e.at_P.S0), mnt::to_decimal(again.at_P.S0));
  EXPECT_THROW(mnt::euler_constants(k6h1(), 2), std::invalid_argument);
}

TEST(Stats, ObstructedFamilyReportsPrime) {
  for (const auto& f : all_families()) {
    auto e = mnt::euler_constants(f, 200);
    for (std::uint64_t p : e.obstructing_primes) EXPECT_EQ(mnt::c_p(f, p), p * p);
    if (e.obstructed) {
      EXPECT_EQ(e.at_P.S0, 0);
    }
  }
}

TEST(Stats, ToDecimal) {
  mpf_class v(1, mnt::kEulerPrecisionBits);
  v /= 8;
  EXPECT_EQ(mnt::to_decimal(v), "0.125");
  EXPECT_EQ(mnt::to_decimal(mpf_class(-1234.5)), "-1234.5");
  EXPECT_EQ(mnt::to_decimal(mpf_class(0)), "0");
  EXPECT_EQ(mnt::to_decimal(mpf_class(100)), "100");
}

TEST(Stats, CensusMatchesOracle) {
  Family f = k6h1();
  const long x_max = 3000, z = 200;
  std::set<std::tuple<long, long, long>> oracle;
  for (long x = -x_max; x <= x_max; ++x) {
    long t = 1 - x, r = static_cast<long>(x) * x + x + 1, q = static_cast<long>(x) * x + 1;
    if (t == 0 || r <= 3 || !naive_prime(q) || !naive_prime(r)) continue;
    long disc = 4 * q - t * t;
    long s = 0;
    while ((s + 1) * (s + 1) <= q) ++s;
    if (disc <= 0 || std::labs(t) > 2 * s) continue;
    if ((q * q - q + 1) % r != 0) continue;
    long D = 1, rest = disc;
    for (long p = 2; p * p <= rest; ++p) {
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (e % 2) D *= p;
    }
    D *= rest;
    if (D <= z) oracle.emplace(q, r, t);
  }
  auto c = mnt::census(f, z, x_max);
  EXPECT_EQ(c.count, oracle.size());
  EXPECT_GT(c.count, 0u);
  auto cps = mnt::census_checkpoints(c, {10, 50, 100, 200});
  for (std::size_t i = 1; i < cps.size(); ++i) EXPECT_LE(cps[i - 1].second, cps[i].second);
  EXPECT_EQ(cps.back().second, c.count);
  EXPECT_EQ(mnt::census(f, 0, x_max).count, 0u);
}
