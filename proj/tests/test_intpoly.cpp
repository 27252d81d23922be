#include <gtest/gtest.h>

#include <random>

#include "mntkit/intpoly.hpp"

using mnt::Integer;
using mnt::LinPoly;
using mnt::QuadPoly;

namespace {

// Naive p(x) by repeated addition of monomials, kept apart from eval().
Integer naive_eval(const QuadPoly& p, long x) {
  Integer X = x;
  return p.c2 * X * X + p.c1 * X + p.c0;
}

Integer naive_gcd_of_values(const QuadPoly& p, long lo, long hi) {
  Integer g = 0;
  for (long x = lo; x <= hi; ++x) g = mnt::gcd(g, naive_eval(p, x));
  return g;
}

QuadPoly random_quad(std::mt19937_64& rng, long span) {
  std::uniform_int_distribution<long> dist(-span, span);
  return {dist(rng), dist(rng), dist(rng)};
}

}  // namespace

TEST(IntPoly, EvalExamples) {
  EXPECT_EQ(mnt::eval(QuadPoly(1, 1, 1), 0), 1);
  EXPECT_EQ(mnt::eval(QuadPoly(1, 1, 1), 2), 7);
  EXPECT_EQ(mnt::eval(QuadPoly(9, 9, 3), -1), 3);
  EXPECT_EQ(mnt::eval(LinPoly{-7, -1}, 3), -22);
}

TEST(IntPoly, Content) {
  EXPECT_EQ(mnt::content(QuadPoly(9, 9, 3)), 3);
  EXPECT_EQ(mnt::content(QuadPoly(1, 1, 1)), 1);
  EXPECT_EQ(mnt::content(QuadPoly(4, 2, 2)), 2);
  EXPECT_EQ(mnt::content(QuadPoly(-4, 0, 6)), 2);
  EXPECT_THROW(mnt::content(QuadPoly(0, 0, 0)), std::domain_error);
}

TEST(IntPoly, ValueGcd) {
  EXPECT_EQ(mnt::value_gcd(QuadPoly(3, 0, 0)), 3);
  EXPECT_EQ(mnt::value_gcd(QuadPoly(1, 1, 1)), 1);
  EXPECT_EQ(mnt::value_gcd(QuadPoly(4, 4, 2)), 2);
  // x^2 + x is always even although its content is 1.
  EXPECT_EQ(mnt::value_gcd(QuadPoly(1, 1, 0)), 2);
  EXPECT_THROW(mnt::value_gcd(QuadPoly(0, 0, 0)), std::domain_error);
}

TEST(IntPoly, SubstituteLinear) {
  EXPECT_EQ(mnt::substitute_linear(QuadPoly(1, 1, 1), 2, 0), QuadPoly(4, 2, 1));
  EXPECT_EQ(mnt::substitute_linear(LinPoly{-5, -1}, -1, -1), (LinPoly{5, 4}));
  EXPECT_EQ(mnt::substitute_linear(QuadPoly(1, 0, 1), -1, -1), QuadPoly(1, 2, 2));
  EXPECT_THROW(mnt::substitute_linear(QuadPoly(1, 0, 1), 0, 3), std::invalid_argument);
  EXPECT_THROW(mnt::substitute_linear(LinPoly{1, 0}, 0, 3), std::invalid_argument);
}

TEST(IntPoly, Irreducibility) {
  EXPECT_TRUE(mnt::is_irreducible_quadratic(QuadPoly(1, 1, 1)));
  EXPECT_FALSE(mnt::is_irreducible_quadratic(QuadPoly(3, 0, 0)));
  EXPECT_TRUE(mnt::is_irreducible_quadratic(QuadPoly(60, 46, 9)));
  EXPECT_EQ(mnt::discriminant(QuadPoly(60, 46, 9)), -44);
  EXPECT_FALSE(mnt::is_irreducible_quadratic(QuadPoly(2, 3, 1)));  // (2x + 1)(x + 1)
  EXPECT_THROW(mnt::is_irreducible_quadratic(QuadPoly(0, 1, 1)), std::domain_error);
}

TEST(IntPoly, Formatting) {
  EXPECT_EQ(mnt::to_string(QuadPoly(18, 15, 4)), "18x^2 + 15x + 4");
  EXPECT_EQ(mnt::to_string(QuadPoly(1, -1, 0)), "x^2 - x");
  EXPECT_EQ(mnt::to_string(LinPoly{-1, 1}), "-x + 1");
  EXPECT_EQ(mnt::to_string(QuadPoly(0, 0, 0)), "0");
}

TEST(IntPoly, ResultantMatchesRootProduct) {
  // (x - 1)(x - 2) and (x - 3)(x + 1): resultant = prod (a_i - b_j).
  QuadPoly f(1, -3, 2), g(1, -2, -3);
  EXPECT_EQ(mnt::resultant(f, g), (1 - 3) * (1 + 1) * (2 - 3) * (2 + 1));
  EXPECT_EQ(mnt::resultant(f, QuadPoly(1, -1, 0)), 0);  // shared root 1
}

TEST(IntPolyProperty, SubstitutionCommutesWithEvaluation) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> small(-40, 40);
  for (int iter = 0; iter < 300; ++iter) {
    QuadPoly p = random_quad(rng, 1000);
    long u = small(rng);
    if (u == 0) u = 1;
    long v = small(rng);
    QuadPoly s = mnt::substitute_linear(p, u, v);
    for (long x = -5; x <= 5; ++x) ASSERT_EQ(naive_eval(s, x), naive_eval(p, u * x + v));
  }
}

TEST(IntPolyProperty, SubstitutionComposes) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> small(-20, 20);
  for (int iter = 0; iter < 300; ++iter) {
    QuadPoly p = random_quad(rng, 500);
    long u = small(rng), u2 = small(rng), v = small(rng), v2 = small(rng);
    if (u == 0) u = 3;
    if (u2 == 0) u2 = -2;
    ASSERT_EQ(mnt::substitute_linear(mnt::substitute_linear(p, u, v), u2, v2),
              mnt::substitute_linear(p, Integer(u) * u2, Integer(u) * v2 + v));
  }
}

TEST(IntPolyProperty, ValueGcdMatchesWideRange) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    QuadPoly p = random_quad(rng, 60);
    if (p.is_zero()) continue;
    // Scale some samples so that nontrivial fixed divisors show up.
    if (iter % 3 == 0) p = Integer(6) * p;
    if (iter % 5 == 0) p = p + QuadPoly(1, 1, 0);
    if (p.is_zero()) continue;
    Integer vg = mnt::value_gcd(p);
    ASSERT_EQ(vg, naive_gcd_of_values(p, -100, 100));
    ASSERT_TRUE(mnt::divides(mnt::content(p), vg));
  }
}

TEST(IntPolyProperty, IrreducibilityInvariantUnderSubstitution) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> small(-9, 9);
  for (int iter = 0; iter < 500; ++iter) {
    QuadPoly p = random_quad(rng, 30);
    if (sgn(p.c2) == 0) continue;
    long u = small(rng);
    if (u == 0) u = 1;
    ASSERT_EQ(mnt::is_irreducible_quadratic(p), mnt::is_irreducible_quadratic(mnt::substitute_linear(p, u, small(rng))));
  }
}

TEST(IntPolyProperty, IrreducibleMeansNoRationalRoot) {
  // A reducible integer quadratic has a root n/d with d | c2, n | c0.
  std::mt19937_64 rng(19);
  for (int iter = 0; iter < 400; ++iter) {
    QuadPoly p = random_quad(rng, 12);
    if (sgn(p.c2) == 0) continue;
    bool has_root = false;
    long a = mnt::to_i64(mnt::abs(p.c2));
    long c = mnt::to_i64(mnt::abs(p.c0));
    if (c == 0) has_root = true;
    for (long d = 1; d <= a && !has_root; ++d) {
      for (long n = -c; n <= c && !has_root; ++n) {
        if (n == 0) continue;
        Integer num = p.c2 * n * n + p.c1 * n * d + p.c0 * d * d;
        if (sgn(num) == 0) has_root = true;
      }
    }
    ASSERT_EQ(mnt::is_irreducible_quadratic(p), !has_root) << mnt::to_string(p);
  }
}

TEST(IntPoly, FixedDivisorOfProduct) {
  // q = 102x^2 + 31x + 2 is x mod 2 and r = 17x^2 + 8x + 1 is x + 1 mod 2.
  EXPECT_EQ(mnt::fixed_divisor_of_product(QuadPoly(102, 31, 2), QuadPoly(17, 8, 1)), 2);
  EXPECT_EQ(mnt::fixed_divisor_of_product(QuadPoly(1, 0, 1), QuadPoly(1, 1, 1)), 1);
}
