#include <gtest/gtest.h>

#include <set>

#include "mntkit/families.hpp"
#include "mntkit/pell.hpp"
#include "mntkit/primality.hpp"

using mnt::EmbeddingDegree;
using mnt::Family;
using mnt::Integer;
using mnt::LinPoly;
using mnt::QuadPoly;

namespace {

constexpr EmbeddingDegree kAll[] = {EmbeddingDegree::k3, EmbeddingDegree::k4, EmbeddingDegree::k6};

Family family(EmbeddingDegree k, long h, LinPoly t) {
  auto split = mnt::split_d_r(k, t);
  Integer H = h;
  return {k, H, split.d, t, split.r, H * split.r + t - 1};
}

// (y, m) with y^2 - g m^2 = f and 0 <= m <= m_max, by direct search.
std::set<std::pair<long, long>> scan(long g, long f, long m_max) {
  std::set<std::pair<long, long>> out;
  for (long m = 0; m <= m_max; ++m) {
    Integer v = Integer(g) * m * m + f;
    if (!mnt::is_square(v)) continue;
    long y = mnt::to_i64(mnt::isqrt(v));
    out.insert({y, m});
    out.insert({-y, m});
  }
  return out;
}

}  // namespace

TEST(Pell, ReduceWorkedExamples) {
  const auto k6 = EmbeddingDegree::k6;
  auto a = mnt::reduce(family(k6, 4, {-1, 1}));
  EXPECT_EQ(a.family.q, QuadPoly(4, 3, 4));
  EXPECT_EQ(a.w1, -7);
  EXPECT_EQ(mnt::abs(a.w0), 15);
  EXPECT_EQ(a.f, -176);
  EXPECT_EQ(a.u, 15);
  auto b = mnt::reduce(family(k6, 4, {-7, -1}));
  EXPECT_EQ(b.family.q, QuadPoly(28, 13, 2));
  EXPECT_EQ(b.w1, -19);
  EXPECT_EQ(mnt::abs(b.w0), 63);
  EXPECT_EQ(b.f, -80);
  EXPECT_EQ(b.u, 63);
  auto c = mnt::reduce(family(k6, 4, {-13, -2}));
  EXPECT_EQ(c.family.q, QuadPoly(52, 15, 1));
  EXPECT_EQ(c.w1, -4);
  EXPECT_EQ(mnt::abs(c.w0), 39);
  EXPECT_EQ(c.f, 16);
  EXPECT_EQ(c.u, 39);
  // Companion rows come out with w1 > 0 until the sign of y is flipped.
  auto d = mnt::reduce(family(k6, 4, {7, 4}));
  EXPECT_EQ(d.w1, 26);
  EXPECT_EQ(d.sign_normalized().w1, -26);
  EXPECT_EQ(d.sign_normalized().w0, -63);
}

TEST(Pell, ReduceRejectsHasseBoundary) {
  Family f{EmbeddingDegree::k6, 1, 4, {4, 1}, QuadPoly(1, 0, 0), QuadPoly(1, 0, 0)};
  EXPECT_THROW(mnt::reduce(f), std::domain_error);
  try {
    mnt::reduce(f);
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "degenerate Hasse boundary");
  }
}

TEST(Pell, RoundTripOnGeneratedFamilies) {
  for (auto k : kAll) {
    for (const auto& f : mnt::generate(k, 8)) {
      auto inst = mnt::reduce(f);
      ASSERT_EQ(inst.f, -inst.w2);
      ASSERT_EQ(inst.w1, mnt::pell_offset_alt(f));
      ASSERT_EQ(inst.f, mnt::pell_rhs_expanded(f));
      ASSERT_GT(inst.u, 0);
      ASSERT_NE(sgn(inst.w0), 0);
      for (long x = -200; x <= 200; ++x) {
        Integer y = inst.w0 * x + inst.w1;
        Integer cm = 4 * mnt::eval(f.q, x) - mnt::eval(f.t, x) * mnt::eval(f.t, x);
        ASSERT_EQ(y * y + inst.w2, inst.u * cm);
        if (sgn(cm) <= 0) continue;
        auto split = mnt::squarefree_part(cm);
        ASSERT_EQ(y * y - inst.u * split.D * split.m * split.m, inst.f);
      }
    }
  }
}

TEST(Pell, FundamentalUnit) {
  auto u = mnt::fundamental_unit(15);
  EXPECT_EQ(u.T, 4);
  EXPECT_EQ(u.U, 1);
  u = mnt::fundamental_unit(165);
  EXPECT_EQ(u.T, 1079);
  EXPECT_EQ(u.U, 84);
  EXPECT_THROW(mnt::fundamental_unit(16), std::invalid_argument);
  EXPECT_THROW(mnt::fundamental_unit(0), std::invalid_argument);
  EXPECT_THROW(mnt::fundamental_unit(-5), std::invalid_argument);
}

TEST(Pell, FundamentalUnitIsMinimal) {
  for (long g = 2; g <= 120; ++g) {
    if (mnt::is_square(Integer(g))) continue;
    auto unit = mnt::fundamental_unit(g);
    ASSERT_EQ(unit.T * unit.T - g * unit.U * unit.U, 1);
    // Least U > 0 with 1 + g U^2 a square, scanned up to a cap.
    const std::uint64_t cap = 200'000;
    std::uint64_t U = 1;
    for (; U <= cap; ++U) {
      const std::uint64_t v = 1 + static_cast<std::uint64_t>(g) * U * U;
      const std::uint64_t s = mnt::detail::isqrt_u64(v);
      if (s * s == v) break;
    }
    if (unit.U <= cap) {
      ASSERT_EQ(unit.U, U) << g;
    } else {
      ASSERT_GT(U, cap) << g;
    }
  }
}

TEST(Pell, ClassRepresentatives) {
  auto reps = mnt::class_representatives(165, -176);
  bool found = false;
  for (const auto& c : reps) {
    ASSERT_EQ(c.y * c.y - c.g * c.m * c.m, c.f);
    if (mnt::same_class(165, -176, c.solution(), {22, 2})) found = true;
  }
  EXPECT_TRUE(found);

  reps = mnt::class_representatives(15, 1);
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0].y, 1);
  EXPECT_EQ(reps[0].m, 0);

  reps = mnt::class_representatives(15, 10);
  found = false;
  for (const auto& c : reps) {
    if (mnt::same_class(15, 10, c.solution(), {5, 1})) found = true;
  }
  EXPECT_TRUE(found);

  EXPECT_TRUE(mnt::class_representatives(15, 2).empty());  // 2 is not a norm mod 5
  EXPECT_THROW(mnt::class_representatives(15, 0), std::invalid_argument);
}

TEST(Pell, RepresentativesAreDistinctAndMinimal) {
  for (long g = 2; g <= 60; ++g) {
    if (mnt::is_square(Integer(g))) continue;
    for (long f = -60; f <= 60; ++f) {
      if (f == 0) continue;
      auto reps = mnt::class_representatives(g, f);
      for (std::size_t i = 0; i < reps.size(); ++i) {
        ASSERT_GE(reps[i].m, 0);
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
          ASSERT_FALSE(mnt::same_class(g, f, reps[i].solution(), reps[j].solution()));
        }
      }
    }
  }
}

TEST(Pell, NegativeUnit) {
  auto n = mnt::negative_unit(13);
  ASSERT_TRUE(n);
  EXPECT_EQ(n->T, 18);
  EXPECT_EQ(n->U, 5);
  EXPECT_FALSE(mnt::negative_unit(3));
  EXPECT_FALSE(mnt::negative_unit(165));
  for (long g = 2; g <= 300; ++g) {
    if (mnt::is_square(g)) continue;
    if (auto u = mnt::negative_unit(g)) {
      EXPECT_EQ(u->T * u->T - g * u->U * u->U, -1) << g;
    }
  }
}

// The continued-fraction search and the exhaustive scan give the same classes.
TEST(Pell, ContinuedFractionMatchesScan) {
  for (long g = 2; g <= 120; ++g) {
    if (mnt::is_square(g)) continue;
    auto unit = mnt::fundamental_unit(g);
    for (long f = -200; f <= 200; ++f) {
      if (f == 0) continue;
      Integer bound = mnt::fundamental_search_bound(g, f, unit);
      if (bound > 200'000) continue;
      auto scan = mnt::detail::representatives_by_scan(g, f, bound);
      auto cf = mnt::detail::representatives_by_cf(g, f, unit);
      ASSERT_EQ(cf.size(), scan.size()) << "g=" << g << " f=" << f;
      for (std::size_t i = 0; i < cf.size(); ++i) {
        ASSERT_EQ(cf[i].y, scan[i].y) << "g=" << g << " f=" << f;
        ASSERT_EQ(cf[i].m, scan[i].m) << "g=" << g << " f=" << f;
      }
    }
  }
}

TEST(Pell, Ambiguity) {
  EXPECT_TRUE(mnt::is_ambiguous({1, 0, 15, 1}));
  mnt::PellSolutionClass c{5, 1, 15, 10};
  // (5 + sqrt 15)^2 / 10 = 4 + sqrt 15, a unit, so (5, 1) and (5, -1) share a class.
  EXPECT_TRUE(mnt::same_class(15, 10, {5, 1}, {5, -1}));
  EXPECT_TRUE(mnt::is_ambiguous(c));
  for (long g = 2; g <= 50; ++g) {
    if (mnt::is_square(Integer(g))) continue;
    for (long f = -50; f <= 50; ++f) {
      if (f == 0) continue;
      for (const auto& r : mnt::class_representatives(g, f)) {
        ASSERT_EQ(mnt::is_ambiguous(r), mnt::same_class(g, f, r.solution(), {r.y, -r.m}));
      }
    }
  }
}

TEST(Pell, OrbitsReachEveryScannedSolution) {
  for (long g = 2; g <= 60; ++g) {
    if (mnt::is_square(Integer(g))) continue;
    auto unit = mnt::fundamental_unit(g);
    for (long f = -60; f <= 60; ++f) {
      if (f == 0) continue;
      auto reps = mnt::class_representatives(g, f, unit);
      auto orbit = mnt::orbit_solutions(g, reps, unit, mnt::OrbitBound::m, 300);
      std::set<std::pair<long, long>> reached;
      for (const auto& s : orbit) {
        ASSERT_EQ(s.y * s.y - g * s.m * s.m, f);
        if (sgn(s.m) >= 0) reached.insert({mnt::to_i64(s.y), mnt::to_i64(s.m)});
      }
      ASSERT_EQ(reached, scan(g, f, 300)) << "g=" << g << " f=" << f;
    }
  }
}

// Every primitive class of an instance with 4 | f is non-ambiguous.
TEST(Pell, NoPrimitiveAmbiguousClassWhenFourDividesF) {
  std::size_t checked = 0;
  for (auto k : kAll) {
    for (const auto& fam : mnt::generate(k, 6)) {
      auto inst = mnt::reduce(fam);
      if (!mnt::divides(4, inst.f)) continue;
      for (long D = 1; inst.u * D <= 500; ++D) {
        if (mnt::squarefree_part(D).m != 1) continue;
        Integer g = inst.u * D;
        if (mnt::is_square(g)) continue;
        for (const auto& c : mnt::class_representatives(g, inst.f)) {
          if (!mnt::is_primitive(c)) continue;
          ++checked;
          EXPECT_FALSE(mnt::is_ambiguous(c)) << "g=" << g << " f=" << inst.f << " y=" << c.y << " m=" << c.m;
        }
      }
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Pell, SolutionsInCongruence) {
  const auto k6 = EmbeddingDegree::k6;
  Family f = family(k6, 4, {-1, 1});
  auto inst = mnt::reduce(f);
  auto pts = mnt::solutions_in_congruence(inst, 11, 1'000'000);
  bool has_x1 = false;
  for (const auto& p : pts) {
    ASSERT_EQ(p.y * p.y - inst.u * 11 * p.m * p.m, inst.f);
    ASSERT_EQ(inst.w0 * p.x + inst.w1, p.y);
    if (p.x == 1 && p.m == 2) has_x1 = true;
  }
  EXPECT_TRUE(has_x1);

  // D = 1 asks for 4q - t^2 to be a square; compare with a scan over every x with |y| <= 10^6.
  std::set<long> from_pell, from_scan;
  for (const auto& p : mnt::solutions_in_congruence(inst, 1, 1'000'000)) from_pell.insert(mnt::to_i64(p.x));
  for (long x = -70'000; x <= 70'000; ++x) {
    if (mnt::abs(inst.w0 * x + inst.w1) > 1'000'000) continue;
    Integer cm = 4 * mnt::eval(f.q, x) - mnt::eval(f.t, x) * mnt::eval(f.t, x);
    if (mnt::is_square(cm)) from_scan.insert(x);
  }
  EXPECT_EQ(from_pell, from_scan);
  EXPECT_TRUE(from_scan.count(-3009));
}

TEST(Pell, SolutionsMatchScanOverSeeds) {
  for (auto k : kAll) {
    for (const auto& fam : mnt::generate(k, 4)) {
      auto inst = mnt::reduce(fam);
      for (long D : {1L, 2L, 3L, 5L, 7L, 11L, 15L, 19L, 43L}) {
        std::set<long> expected;
        for (long x = -300; x <= 300; ++x) {
          Integer cm = 4 * mnt::eval(fam.q, x) - mnt::eval(fam.t, x) * mnt::eval(fam.t, x);
          if (sgn(cm) < 0 || !mnt::divides(D, cm) || !mnt::is_square(cm / D)) continue;
          expected.insert(x);
        }
        Integer y_limit = std::max(mnt::abs(inst.w0 * 300 + inst.w1), mnt::abs(inst.w0 * -300 + inst.w1));
        std::set<long> got;
        for (const auto& p : mnt::solutions_in_congruence(inst, D, y_limit)) {
          if (p.x >= -300 && p.x <= 300) got.insert(mnt::to_i64(p.x));
        }
        ASSERT_EQ(got, expected) << "k=" << mnt::value(k) << " t=" << mnt::to_string(fam.t) << " D=" << D;
      }
    }
  }
}

TEST(Pell, SquareModulusFallback) {
  // u = 15 for the k = 6, h = 4, d = 1 family, so D = 15 gives g = 225.
  auto inst = mnt::reduce(family(EmbeddingDegree::k6, 4, {-1, 1}));
  ASSERT_EQ(inst.u, 15);
  auto pts = mnt::solutions_in_congruence(inst, 15, 100'000);
  for (const auto& p : pts) ASSERT_EQ(p.y * p.y - 225 * p.m * p.m, inst.f);
  std::set<long> scanned;
  for (long x = -7000; x <= 7000; ++x) {
    Integer y = inst.w0 * x + inst.w1;
    if (mnt::abs(y) > 100'000) continue;
    Integer v = y * y - inst.f;
    if (mnt::divides(225, v) && mnt::is_square(v / 225)) scanned.insert(x);
  }
  std::set<long> got;
  for (const auto& p : pts) got.insert(mnt::to_i64(p.x));
  EXPECT_EQ(got, scanned);
}
