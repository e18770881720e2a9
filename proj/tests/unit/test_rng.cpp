#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "randroots/rng.hpp"

using namespace randroots;

TEST(Rng, Mix64MatchesSplitMixReference) {
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(mix64(1), 0x910a2dec89025cc1ULL);
}

TEST(Rng, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t base = 0; base < 4; ++base)
    for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(derive_seed(base, k));
  EXPECT_EQ(seen.size(), 4000u);
}

TEST(Rng, StreamIsReproducible) {
  Stream a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    differs |= x != c.normal();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, NormalMoments) {
  Stream s(7);
  const int m = 200000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < m; ++i) {
    const double x = s.normal();
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  EXPECT_NEAR(s1 / m, 0.0, 0.01);
  EXPECT_NEAR(s2 / m, 1.0, 0.01);
  EXPECT_NEAR(s4 / m, 3.0, 0.06);
}

TEST(Rng, UniformOpenNeverHitsEnds) {
  Stream s(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
