#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>

#include "randroots/rootcount.hpp"

using namespace randroots;

namespace {

PolySample kac(std::vector<double> a) {
  const int n = static_cast<int>(a.size()) - 1;
  return make_sample_from(EnsembleSpec(EnsembleKind::Kac, n), std::move(a));
}

// Chebyshev T_n in the monomial basis.
std::vector<std::int64_t> chebyshev_t(int n) {
  std::vector<std::int64_t> prev{1}, cur{0, 1};
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    std::vector<std::int64_t> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

TEST(Sturm, ChebyshevRootsAllInside) {
  for (int n : {5, 10, 20}) {
    const auto c = chebyshev_t(n);
    EXPECT_EQ(count_roots_sturm(c, Interval(-1, 1)).count, n);
    EXPECT_EQ(count_real_roots_sturm(c), n);
    EXPECT_EQ(count_roots_sturm(c, Interval(-1, 1)).certification, Certification::ExactSturm);
    // cos((2k-1) pi / 2n) > 0.5 for the roots with (2k-1)/2n < 1/3
    int above = 0;
    for (int k = 1; k <= n; ++k) above += std::cos((2 * k - 1) * M_PI / (2 * n)) > 0.5;
    EXPECT_EQ(count_roots_sturm(c, Interval(0.5, 1)).count, above);
  }
}

TEST(Sturm, HalfOpenConvention) {
  const std::vector<std::int64_t> c{-1, 0, 1};  // x^2 - 1
  EXPECT_EQ(count_roots_sturm(c, Interval(-1, 1)).count, 1);
  EXPECT_EQ(count_roots_sturm(c, Interval(-1.5, 1)).count, 2);
  EXPECT_EQ(count_roots_sturm(c, Interval(1, 3)).count, 0);
}

TEST(Sturm, RepeatedRootsCountedOnce) {
  // (x - 1)^2 (x + 2) = x^3 - 3x + 2
  EXPECT_EQ(count_real_roots_sturm({2, -3, 0, 1}), 2);
  // (x^2 + 1)^2 has none
  EXPECT_EQ(count_real_roots_sturm({1, 0, 2, 0, 1}), 0);
}

TEST(Sturm, RejectsBadInput) {
  EXPECT_ANY_THROW(count_real_roots_sturm({0, 0, 0}));
  EXPECT_ANY_THROW(count_real_roots_sturm(std::vector<std::int64_t>(kMaxSturmDegree + 2, 1)));
}

TEST(Scan, KnownPolynomials) {
  const auto p = kac({-2.0, 0.0, 1.0});
  const auto r = find_roots(p, Interval(-10, 10));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r[1], std::sqrt(2.0), 1e-12);

  const auto c = chebyshev_t(15);
  std::vector<double> cd(c.begin(), c.end());
  EXPECT_EQ(count_roots_scan(kac(cd), Interval(-1, 1)).count, 15);

  // double root at an exact grid node
  EXPECT_EQ(count_roots_scan(kac({2, -3, 0, 1}), Interval(-5, 5)).count, 2);
}

TEST(Scan, OtherEnsembles) {
  // cos(3x): roots pi/6 + k pi/3
  std::vector<double> a(4, 0.0), b(4, 0.0);
  a[3] = 1.0;
  const auto t = make_sample_from(EnsembleSpec(EnsembleKind::Trig, 3), a, b);
  const auto tr = count_roots_scan(t, Interval(0, 2 * M_PI), 16.0);
  EXPECT_EQ(tr.count, 6);

  // sqrt(2)/sqrt(2!) x^2 - 1 = x^2 - 1 under the Weyl weights
  const auto w = make_sample_from(EnsembleSpec(EnsembleKind::Weyl, 2), {-1.0, 0.0, std::sqrt(2.0)});
  EXPECT_EQ(find_roots(w, Interval(-20, 20)).size(), 2u);
  EXPECT_NEAR(find_roots(w, Interval(-20, 20))[1], 1.0, 1e-12);

  // elliptic a_i sqrt(C(2,i)) x^i = x^2 - 1
  const auto e = make_sample_from(EnsembleSpec(EnsembleKind::Elliptic, 2), {-1.0, 0.0, 1.0});
  EXPECT_EQ(count_roots_scan(e, Interval(-20, 20)).count, 2);

  // P_3 roots 0 and +-sqrt(3/5)
  const EnsembleSpec leg(EnsembleKind::Orthogonal, 3, CoeffDist::gaussian(), OrthoBasis::legendre());
  const auto l = make_sample_from(leg, {0.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(count_roots_scan(l, Interval(-0.5, 0.5)).count, 1);
  const auto lr = find_roots(l, Interval(-1, 1));
  ASSERT_EQ(lr.size(), 3u);
  EXPECT_NEAR(lr[2], std::sqrt(0.6), 1e-12);
}

TEST(Scan, AgreesWithSturmOnRademacherKac) {
  for (int n : {10, 50, 150}) {
    const EnsembleSpec spec(EnsembleKind::Kac, n, CoeffDist::rademacher());
    const Interval I = default_interval(spec);
    const ScanPlan plan(spec, I);
    for (std::uint64_t s = 0; s < 60; ++s) {
      const auto p = make_sample(spec, s);
      std::vector<std::int64_t> c(p.a.begin(), p.a.end());
      const auto scan = count_roots_scan(p, plan);
      EXPECT_FALSE(scan.budget_exceeded);
      EXPECT_EQ(scan.count, count_roots_sturm(c, I).count) << "n=" << n << " seed=" << s;
    }
  }
}

TEST(Scan, DensityInsensitive) {
  for (auto kind : {EnsembleKind::Elliptic, EnsembleKind::Weyl, EnsembleKind::Trig}) {
    const EnsembleSpec spec(kind, 60);
    const Interval I = default_interval(spec);
    const ScanPlan coarse(spec, I, 16.0), fine(spec, I, 96.0);
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto p = make_sample(spec, s);
      EXPECT_EQ(count_roots_scan(p, coarse).count, count_roots_scan(p, fine).count);
    }
  }
}

TEST(Scan, PlanTracksExpectedCount) {
  const EnsembleSpec spec(EnsembleKind::Elliptic, 100);
  const ScanPlan plan(spec, Interval(-100, 100), 16.0);
  EXPECT_NEAR(plan.expected_roots(), 10.0 * 2 * std::atan(100.0) / M_PI, 1e-6);
  EXPECT_GE(plan.nodes().size(), 160u);
  EXPECT_DOUBLE_EQ(plan.nodes().front(), -100.0);
  EXPECT_DOUBLE_EQ(plan.nodes().back(), 100.0);
}

TEST(Scan, DefaultIntervals) {
  EXPECT_EQ(default_interval(EnsembleSpec(EnsembleKind::Kac, 5)).hi, 1e6);
  EXPECT_DOUBLE_EQ(default_interval(EnsembleSpec(EnsembleKind::Trig, 5)).hi, 2 * M_PI);
  EXPECT_DOUBLE_EQ(default_interval(EnsembleSpec(EnsembleKind::Weyl, 100)).hi, 100.0);
  EXPECT_DOUBLE_EQ(default_interval(EnsembleSpec(EnsembleKind::Orthogonal, 5)).lo, -0.5);
}
