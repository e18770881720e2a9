#include <gtest/gtest.h>

#include <cmath>

#include "randroots/campaigns.hpp"
#include "randroots/oracles.hpp"
#include "randroots/rng.hpp"

using namespace randroots;

TEST(Oracles, SupNorm) {
  EXPECT_NEAR(sup_norm([](double x) { return std::sin(x); }, 0.0, 3.0), 1.0, 1e-12);
  EXPECT_NEAR(sup_norm([](double x) { return x * x - 1; }, -0.5, 2.0), 3.0, 1e-14);
}

TEST(Oracles, InterpolationBound) {
  const auto r = check_interpolation_bound({{0.1, 0.4, 0.9}, {1.0}, Interval(0, 1)});
  EXPECT_EQ(r.outcome, Outcome::Holds);
  EXPECT_LE(r.ratio(), 1.0);
  // |f| max of (x-0.1)(x-0.4)(x-0.9) on [0,1] is at x = 1
  EXPECT_NEAR(r.lhs, 0.9 * 0.6 * 0.1, 1e-12);
  const auto s = check_interpolation_bound({{0.2, 0.25}, {2.0, -1.0, 0.5}, Interval(0, 1)});
  EXPECT_EQ(s.outcome, Outcome::Holds);
}

TEST(Oracles, WeylDerivativeClosedForms) {
  for (int i : {40, 90, 150})
    for (double x : {6.0, 10.5, 12.5}) {
      const long double t = weyl_term(i, x);
      const long double g = (i - x * x) / x;  // d log term / dx
      const long double d2 = t * (g * g - i / (x * x) - 1.0L);
      EXPECT_NEAR(weyl_term_derivative(i, x, 1) / (t * g), 1.0, 1e-12);
      EXPECT_NEAR(weyl_derivative_ratio(i, x, 1), static_cast<double>(g), 1e-12 * std::fabs(g));
      EXPECT_NEAR(weyl_term_derivative(i, x, 2), static_cast<double>(d2), 1e-11 * std::fabs(d2));
    }
}

TEST(Oracles, WeylDerivativeAgainstFiniteDifferences) {
  Stream s(21);
  for (int trial = 0; trial < 10; ++trial) {
    const double x = 5 + 15 * s.uniform();
    const int i = static_cast<int>(std::lround(x * x + std::cbrt(x) * (2 * s.uniform() - 1)));
    for (int d = 1; d <= 6; ++d) {
      const double h = weyl_term_derivative(i, x, d);
      const double fd = weyl_term_derivative_fd(i, x, d);
      EXPECT_NEAR(h, fd, 1e-6 * std::fabs(fd)) << i << " " << x << " " << d;
    }
  }
}

TEST(Oracles, WeylTermConstants) {
  const auto c = fit_weyl_term_constants({10, 30, 100});
  EXPECT_GT(c.c1, 0.0);
  EXPECT_GT(c.c2, 0.0);
  EXPECT_GE(c.c1, c.c2);  // c1 bounds every per-point constant from above, c2 from below
  EXPECT_GT(c.points, 0);
}

TEST(Oracles, BwNormIdentity) {
  Stream s(2);
  for (int n : {3, 11, 51, 301}) {
    std::vector<double> a(n + 1);
    for (auto& v : a) v = s.normal();
    const auto r = check_bw_norm_identity(n, a);
    EXPECT_LT(r.rel_err, 1e-10) << n;
    EXPECT_LT(r.coeff_norm_err, 1e-10) << n;
  }
}

TEST(Oracles, LargeSieveInstance) {
  SieveCheckInput in{make_sample(EnsembleSpec(EnsembleKind::Trig, 10), 4), Interval(0, 2 * M_PI),
                     1, {0.3, 0.5, 0.7}, 1.0, 10 * 2 * M_PI, 0.0};
  const auto r = check_large_sieve(in);
  EXPECT_EQ(r.outcome, Outcome::Holds) << r.note;
  EXPECT_LE(r.ratio(), 1.0);
  // point on the end of T has no room for delta
  in.points = {0.0, 0.5};
  EXPECT_EQ(check_large_sieve(in).outcome, Outcome::Skipped);
}

TEST(Oracles, Stability) {
  const EnsembleSpec spec(EnsembleKind::Kac, 2);
  StabilityCheckInput in{make_sample_from(spec, {-0.25, 0.0, 1.0}),
                         make_sample_from(spec, {0.03, 0.0, 0.0}), Interval(-1, 1), 0.05, 0.5};
  const auto r = check_stability(in);
  EXPECT_EQ(r.outcome, Outcome::Holds) << r.note;
  EXPECT_EQ(r.qualifying_roots, 2);
  EXPECT_EQ(r.matched_roots, 2);
  in.mu = 0.3;  // |f| and |f'| both small near 0
  EXPECT_EQ(check_stability(in).outcome, Outcome::Skipped);
}

TEST(Oracles, Bernstein) {
  const auto p = make_sample(EnsembleSpec(EnsembleKind::Kac, 50), 3);
  const auto r = check_bernstein(p, Interval(-0.5, 0.5), Interval(-0.8, 0.8), 1);
  EXPECT_GT(r.lhs, 0.0);
  EXPECT_GT(r.fitted_c, 0.0);
  EXPECT_TRUE(std::isfinite(r.fitted_c));
}

TEST(Oracles, Overcrowding) {
  const int n = 100;
  const auto p = make_sample(EnsembleSpec(EnsembleKind::Weyl, n), 8);
  const auto r = check_overcrowding_contrapositive(p, Interval(-5, 5), 32, 2, 10);
  EXPECT_NE(r.outcome, Outcome::Fails) << r.note;
}
