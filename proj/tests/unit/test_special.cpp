#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "randroots/special.hpp"

using namespace randroots;

// Reference values from an independent 30-digit evaluation of
// log(Gamma(a, y) e^y y^-a).
TEST(Special, ScaledUpperGamma) {
  EXPECT_NEAR(log_upper_gamma_scaled(11, 3), 6.0193850180368853778, 1e-12);
  EXPECT_NEAR(log_upper_gamma_scaled(101, 150), -3.9475062669593482365, 1e-12);
  EXPECT_NEAR(log_upper_gamma_scaled(101, 10000), -9.2002910562180716612, 1e-12);
  EXPECT_NEAR(log_upper_gamma_scaled(5.5, 0.25), 11.832431580306477848, 1e-12);
}

TEST(Special, UpperGammaConsistency) {
  // Gamma(n+1, y) = n! e^-y sum_{k<=n} y^k / k!
  for (int n : {1, 4, 9}) {
    for (double y : {0.5, 3.0, 12.0}) {
      double s = 0, term = 1;
      for (int k = 0; k <= n; ++k) {
        s += term;
        term *= y / (k + 1);
      }
      const double expect = std::lgamma(n + 1.0) - y + std::log(s);
      EXPECT_NEAR(log_upper_incomplete_gamma(n + 1, y), expect, 1e-12);
      EXPECT_NEAR(upper_incomplete_gamma_regularized(n + 1, y), std::exp(-y) * s, 1e-13);
    }
  }
}

TEST(Special, LogBinomial) {
  EXPECT_NEAR(log_binomial(10, 3), std::log(120.0), 1e-13);
  EXPECT_NEAR(log_binomial(50, 25), std::log(126410606437752.0), 1e-12);
  EXPECT_EQ(log_binomial(7, 0), 0.0);
}

TEST(Special, IndexMomentsOfBinomialWeights) {
  const int n = 400;
  std::vector<double> lw(n + 1);
  for (int i = 0; i <= n; ++i) lw[i] = log_binomial(n, i) + i * std::log(3.0);
  const auto m = index_moments(lw);
  EXPECT_NEAR(m.mean, n * 0.75, 1e-9);
  EXPECT_NEAR(m.variance, n * 0.75 * 0.25, 1e-8);
}

TEST(Special, CompensatedSumRecoversSmallTerms) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}
