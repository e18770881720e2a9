#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "randroots/distributions.hpp"

using namespace randroots;

namespace {

void expect_standard(const CoeffDist& d, double tol) {
  const auto v = sample_coefficients(d, 200000, 11);
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double var = 0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= v.size() - 1;
  EXPECT_NEAR(mean, 0.0, tol) << d.name();
  EXPECT_NEAR(var, 1.0, 2 * tol) << d.name();
}

}  // namespace

TEST(Distributions, AllLawsStandardized) {
  expect_standard(CoeffDist::gaussian(), 0.01);
  expect_standard(CoeffDist::rademacher(), 0.01);
  expect_standard(CoeffDist::uniform(), 0.01);
}

TEST(Distributions, Supports) {
  const auto r = sample_coefficients(CoeffDist::rademacher(), 1000, 3);
  EXPECT_TRUE(std::all_of(r.begin(), r.end(), [](double x) { return x == 1.0 || x == -1.0; }));
  const auto u = sample_coefficients(CoeffDist::uniform(), 1000, 3);
  EXPECT_TRUE(std::all_of(u.begin(), u.end(),
                          [](double x) { return std::fabs(x) <= std::sqrt(3.0); }));
}

TEST(Distributions, CustomTableIsRestandardized) {
  // Exponential quantiles: mean 1, variance 1 before shifting.
  std::vector<double> q(CoeffDist::kQuantilePoints);
  for (std::size_t k = 0; k < q.size(); ++k)
    q[k] = 3.0 - 2.0 * std::log(1.0 - (k + 0.5) / q.size());
  const CoeffDist d = CoeffDist::from_quantiles(q);
  EXPECT_EQ(d.kind(), DistKind::Custom);
  expect_standard(d, 0.015);
  EXPECT_LT(d.quantile(0.25), d.quantile(0.75));
}

TEST(Distributions, CustomTableRejectsBadInput) {
  EXPECT_THROW(CoeffDist::from_quantiles({0.0, 1.0}), std::invalid_argument);
  std::vector<double> flat(CoeffDist::kQuantilePoints, 2.0);
  EXPECT_ANY_THROW(CoeffDist::from_quantiles(flat));
  std::vector<double> dec(CoeffDist::kQuantilePoints);
  for (std::size_t k = 0; k < dec.size(); ++k) dec[k] = -static_cast<double>(k);
  EXPECT_ANY_THROW(CoeffDist::from_quantiles(dec));
}

TEST(Distributions, ParseNames) {
  EXPECT_EQ(CoeffDist::parse("gauss").kind(), DistKind::Gaussian);
  EXPECT_EQ(CoeffDist::parse("rademacher").kind(), DistKind::Rademacher);
  EXPECT_EQ(CoeffDist::parse("uniform").kind(), DistKind::UniformSym);
  EXPECT_ANY_THROW(CoeffDist::parse("cauchy"));
}
