#include "randroots/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randroots {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Moments of the piecewise-linear quantile function: flat half-cells at the
// ends, linear segments of probability 1/K between knots.
void table_moments(const std::vector<double>& q, double& mean, double& second) {
  const double K = static_cast<double>(q.size());
  double m1 = 0.5 / K * (q.front() + q.back());
  double m2 = 0.5 / K * (q.front() * q.front() + q.back() * q.back());
  for (std::size_t j = 0; j + 1 < q.size(); ++j) {
    const double a = q[j];
    const double b = q[j + 1];
    m1 += (a + b) / (2.0 * K);
    m2 += (a * a + a * b + b * b) / (3.0 * K);
  }
  mean = m1;
  second = m2;
}

}  // namespace

CoeffDist CoeffDist::from_quantiles(std::vector<double> q) {
  if (q.size() != kQuantilePoints)
    throw std::invalid_argument("quantile table must have 1024 entries");
  for (double v : q)
    if (!std::isfinite(v)) throw std::invalid_argument("quantile table has non-finite entry");
  if (!std::is_sorted(q.begin(), q.end()))
    throw std::invalid_argument("quantile table must be nondecreasing");
  double mean = 0.0, second = 0.0;
  table_moments(q, mean, second);
  const double var = second - mean * mean;
  if (!(var > 0.0)) throw std::invalid_argument("quantile table is degenerate");
  const double sd = std::sqrt(var);
  for (double& v : q) v = (v - mean) / sd;
  CoeffDist d(DistKind::Custom);
  d.table_ = std::move(q);
  return d;
}

CoeffDist CoeffDist::parse(const std::string& name) {
  if (name == "gauss" || name == "gaussian") return gaussian();
  if (name == "rademacher") return rademacher();
  if (name == "uniform") return uniform();
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

std::string CoeffDist::name() const {
  switch (kind_) {
    case DistKind::Gaussian: return "gauss";
    case DistKind::Rademacher: return "rademacher";
    case DistKind::UniformSym: return "uniform";
    case DistKind::Custom: return "custom";
  }
  return "?";
}

double CoeffDist::quantile(double u) const {
  const double K = static_cast<double>(table_.size());
  const double t = u * K - 0.5;
  if (t <= 0.0) return table_.front();
  if (t >= K - 1.0) return table_.back();
  const auto j = static_cast<std::size_t>(t);
  const double w = t - static_cast<double>(j);
  return table_[j] + w * (table_[j + 1] - table_[j]);
}

double CoeffDist::draw(Stream& s) const {
  switch (kind_) {
    case DistKind::Gaussian: return s.normal();
    case DistKind::Rademacher: return s.coin() ? 1.0 : -1.0;
    case DistKind::UniformSym: return kSqrt3 * (2.0 * s.uniform() - 1.0);
    case DistKind::Custom: return quantile(s.uniform());
  }
  return 0.0;
}

void fill_coefficients(const CoeffDist& dist, Stream& s, std::span<double> out) {
  for (double& v : out) v = dist.draw(s);
}

std::vector<double> sample_coefficients(const CoeffDist& dist, std::size_t count,
                                        std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("count must be at least 1");
  std::vector<double> out(count);
  Stream s(seed);
  fill_coefficients(dist, s, out);
  return out;
}

}  // namespace randroots
