#include "randroots/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace randroots {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// log of sum_{k>=0} y^k / (a (a+1) ... (a+k)), the lower-gamma series.
double log_lower_series(double a, double y) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < kMaxIter; ++k) {
    term *= y / (a + k);
    sum += term;
    if (term < sum * kEps) break;
  }
  return std::log(sum);
}

// log of the continued fraction for Gamma(a, y) e^y y^-a (modified Lentz).
double log_upper_fraction(double a, double y) {
  constexpr double tiny = 1e-300;
  double b = y + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::log(h);
}

}  // namespace

double log_upper_incomplete_gamma(double a, double y) {
  if (!(a > 0.0) || !(y >= 0.0)) throw std::domain_error("incomplete gamma needs a > 0, y >= 0");
  if (y == 0.0) return std::lgamma(a);
  if (std::isinf(y)) return -std::numeric_limits<double>::infinity();
  if (y > a + 1.0) return -y + a * std::log(y) + log_upper_fraction(a, y);
  // P(a, y) = e^-y y^a series / Gamma(a) stays below about 0.6 here.
  const double log_p = -y + a * std::log(y) + log_lower_series(a, y) - std::lgamma(a);
  return std::lgamma(a) + std::log1p(-std::exp(log_p));
}

double log_upper_gamma_scaled(double a, double y) {
  if (!(a > 0.0) || !(y > 0.0)) throw std::domain_error("scaled incomplete gamma needs a > 0, y > 0");
  if (std::isinf(y)) return -std::log(y);
  if (y > a + 1.0) return log_upper_fraction(a, y);
  return log_upper_incomplete_gamma(a, y) + y - a * std::log(y);
}

double upper_incomplete_gamma_regularized(double a, double y) {
  const double q = std::exp(log_upper_incomplete_gamma(a, y) - std::lgamma(a));
  return std::clamp(q, 0.0, 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

IndexMoments index_moments(std::span<const double> logw) {
  if (logw.empty()) return {};
  const double peak = *std::max_element(logw.begin(), logw.end());
  std::size_t mode = 0;
  while (logw[mode] != peak) ++mode;
  double total = 0.0;
  double first = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    const double w = std::exp(logw[i] - peak);
    total += w;
    first += w * (static_cast<double>(i) - static_cast<double>(mode));
  }
  const double shift = first / total;
  const double mean = static_cast<double>(mode) + shift;
  double second = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    const double w = std::exp(logw[i] - peak);
    const double dev = (static_cast<double>(i) - static_cast<double>(mode)) - shift;
    second += w * dev * dev;
  }
  return {mean, second / total};
}

}  // namespace randroots
