#pragma once

#include <cmath>
#include <span>

namespace randroots {

// log Gamma(a, y), the unregularized upper incomplete gamma, a > 0, y >= 0.
double log_upper_incomplete_gamma(double a, double y);
// log(Gamma(a, y) e^y y^-a), y > 0; no cancellation for large y.
double log_upper_gamma_scaled(double a, double y);

// Q(a, y) = Gamma(a, y) / Gamma(a).
double upper_incomplete_gamma_regularized(double a, double y);

double log_binomial(int n, int k);

// Mean and variance of the index under weights w_i = exp(logw[i]),
// normalized, two-pass around the mode.
struct IndexMoments {
  double mean = 0.0;
  double variance = 0.0;
};
IndexMoments index_moments(std::span<const double> logw);

// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace randroots
