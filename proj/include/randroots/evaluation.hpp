#pragma once

#include <memory>
#include <vector>

#include "randroots/ensembles.hpp"

namespace randroots {

struct ValueSlope {
  double f = 0.0;
  double df = 0.0;
};

// Per-ensemble evaluation of a sample. The function evaluated is
//   Kac:        sum a_i x^i
//   Trig:       n^-1/2 sum_{j=1..n} a_j cos(jx) + b_j sin(jx)
//   Orthogonal: n^-1/2 sum a_j p_j(x), p_j orthonormal
//   Elliptic:   (1+x^2)^(-n/2) sum a_i sqrt(C(n,i)) x^i = G(arccot x)
//   Weyl:       e^(-x^2/2) sum a_i x^i / sqrt(i!)
// and derivatives are of that same function. Tables depending only on the
// spec are built once, so one Evaluator can serve many samples.
class Evaluator {
 public:
  explicit Evaluator(const EnsembleSpec& spec);

  const EnsembleSpec& spec() const { return spec_; }

  double value(const PolySample& p, double x) const { return value_slope(p, x).f; }
  ValueSlope value_slope(const PolySample& p, double x) const;

  // Positive multiple of the function with the same zeros and O(1) size
  // everywhere: Kac divides by |x|^n outside [-1, 1], Weyl divides by the
  // pointwise standard deviation. Used by the root scanner.
  ValueSlope working(const PolySample& p, double x) const;

  // F, F', ..., F^(order). Not available for Elliptic beyond order 1.
  std::vector<double> derivatives(const PolySample& p, double x, int order) const;

  // Elliptic only: G(theta) and dG/dtheta.
  ValueSlope angular(const PolySample& p, double theta) const;

 private:
  ValueSlope kac(const PolySample& p, double x, bool scaled) const;
  ValueSlope trig(const PolySample& p, double x) const;
  ValueSlope orthogonal(const PolySample& p, double x) const;
  ValueSlope weyl(const PolySample& p, double x, bool scaled) const;

  EnsembleSpec spec_;
  std::vector<double> rec_a_;        // Orthogonal: a_j, j = 0..n+1 (a_0 unused)
  std::vector<double> rec_b_;        // Orthogonal: b_j
  double p0_ = 1.0;
  std::vector<double> half_log_;     // Elliptic: log C(n,i)/2; Weyl: log(i!)/2
  std::vector<double> sqrt_int_;     // sqrt(i)
};

double evaluate(const PolySample& p, double x);
double evaluate_derivative(const PolySample& p, double x);

}  // namespace randroots
