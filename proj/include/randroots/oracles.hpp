#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "randroots/ensembles.hpp"
#include "randroots/interval.hpp"

namespace randroots {

enum class Outcome { Holds, Fails, Skipped };
const char* outcome_name(Outcome o);

struct CheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  Outcome outcome = Outcome::Skipped;
  std::string note;
  double ratio() const { return rhs > 0 ? lhs / rhs : (lhs > 0 ? INFINITY : 0.0); }
};

// ---- restricted large sieve ---------------------------------------------

// The sample is read on `domain` and rescaled affinely to T = [0, 1].
struct SieveCheckInput {
  PolySample sample;
  Interval domain;
  int d = 1;
  std::vector<double> points;  // in [0, 1], strictly increasing
  double c_star = 1.0;
  double N = 1.0;
  double S = 0.0;  // 0: smallest S meeting both integral hypotheses
};

// Skipped when the hypothesis integrals exceed (C*N)^{2k} S, or when the
// points do not keep a gap delta from both ends of T (the lemma's proof
// assumes delta <= x_1 and x_M <= 1 - delta). For a single point delta is
// its distance to the nearer end.
CheckResult check_large_sieve(const SieveCheckInput& in);

// ---- interpolation bound ------------------------------------------------

// f(x) = prod (x - roots_i) * h(x) on I, h given by its coefficients in
// (x - I.lo). Compares max_I |f| with (4 e r / m)^m max_I |f^(m)|.
struct InterpolationInput {
  std::vector<double> roots;   // m of them, inside I
  std::vector<double> h;       // multiplier coefficients, may be {1}
  Interval I;
};
CheckResult check_interpolation_bound(const InterpolationInput& in);

// Maximum of |g| on [lo, hi]: 1024-point grid, then golden-section search
// around the three best grid points.
double sup_norm(const std::function<double(double)>& g, double lo, double hi);

// ---- stability ------------------------------------------------------------

struct StabilityCheckInput {
  PolySample f;
  PolySample g;
  Interval I;
  double mu = 0.0;
  double nu = 0.0;
  int grid = 20000;   // points for verifying the hypotheses
};

struct StabilityResult {
  Outcome outcome = Outcome::Skipped;
  int qualifying_roots = 0;
  int matched_roots = 0;
  std::string note;
};
StabilityResult check_stability(const StabilityCheckInput& in);

// ---- Weyl terms -----------------------------------------------------------

double log_weyl_term(int i, double x);
double weyl_term(int i, double x);
// d-th derivative of exp(-x^2/2) x^i / sqrt(i!) by the Hermite sum.
double weyl_term_derivative(int i, double x, int d);
// The bracket of the Hermite sum: derivative divided by weyl_term.
double weyl_derivative_ratio(int i, double x, int d);

struct ConstantFit {
  double c1 = 0.0;  // smallest c1 with the lower bound valid on the grid
  double c2 = 0.0;  // largest c2 with the upper bound valid on the grid
  int points = 0;
};
// Grid i = x^2 + L x, |L| <= x^{1/3}, for each x in xs.
ConstantFit fit_weyl_term_constants(const std::vector<double>& xs);

// ---- Bombieri-Weyl norm identity ------------------------------------------

struct BwNormResult {
  double lhs = 0.0;  // (1/pi) int_0^pi G^2
  double rhs = 0.0;  // sum_l w(l)^2 (b_l^2 + c_l^2)
  double rel_err = 0.0;
  double coeff_norm_err = 0.0;  // |sum (b^2 + c^2) - sum a^2| / sum a^2
};
BwNormResult check_bw_norm_identity(int n, const std::vector<double>& a,
                                    bool allow_even = false);

// ---- Bernstein-type bound ---------------------------------------------------

struct BernsteinResult {
  double lhs = 0.0;       // int_a^b (f^(k))^2
  double base = 0.0;      // (eps0 (b'-a')^2)^{-k} n^{2k} int_{a'}^{b'} f^2
  double fitted_c = 0.0;  // (lhs / base)^{1/k}
};
BernsteinResult check_bernstein(const PolySample& p, const Interval& inner,
                                const Interval& outer, int k);

// ---- overcrowding -------------------------------------------------------

struct OvercrowdingResult {
  Outcome outcome = Outcome::Skipped;
  double max_abs = 0.0;
  double bound = 0.0;
  int roots = 0;
  double root_limit = 0.0;  // A N
  std::string note;
};
// G(u) = F(T.lo + u |T|) on [0, 1]. Hypotheses spot-checked for d = 1, 2, 3.
OvercrowdingResult check_overcrowding_contrapositive(const PolySample& p, const Interval& T,
                                                     double A, double c_star, double N);

}  // namespace randroots
