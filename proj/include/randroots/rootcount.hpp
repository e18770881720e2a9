#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "randroots/ensembles.hpp"
#include "randroots/evaluation.hpp"
#include "randroots/interval.hpp"

namespace randroots {

enum class Certification { ExactSturm, ScanRefined };

struct RootCount {
  int count = 0;
  Certification certification = Certification::ScanRefined;
  std::optional<std::vector<double>> roots;
  std::optional<double> min_gap;
  bool budget_exceeded = false;  // subdivision budget hit; count may be low
  std::size_t nodes = 0;         // evaluations spent on subdivision
};

struct ScanOptions {
  double density = 16.0;            // grid points per expected root
  double tol = 0.0;                 // 0 selects 1e-12 * max(1, |I|)
  bool keep_roots = false;
  int max_depth = 12;
  std::size_t node_budget = 1000000;
};

// Default counting window per ensemble: Kac [-1e6, 1e6], Trig [0, 2pi],
// Elliptic and Weyl [-10 sqrt(n), 10 sqrt(n)], Orthogonal [-1/2, 1/2].
Interval default_interval(const EnsembleSpec& spec);

// Grid over an interval placed uniformly in the cumulative expected root
// count. Depends on the spec only, so one plan serves a whole campaign.
class ScanPlan {
 public:
  ScanPlan(const EnsembleSpec& spec, const Interval& I, double density = 16.0);

  const Interval& interval() const { return interval_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const Evaluator& evaluator() const { return eval_; }
  double expected_roots() const { return expected_; }

 private:
  Interval interval_;
  Evaluator eval_;
  std::vector<double> nodes_;
  double expected_ = 0.0;
};

RootCount count_roots_scan(const PolySample& p, const ScanPlan& plan,
                           const ScanOptions& opt = {});
RootCount count_roots_scan(const PolySample& p, const Interval& I,
                           double density = 16.0, double tol = 0.0);

std::vector<double> find_roots(const PolySample& p, const Interval& I, double tol = 0.0);

// Exact count of distinct real roots of sum c_i x^i in (lo, hi].
// Degree at most 512; the zero polynomial is rejected.
RootCount count_roots_sturm(const std::vector<std::int64_t>& coeffs, const Interval& I);

// Distinct real roots on the whole line.
int count_real_roots_sturm(const std::vector<std::int64_t>& coeffs);

constexpr int kMaxSturmDegree = 512;

}  // namespace randroots
