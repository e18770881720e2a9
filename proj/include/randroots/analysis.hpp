#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "randroots/ensembles.hpp"
#include "randroots/interval.hpp"

namespace randroots {

struct ExperimentConfig {
  EnsembleSpec spec;
  Interval interval;
  int trials = 1;
  std::uint64_t base_seed = 0;
  double density = 16.0;
  double tol = 0.0;
  int workers = 1;

  void validate() const;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<int> counts;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
  std::size_t flagged_trials = 0;  // subdivision budget exceeded
  double wall_seconds = 0.0;
};

// Runs fn(k) for k in [0, count) on `workers` threads. Each index is
// handled exactly once; callers write into preallocated slots.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Fills mean, variance and standard error from `counts`.
void summarize(ExperimentReport& report);

struct Wilson {
  double lo = 0.0;
  double hi = 0.0;
};
Wilson wilson_interval(std::size_t hits, std::size_t trials, double z = 1.959963984540054);

struct TailPoint {
  double epsilon = 0.0;
  std::size_t hits = 0;
  double p_hat = 0.0;
  Wilson ci;
};

struct TailEstimate {
  double scale = 1.0;
  double center = 0.0;
  std::size_t trials = 0;
  std::vector<TailPoint> points;
};

// P(|N - mean| >= eps * scale) for each eps, with Wilson 95% intervals.
TailEstimate tail_curve(const ExperimentReport& report, const std::vector<double>& epsilons,
                        double scale);

struct KsResult {
  double statistic = 0.0;      // with lattice continuity correction
  double raw_statistic = 0.0;  // step CDF against Phi at the support points
  int lattice_span = 1;
};

// KS distance between the standardized counts and N(0,1). Counts live on a
// lattice of span h (gcd of pairwise differences), so the normal CDF is read
// at the half-lattice points. Throws std::domain_error on zero variance or
// fewer than 500 trials.
KsResult clt_diagnostic(const ExperimentReport& report);
KsResult ks_lattice(const std::vector<int>& counts);

struct PersistenceEstimate {
  std::size_t trials = 0;
  std::size_t zero_trials = 0;
  double p_hat = 0.0;
  Wilson ci;
  bool one_sided = false;  // fewer than 5 zero-count trials
};
PersistenceEstimate persistence_probability(const ExperimentConfig& cfg);
PersistenceEstimate persistence_from_counts(const std::vector<int>& counts);

struct RepulsionCell {
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t hits = 0;
  double p_hat = 0.0;
  double ratio = 0.0;  // p_hat / (alpha beta)
  Wilson ci;
  bool below_floor = false;  // alpha or beta under n^{-1/2}
};

struct RepulsionTable {
  double x0 = 0.0;
  double normalizer = 1.0;
  std::size_t trials = 0;
  std::vector<RepulsionCell> cells;  // alpha-major
  double ratio_spread() const;       // max ratio / min ratio over cells with hits
};

// Joint small-ball frequency of (F(x0), F'(x0)/N). N is n for Kac, Trig and
// the orthogonal ensembles and 1 for Weyl. For Elliptic, x0 is the angle
// theta and the pair is (G(theta), G'(theta) sin^2(theta) / sqrt(n)).
RepulsionTable repulsion_probe(const EnsembleSpec& spec, double x0,
                               const std::vector<double>& alphas,
                               const std::vector<double>& betas, std::size_t trials,
                               std::uint64_t seed, int workers = 1);

double derivative_normalizer(const EnsembleSpec& spec);

// Arcsine law on [-1, 1].
struct EquilibriumMeasure {
  static double measure(double a, double b);
  static double density(double y);
};

}  // namespace randroots
