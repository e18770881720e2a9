#include "randroots/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/normal.hpp>

#include "randroots/evaluation.hpp"
#include "randroots/rng.hpp"
#include "randroots/rootcount.hpp"

namespace randroots {

void ExperimentConfig::validate() const {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (!(density >= 8.0)) throw std::invalid_argument("scan density must be at least 8");
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t w = std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(count, 1));
  if (w <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count || failed.load()) return;
      try {
        fn(k);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < w; ++i) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void summarize(ExperimentReport& r) {
  const std::size_t m = r.counts.size();
  if (m == 0) {
    r.mean = r.variance = r.std_error = 0.0;
    return;
  }
  double sum = 0.0;
  for (int c : r.counts) sum += c;
  r.mean = sum / m;
  double ss = 0.0;
  for (int c : r.counts) ss += (c - r.mean) * (c - r.mean);
  r.variance = m > 1 ? ss / (m - 1) : 0.0;
  r.std_error = std::sqrt(r.variance / m);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.config = cfg;
  const ScanPlan plan(cfg.spec, cfg.interval, cfg.density);
  ScanOptions opt;
  opt.density = cfg.density;
  opt.tol = cfg.tol;
  r.counts.assign(cfg.trials, 0);
  std::vector<char> flagged(cfg.trials, 0);
  parallel_for(cfg.trials, cfg.workers, [&](std::size_t k) {
    const PolySample p = make_sample(cfg.spec, derive_seed(cfg.base_seed, k));
    const RootCount rc = count_roots_scan(p, plan, opt);
    r.counts[k] = rc.count;
    flagged[k] = rc.budget_exceeded;
  });
  r.flagged_trials = std::count(flagged.begin(), flagged.end(), 1);
  summarize(r);
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Wilson wilson_interval(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = hits / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TailEstimate tail_curve(const ExperimentReport& report, const std::vector<double>& epsilons,
                        double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("tail scale must be positive");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0)) throw std::invalid_argument("epsilons must be nonnegative");
    if (i > 0 && !(epsilons[i] > epsilons[i - 1]))
      throw std::invalid_argument("epsilons must be increasing");
  }
  TailEstimate t;
  t.scale = scale;
  t.center = report.mean;
  t.trials = report.counts.size();
  std::vector<double> dev;
  dev.reserve(t.trials);
  for (int c : report.counts) dev.push_back(std::fabs(c - report.mean));
  std::sort(dev.begin(), dev.end());
  for (double eps : epsilons) {
    const double thr = eps * scale;
    const auto hits = static_cast<std::size_t>(dev.end() - std::lower_bound(dev.begin(), dev.end(), thr));
    TailPoint pt;
    pt.epsilon = eps;
    pt.hits = hits;
    pt.p_hat = t.trials ? static_cast<double>(hits) / t.trials : 0.0;
    pt.ci = wilson_interval(hits, t.trials);
    t.points.push_back(pt);
  }
  return t;
}

KsResult ks_lattice(const std::vector<int>& counts) {
  const std::size_t m = counts.size();
  if (m < 2) throw std::domain_error("KS diagnostic needs at least two counts");
  ExperimentReport r;
  r.counts = counts;
  summarize(r);
  if (!(r.variance > 0.0)) throw std::domain_error("counts have zero variance");
  std::map<int, std::size_t> freq;
  for (int c : counts) ++freq[c];
  int span = 0;
  const int first = freq.begin()->first;
  for (const auto& [v, _] : freq) span = std::gcd(span, v - first);
  const double sd = std::sqrt(r.variance);
  const boost::math::normal_distribution<double> phi;
  auto Phi = [&](double x) { return boost::math::cdf(phi, (x - r.mean) / sd); };

  KsResult out;
  out.lattice_span = span;
  std::size_t below = 0;
  for (const auto& [v, f] : freq) {
    const double left = static_cast<double>(below) / m;
    below += f;
    const double right = static_cast<double>(below) / m;
    const double at = Phi(v);
    out.raw_statistic = std::max({out.raw_statistic, std::fabs(right - at), std::fabs(left - at)});
    out.statistic = std::max({out.statistic, std::fabs(right - Phi(v + 0.5 * span)),
                              std::fabs(left - Phi(v - 0.5 * span))});
  }
  return out;
}

KsResult clt_diagnostic(const ExperimentReport& report) {
  if (report.counts.size() < 500) throw std::domain_error("CLT diagnostic needs at least 500 trials");
  return ks_lattice(report.counts);
}

PersistenceEstimate persistence_from_counts(const std::vector<int>& counts) {
  if (counts.empty()) throw std::invalid_argument("persistence needs at least one trial");
  PersistenceEstimate e;
  e.trials = counts.size();
  e.zero_trials = std::count(counts.begin(), counts.end(), 0);
  e.p_hat = static_cast<double>(e.zero_trials) / e.trials;
  e.ci = wilson_interval(e.zero_trials, e.trials);
  e.one_sided = e.zero_trials < 5;
  return e;
}

PersistenceEstimate persistence_probability(const ExperimentConfig& cfg) {
  return persistence_from_counts(run_experiment(cfg).counts);
}

double derivative_normalizer(const EnsembleSpec& spec) {
  switch (spec.kind) {
    case EnsembleKind::Weyl: return 1.0;
    case EnsembleKind::Elliptic: return std::sqrt(static_cast<double>(spec.degree));
    default: return static_cast<double>(spec.degree);
  }
}

double RepulsionTable::ratio_spread() const {
  double lo = INFINITY, hi = 0.0;
  for (const auto& c : cells) {
    if (c.hits == 0) continue;
    lo = std::min(lo, c.ratio);
    hi = std::max(hi, c.ratio);
  }
  return hi > 0.0 ? hi / lo : INFINITY;
}

RepulsionTable repulsion_probe(const EnsembleSpec& spec, double x0,
                               const std::vector<double>& alphas,
                               const std::vector<double>& betas, std::size_t trials,
                               std::uint64_t seed, int workers) {
  spec.validate();
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  for (double v : alphas)
    if (!(v >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
  for (double v : betas)
    if (!(v >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  const Evaluator ev(spec);
  const double N = derivative_normalizer(spec);
  std::vector<double> fv(trials), dv(trials);
  parallel_for(trials, workers, [&](std::size_t k) {
    const PolySample p = make_sample(spec, derive_seed(seed, k));
    ValueSlope v;
    if (spec.kind == EnsembleKind::Elliptic) {
      v = ev.angular(p, x0);
      const double s = std::sin(x0);
      v.df *= s * s;
    } else {
      v = ev.value_slope(p, x0);
    }
    fv[k] = std::fabs(v.f);
    dv[k] = std::fabs(v.df) / N;
  });
  RepulsionTable t;
  t.x0 = x0;
  t.normalizer = N;
  t.trials = trials;
  const double floor = 1.0 / std::sqrt(static_cast<double>(spec.degree));
  for (double a : alphas) {
    for (double b : betas) {
      RepulsionCell c;
      c.alpha = a;
      c.beta = b;
      for (std::size_t k = 0; k < trials; ++k)
        if (fv[k] <= a && dv[k] <= b) ++c.hits;
      c.p_hat = static_cast<double>(c.hits) / trials;
      c.ratio = a * b > 0.0 ? c.p_hat / (a * b) : 0.0;
      c.ci = wilson_interval(c.hits, trials);
      c.below_floor = a < floor || b < floor;
      t.cells.push_back(c);
    }
  }
  return t;
}

double EquilibriumMeasure::measure(double a, double b) {
  if (!(a <= b)) throw std::invalid_argument("measure needs a <= b");
  a = std::clamp(a, -1.0, 1.0);
  b = std::clamp(b, -1.0, 1.0);
  return (std::asin(b) - std::asin(a)) / std::numbers::pi;
}

double EquilibriumMeasure::density(double y) {
  if (!(std::fabs(y) < 1.0)) return 0.0;
  return 1.0 / (std::numbers::pi * std::sqrt(1.0 - y * y));
}

}  // namespace randroots
