/**
 * @file  acceptance.cpp
 * @brief One PASS/FAIL line per acceptance criterion.
 *
 *   acceptance [--profile quick|full] [--workers N] [--only K]
 *
 * The full profile uses the trial counts the criteria are stated for; quick
 * divides Monte Carlo work by ten and is meant for smoke runs only.
 *
 * Exit status is 1 when a criterion fails that is not listed in kKnownGaps.
 * Known gaps still print FAIL with the measured numbers.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "randroots/analysis.hpp"
#include "randroots/campaigns.hpp"
#include "randroots/io.hpp"
#include "randroots/kernels.hpp"
#include "randroots/oracles.hpp"
#include "randroots/rng.hpp"
#include "randroots/rootcount.hpp"

using namespace randroots;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Context {
  bool full = true;
  int workers = 1;
  int scaled(int full_count) const { return full ? full_count : std::max(50, full_count / 10); }
};

// Criteria whose stated tolerance the exact expectation itself misses.
const std::map<int, std::string> kKnownGaps = {
    {3, "E N for Kac n=1e4 is 6.4893 by quadrature; the next-order constant puts it 0.6% "
        "above the +10% band around (2/pi) ln n"},
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExperimentReport simulate(const Context& ctx, const EnsembleSpec& spec, const Interval& I,
                          int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.spec = spec;
  cfg.interval = I;
  cfg.trials = trials;
  cfg.base_seed = seed;
  cfg.workers = ctx.workers;
  return run_experiment(cfg);
}

// Shared by criteria 3 and 13.
const ExperimentReport& kac_run(const Context& ctx) {
  static const ExperimentReport r = [&] {
    const EnsembleSpec spec(EnsembleKind::Kac, 10000);
    return simulate(ctx, spec, default_interval(spec), ctx.scaled(2000), 3003);
  }();
  return r;
}

Verdict c01(const Context& ctx) {
  const EnsembleSpec spec(EnsembleKind::Elliptic, 400);
  const auto r = simulate(ctx, spec, default_interval(spec), ctx.scaled(2000), 1001);
  const double z = (r.mean - 20.0) / r.std_error;
  return {std::fabs(z) <= 3.0,
          fmt("mean %.4f  SE %.4f  z %.2f  (target 20, |z| <= 3)", r.mean, r.std_error, z)};
}

Verdict c02(const Context&) {
  double worst = 0.0;
  std::string d;
  for (int n : {4, 100, 961}) {
    const double e = expected_roots(KernelId(EnsembleKind::Elliptic, n), Interval(-1e6, 1e6));
    const double rel = std::fabs(e / std::sqrt(n) - 1.0);
    worst = std::max(worst, rel);
    d += fmt("n=%d rel %.2e  ", n, rel);
  }
  return {worst <= 1e-6, d + "(|x| <= 1e6, tol 1e-6)"};
}

Verdict c03(const Context& ctx) {
  const auto& r = kac_run(ctx);
  const double ln = std::log(1e4);
  const double mean_t = 2.0 / std::numbers::pi * ln;
  const double var_t = 4.0 / std::numbers::pi * (1.0 - 2.0 / std::numbers::pi) * ln;
  const double em = r.mean / mean_t - 1.0, ev = r.variance / var_t - 1.0;
  const bool ok = std::fabs(em) <= 0.10 && std::fabs(ev) <= 0.25;
  const double exact = expected_roots_full_line(KernelId(EnsembleKind::Kac, 10000));
  return {ok, fmt("mean %.4f (%+.1f%% of %.4f, tol 10%%)  var %.4f (%+.1f%% of %.4f, tol 25%%)  "
                  "quadrature E N %.4f",
                  r.mean, 100 * em, mean_t, r.variance, 100 * ev, var_t, exact)};
}

Verdict c04(const Context& ctx) {
  const int n = 100;
  const EnsembleSpec spec(EnsembleKind::Trig, n);
  const Interval I(0.0, 2 * std::numbers::pi);
  const double target = 2.0 * std::sqrt(101.0 * 201.0 / 6.0);
  const auto r = simulate(ctx, spec, I, ctx.scaled(2000), 4004);
  const double q = expected_roots(KernelId::of(spec), I);
  const double em = r.mean / target - 1.0, eq = q / target - 1.0;
  return {std::fabs(em) <= 0.02 && std::fabs(eq) <= 1e-8,
          fmt("mean %.3f (%+.2f%%, tol 2%%)  integral %.10f (rel %.1e, tol 1e-8)  target %.6f",
              r.mean, 100 * em, q, eq, target)};
}

Verdict c05(const Context& ctx) {
  const int n = 200;
  const EnsembleSpec spec(EnsembleKind::Orthogonal, n, CoeffDist::gaussian(),
                          OrthoBasis::chebyshev_t());
  const Interval I(-0.5, 0.5);
  const double nu = EquilibriumMeasure::measure(-0.5, 0.5);
  const double target = n * nu / std::sqrt(3.0);
  const auto r = simulate(ctx, spec, I, ctx.scaled(2000), 5005);
  const double em = r.mean / target - 1.0;
  return {std::fabs(em) <= 0.05 && std::fabs(nu - 1.0 / 3.0) < 1e-15,
          fmt("mean %.3f (%+.2f%% of %.4f, tol 5%%)  arcsine mass %.15f", r.mean, 100 * em,
              target, nu)};
}

Verdict c06(const Context& ctx) {
  bool ok = true;
  std::string d;
  for (int n : {100, 400}) {
    const EnsembleSpec spec(EnsembleKind::Weyl, n);
    const Interval I = default_interval(spec);
    const double e = expected_roots(KernelId::of(spec), I);
    const auto r = simulate(ctx, spec, I, ctx.scaled(2000), 6000 + n);
    const double z = (r.mean - e) / r.std_error;
    ok &= std::fabs(z) <= 3.0;
    d += fmt("n=%d mean %.3f vs %.4f z %.2f [2/pi sqrt n %.3f, sqrt n %.1f]  ", n, r.mean, e, z,
             2.0 / std::numbers::pi * std::sqrt(n), std::sqrt(n));
  }
  return {ok, d + "(|z| <= 3)"};
}

Verdict c07(const Context& ctx) {
  int mismatches = 0, total = 0;
  const int samples = ctx.full ? 500 : 100;
  for (int n : {50, 100, 200}) {
    const EnsembleSpec spec(EnsembleKind::Kac, n, CoeffDist::rademacher());
    const Interval I = default_interval(spec);
    const ScanPlan plan(spec, I);
    std::vector<int> bad(samples, 0);
    parallel_for(samples, ctx.workers, [&](std::size_t k) {
      const auto p = make_sample(spec, derive_seed(7007 + n, k));
      const std::vector<std::int64_t> c(p.a.begin(), p.a.end());
      bad[k] = count_roots_scan(p, plan).count != count_roots_sturm(c, I).count;
    });
    mismatches += std::count(bad.begin(), bad.end(), 1);
    total += samples;
  }
  return {mismatches == 0, fmt("%d mismatches in %d samples (n = 50, 100, 200)", mismatches, total)};
}

Verdict c08(const Context&) {
  double worst = 0.0;
  for (int n : {3, 11, 51}) {
    for (int k = 0; k < 200; ++k) {
      Stream s(derive_seed(8008 + n, k));
      std::vector<double> a(n + 1);
      for (auto& v : a) v = s.normal();
      worst = std::max(worst, check_bw_norm_identity(n, a).rel_err);
    }
  }
  return {worst < 1e-8, fmt("worst relative error %.2e over 600 instances (tol 1e-8)", worst)};
}

Verdict c09(const Context&) {
  Stream s(9009);
  double worst_fd = 0.0, worst_d1 = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double x = 5.0 + 15.0 * s.uniform();
    const double L = std::cbrt(x) * (2.0 * s.uniform() - 1.0);
    const int i = static_cast<int>(std::lround(x * x + L * x));
    for (int d = 1; d <= 6; ++d) {
      const double h = weyl_term_derivative(i, x, d);
      const double fd = weyl_term_derivative_fd(i, x, d);
      worst_fd = std::max(worst_fd, std::fabs(h - fd) / std::fabs(fd));
    }
    const double g = (i - x * x) / x;
    worst_d1 = std::max(worst_d1,
                        std::fabs(weyl_derivative_ratio(i, x, 1) - g) / std::max(1.0, std::fabs(g)));
  }
  return {worst_fd < 1e-6 && worst_d1 <= 1e-12,
          fmt("Hermite vs FD worst rel %.2e (tol 1e-6)  d=1 factor worst %.2e (tol 1e-12)",
              worst_fd, worst_d1)};
}

Verdict campaign(const Context& ctx, const std::vector<std::string>& names) {
  bool ok = true;
  std::string d;
  for (const auto& name : names) {
    const auto s = run_campaign(name, 200, 10010, ctx.workers);
    ok &= s.holds == s.instances && s.worst_ratio <= 1.0;
    d += fmt("%s %d/%d holds, %d skipped, worst %.4g  ", name.c_str(), s.holds, s.instances,
             s.skipped, s.worst_ratio);
  }
  return {ok, d};
}

Verdict c10(const Context& ctx) { return campaign(ctx, {"largesieve", "interp"}); }

Verdict c11(const Context& ctx) {
  const auto s = run_campaign("stability", 200, 11011, ctx.workers);
  int qualifying = 0, matched = 0;
  for (const auto& r : s.detail["instances"]) {
    qualifying += r.value("qualifying", 0);
    matched += r.value("matched", 0);
  }
  return {s.holds == s.instances && s.fails == 0 && matched == qualifying,
          fmt("%d/%d instances hold, %d skipped, qualifying roots %d, matched %d", s.holds,
              s.instances, s.skipped, qualifying, matched)};
}

Verdict c12(const Context& ctx) {
  const EnsembleSpec spec(EnsembleKind::Elliptic, 100);
  const std::vector<double> g = {0.05, 0.1, 0.2};
  const auto t = repulsion_probe(spec, std::numbers::pi / 2, g, g,
                                 ctx.full ? 100000 : 10000, 12012, ctx.workers);
  double lo = INFINITY, hi = 0.0;
  for (const auto& c : t.cells) {
    lo = std::min(lo, c.ratio);
    hi = std::max(hi, c.ratio);
  }
  const bool all_hit = std::all_of(t.cells.begin(), t.cells.end(), [](auto& c) { return c.hits > 0; });
  return {all_hit && hi / lo < 4.0,
          fmt("ratio p/(alpha beta) in [%.3f, %.3f], spread x%.3f (tol x4)", lo, hi, hi / lo)};
}

Verdict c13(const Context& ctx) {
  const auto ks = clt_diagnostic(kac_run(ctx));
  return {ks.statistic < 0.08,
          fmt("KS %.4f (lattice corrected, tol 0.08)  raw step KS %.4f", ks.statistic,
              ks.raw_statistic)};
}

Verdict c14(const Context& ctx) {
  std::vector<double> tail;
  std::string d = "tail(eps=0.5):";
  for (int n : {100, 400, 900}) {
    const EnsembleSpec spec(EnsembleKind::Elliptic, n);
    const auto r = simulate(ctx, spec, default_interval(spec), ctx.scaled(2000), 14000 + n);
    const auto t = tail_curve(r, {0.5}, std::sqrt(n));
    tail.push_back(t.points[0].p_hat);
    d += fmt(" n=%d %.4f", n, tail.back());
  }
  const bool a = tail[0] >= tail[1] && tail[1] >= tail[2];

  std::vector<double> nlp;
  bool enough = true;
  d += "  persistence -log p:";
  for (int n : {16, 36, 64}) {
    const EnsembleSpec spec(EnsembleKind::Weyl, n);
    const int trials = ctx.full ? 40000 : 8000;
    const auto r = simulate(ctx, spec, default_interval(spec), trials, 14100 + n);
    const auto p = persistence_from_counts(r.counts);
    enough &= p.zero_trials >= 3;
    nlp.push_back(-std::log(p.p_hat));
    d += fmt(" n=%d %.3f (%zu/%d)", n, nlp.back(), p.zero_trials, trials);
  }
  const bool b = enough && nlp[0] < nlp[1] && nlp[1] < nlp[2];
  return {a && b, d};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict c15(const Context&) {
  const fs::path root = fs::temp_directory_path() /
                        ("randroots_acceptance_" + std::to_string(std::chrono::steady_clock::now()
                                                                      .time_since_epoch()
                                                                      .count()));
  fs::create_directories(root);
  const std::vector<std::string> cases = {
      "simulate --ensemble elliptic --n 100 --trials 300 --seed 7",
      "simulate --ensemble kac --n 60 --dist rademacher --trials 300 --seed 8",
      "persistence --ensemble weyl --n 16 --trials 500 --seed 9",
  };
  bool ok = true;
  std::string d;
#ifdef RANDROOTS_CLI
  for (std::size_t c = 0; c < cases.size(); ++c) {
    std::vector<std::string> files;
    for (const char* tag : {"w1", "w4", "w1b"}) {
      const fs::path out = root / (std::to_string(c) + tag);
      const std::string workers = tag[1] == '4' ? "4" : "1";
      const std::string cmd = std::string("\"") + RANDROOTS_CLI + "\" " + cases[c] +
                              " --workers " + workers + " --out \"" + out.string() +
                              "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        d += "command failed: " + cases[c] + "  ";
        continue;
      }
      files.push_back(slurp(out / "counts.csv"));
    }
    const bool same = files.size() == 3 && !files[0].empty() && files[0] == files[1] &&
                      files[0] == files[2];
    ok &= same;
    d += fmt("%s: %s  ", cases[c].substr(0, cases[c].find(' ')).c_str(),
             same ? "identical" : "DIFFERENT");
  }
#else
  ok = false;
  d = "command-line tool not built";
#endif
  fs::remove_all(root);
  return {ok, d + "(counts.csv, workers 1/4/1)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string profile = "full";
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int only = 0;
  app.add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--workers", workers)->check(CLI::PositiveNumber);
  app.add_option("--only", only, "run one criterion")->check(CLI::Range(1, 15));
  CLI11_PARSE(app, argc, argv);

  const Context ctx{profile == "full", workers};
  const std::vector<std::pair<std::string, std::function<Verdict(const Context&)>>> criteria = {
      {"elliptic exact mean, n=400", c01},
      {"elliptic intensity total mass", c02},
      {"Kac mean and variance, n=1e4", c03},
      {"trig mean, n=100", c04},
      {"Chebyshev equilibrium-measure mean, n=200", c05},
      {"Weyl Monte Carlo vs Kac-Rice", c06},
      {"scan/Sturm equivalence", c07},
      {"Bombieri-Weyl norm identity", c08},
      {"Weyl derivative identity", c09},
      {"large sieve and interpolation campaigns", c10},
      {"stability campaign", c11},
      {"repulsion scaling", c12},
      {"CLT diagnostic, Kac n=1e4", c13},
      {"concentration and persistence trends", c14},
      {"determinism across workers", c15},
  };

  std::printf("profile %s, %d worker(s)\n", profile.c_str(), workers);
  int unexpected = 0, failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (only && id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second(ctx);
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto gap = kKnownGaps.find(id);
    std::printf("%s %2d  %-44s %s  [%.1fs]\n", v.pass ? "PASS" : "FAIL", id,
                criteria[k].first.c_str(), v.detail.c_str(), secs);
    if (!v.pass) {
      ++failed;
      if (gap != kKnownGaps.end())
        std::printf("          known gap: %s\n", gap->second.c_str());
      else
        ++unexpected;
    }
    std::fflush(stdout);
  }
  std::printf("%d failed, %d unexpected\n", failed, unexpected);
  return unexpected == 0 ? 0 : 1;
}
