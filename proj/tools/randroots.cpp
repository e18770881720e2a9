// randroots command-line tool.
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "randroots/analysis.hpp"
#include "randroots/campaigns.hpp"
#include "randroots/io.hpp"
#include "randroots/kernels.hpp"
#include "randroots/rootcount.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace randroots;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Files written so far; removed if the command fails.
struct Outputs {
  std::vector<fs::path> written;
  fs::path dir = ".";

  fs::path add(const std::string& name) {
    fs::create_directories(dir);
    written.push_back(dir / name);
    return written.back();
  }
  void discard() {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
  }
};

struct SpecFlags {
  std::string ensemble;
  int n = 0;
  std::string dist = "gauss";
  std::string quantile_file;
  double jacobi_alpha = 0.0;
  double jacobi_beta = 0.0;

  void attach(CLI::App* app, bool required) {
    auto* e = app->add_option("--ensemble", ensemble,
                              "kac|trig|elliptic|weyl|legendre|cheb1|cheb2|jacobi");
    auto* nn = app->add_option("--n", n, "degree");
    if (required) {
      e->required();
      nn->required();
    }
    app->add_option("--dist", dist, "gauss|rademacher|uniform");
    app->add_option("--quantile-file", quantile_file,
                    "1024 quantiles at (k+1/2)/1024 for a custom coefficient law");
    app->add_option("--jacobi-alpha", jacobi_alpha);
    app->add_option("--jacobi-beta", jacobi_beta);
  }

  EnsembleSpec build() const {
    try {
      CoeffDist d = CoeffDist::gaussian();
      if (!quantile_file.empty()) {
        std::ifstream in(quantile_file);
        if (!in) throw std::invalid_argument("cannot read " + quantile_file);
        std::vector<double> q;
        std::string tok;
        while (in >> tok) {
          std::stringstream ss(tok);
          std::string part;
          while (std::getline(ss, part, ','))
            if (!part.empty()) q.push_back(std::stod(part));
        }
        d = CoeffDist::from_quantiles(std::move(q));
      } else {
        d = CoeffDist::parse(dist);
      }
      return EnsembleSpec::parse(ensemble, n, d, jacobi_alpha, jacobi_beta);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
};

struct RunFlags {
  SpecFlags spec;
  std::string interval = "auto";
  std::optional<int> trials;  // unset: profile default
  std::uint64_t seed = 0;
  int workers = 1;
  double density = 16.0;
  double tol = 0.0;
  std::string report;

  void attach(CLI::App* app, bool allow_report) {
    spec.attach(app, !allow_report);
    app->add_option("--interval", interval, "LO:HI or auto");
    app->add_option("--trials", trials);
    app->add_option("--seed", seed);
    app->add_option("--workers", workers);
    app->add_option("--density", density, "scan nodes per expected root");
    app->add_option("--tol", tol, "root tolerance, 0 for the default");
    if (allow_report) app->add_option("--report", report, "report.json from a prior simulate");
  }

  ExperimentConfig config(const std::string& profile) const {
    ExperimentConfig cfg;
    cfg.spec = spec.build();
    try {
      cfg.interval = interval == "auto" ? default_interval(cfg.spec) : Interval::parse(interval);
      cfg.trials = trials.value_or(profile == "full" ? 2000 : 200);
      cfg.base_seed = seed;
      cfg.workers = workers;
      cfg.density = density;
      cfg.tol = tol;
      cfg.validate();
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

json manifest(const std::string& command, const json& config) {
  return json{{"tool", "randroots"},
              {"version", RANDROOTS_VERSION},
              {"schema_version", kSchemaVersion},
              {"command", command},
              {"config", config}};
}

json reproducible(const ExperimentConfig& cfg) {
  json j = to_json(cfg);
  j.erase("workers");
  return j;
}

void print_summary(const ExperimentReport& r) {
  std::printf("%s n=%d trials=%d: mean = %.6g +/- %.3g (SE), variance = %.6g\n",
              r.config.spec.name().c_str(), r.config.spec.degree, r.config.trials, r.mean,
              r.std_error, r.variance);
  if (r.flagged_trials)
    std::printf("warning: %zu trials hit the subdivision budget\n", r.flagged_trials);
}

// report.json and counts.csv, as written by simulate.
void write_simulation(Outputs& files, const ExperimentReport& r) {
  const json m = manifest("simulate", reproducible(r.config));
  const std::string hash = manifest_hash(m);
  json doc = to_json(r);
  doc["manifest"] = m;
  doc["manifest_hash"] = hash;
  write_json(files.add("report.json"), doc);
  write_counts_csv(files.add("counts.csv"), r, hash);
}

// A prior report from --report, or an inline run with the simulate flags.
// Inline runs also leave the simulate outputs behind.
ExperimentReport obtain_report(const RunFlags& f, const std::string& profile, json& source,
                               Outputs& files) {
  if (!f.report.empty()) {
    if (!fs::exists(f.report)) throw UsageError("report not found: " + f.report);
    try {
      ExperimentReport r = report_from_json(read_json(f.report));
      source = json{{"report", manifest_hash(manifest("simulate", reproducible(r.config)))}};
      return r;
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(std::string("unreadable report: ") + e.what());
    }
  }
  if (f.spec.ensemble.empty() || f.spec.n == 0)
    throw UsageError("give --report or --ensemble and --n");
  const ExperimentConfig cfg = f.config(profile);
  source = reproducible(cfg);
  ExperimentReport r = run_experiment(cfg);
  write_simulation(files, r);
  return r;
}

double resolve_scale(const std::string& s, const ExperimentReport& r) {
  if (s == "sqrt-n") return std::sqrt(static_cast<double>(r.config.spec.degree));
  if (s == "n") return r.config.spec.degree;
  if (s == "mean") return r.mean;
  try {
    return parse_real(s);
  } catch (const std::exception&) {
    throw UsageError("--scale must be sqrt-n, n, mean or a number");
  }
}

std::vector<double> parse_grid(const std::vector<std::string>& items) {
  std::vector<double> v;
  try {
    for (const auto& s : items) v.push_back(parse_real(s));
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real roots of random polynomials: simulation, intensities and lemma checks"};
  app.set_version_flag("--version", std::string(RANDROOTS_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  std::string profile = "quick";
  std::string out = ".";
  app.add_option("--profile", profile, "quick|full: default trial counts")
      ->check(CLI::IsMember({"quick", "full"}));
  app.add_option("--out", out, "output directory");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo root counts");
  RunFlags simf;
  simf.attach(sim, false);

  auto* inten = app.add_subcommand("intensity", "first intensity on a grid");
  SpecFlags intf;
  intf.attach(inten, true);
  int grid = 201;
  std::string range = "auto";
  inten->add_option("--grid", grid);
  inten->add_option("--range", range, "LO:HI or auto");

  auto* tails = app.add_subcommand("tails", "concentration tail probabilities");
  RunFlags tailf;
  tailf.attach(tails, true);
  std::vector<double> epsilons{0.1, 0.2, 0.5};
  std::string scale = "sqrt-n";
  tails->add_option("--epsilons", epsilons)->delimiter(',');
  tails->add_option("--scale", scale, "sqrt-n|n|mean|number");

  auto* clt = app.add_subcommand("clt", "Kolmogorov-Smirnov distance to the normal law");
  RunFlags cltf;
  cltf.attach(clt, true);

  auto* pers = app.add_subcommand("persistence", "probability of no root");
  RunFlags persf;
  persf.attach(pers, true);

  auto* rep = app.add_subcommand("repulsion", "joint small-ball frequencies of F and F'");
  SpecFlags repf;
  repf.attach(rep, true);
  std::string x0 = "0";
  std::vector<std::string> alphas{"0.05", "0.1", "0.2"}, betas{"0.05", "0.1", "0.2"};
  std::optional<int> rep_trials;
  std::uint64_t rep_seed = 0;
  int rep_workers = 1;
  rep->add_option("--x0", x0, "point (angle for elliptic)");
  rep->add_option("--alpha-grid", alphas)->delimiter(',');
  rep->add_option("--beta-grid", betas)->delimiter(',');
  rep->add_option("--trials", rep_trials);
  rep->add_option("--seed", rep_seed);
  rep->add_option("--workers", rep_workers);

  auto* ver = app.add_subcommand("verify", "lemma oracle campaigns");
  std::string lemma = "all";
  std::optional<int> instances;
  std::uint64_t ver_seed = 0;
  int ver_workers = 1;
  ver->add_option("--lemma", lemma)->required();
  ver->add_option("--instances", instances);
  ver->add_option("--seed", ver_seed);
  ver->add_option("--workers", ver_workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Outputs files;
  files.dir = out;
  try {
    if (*sim) {
      const ExperimentReport r = run_experiment(simf.config(profile));
      write_simulation(files, r);
      print_summary(r);
      return 0;
    }
    if (*inten) {
      const EnsembleSpec spec = intf.build();
      if (grid < 1) throw UsageError("--grid must be at least 1");
      const KernelId id = KernelId::of(spec);
      Interval I;
      try {
        I = range == "auto" ? default_interval(spec) : Interval::parse(range);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      IntensityCurve c = intensity_curve(id, I, grid);
      std::string total_over = "range";
      if (range == "auto" && spec.kind != EnsembleKind::Trig &&
          spec.kind != EnsembleKind::Orthogonal) {
        c.quadrature_total = expected_roots_full_line(id);
        total_over = "real line";
      }
      const json m = manifest("intensity", json{{"spec", to_json(spec)},
                                                {"range", {I.lo, I.hi}},
                                                {"grid", grid},
                                                {"total_over", total_over}});
      const std::string hash = manifest_hash(m);
      write_intensity_csv(files.add("intensity.csv"), c, hash);
      write_json(files.add("intensity.json"),
                 json{{"manifest", m}, {"manifest_hash", hash},
                      {"quadrature_total", c.quadrature_total}, {"total_over", total_over}});
      std::printf("expected roots over the %s: %.9f\n", total_over.c_str(), c.quadrature_total);
      return 0;
    }
    if (*tails) {
      json src;
      const ExperimentReport r = obtain_report(tailf, profile, src, files);
      const double s = resolve_scale(scale, r);
      TailEstimate t;
      try {
        t = tail_curve(r, epsilons, s);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const json m = manifest("tails", json{{"source", src}, {"epsilons", epsilons}, {"scale", scale}});
      const std::string hash = manifest_hash(m);
      write_tails_csv(files.add("tails.csv"), t, hash);
      json doc = to_json(t);
      doc["manifest"] = m;
      doc["manifest_hash"] = hash;
      write_json(files.add("tails.json"), doc);
      for (const auto& p : t.points)
        std::printf("eps=%g  p=%.6g  [%.6g, %.6g]\n", p.epsilon, p.p_hat, p.ci.lo, p.ci.hi);
      return 0;
    }
    if (*clt) {
      json src;
      const ExperimentReport r = obtain_report(cltf, profile, src, files);
      const KsResult ks = clt_diagnostic(r);
      const json m = manifest("clt", json{{"source", src}});
      write_json(files.add("clt.json"),
                 json{{"manifest", m}, {"manifest_hash", manifest_hash(m)},
                      {"ks", ks.statistic}, {"ks_raw", ks.raw_statistic},
                      {"lattice_span", ks.lattice_span}, {"trials", r.counts.size()},
                      {"mean", r.mean}, {"variance", r.variance}});
      std::printf("KS distance = %.6f (uncorrected %.6f, lattice span %d)\n", ks.statistic,
                  ks.raw_statistic, ks.lattice_span);
      return 0;
    }
    if (*pers) {
      json src;
      const ExperimentReport r = obtain_report(persf, profile, src, files);
      const PersistenceEstimate p = persistence_from_counts(r.counts);
      const json m = manifest("persistence", json{{"source", src}});
      json doc = to_json(p);
      doc["manifest"] = m;
      doc["manifest_hash"] = manifest_hash(m);
      write_json(files.add("persistence.json"), doc);
      std::printf("P(no root) = %.6g  [%.6g, %.6g]  (%zu of %zu trials)%s\n", p.p_hat, p.ci.lo,
                  p.ci.hi, p.zero_trials, p.trials, p.one_sided ? ", upper bound only" : "");
      return 0;
    }
    if (*rep) {
      const EnsembleSpec spec = repf.build();
      double x = 0.0;
      try {
        x = parse_real(x0);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      const auto a = parse_grid(alphas), b = parse_grid(betas);
      const int trials = rep_trials.value_or(profile == "full" ? 100000 : 10000);
      if (trials < 1) throw UsageError("--trials must be positive");
      if (rep_workers < 1) throw UsageError("--workers must be positive");
      const RepulsionTable t = repulsion_probe(spec, x, a, b, trials, rep_seed, rep_workers);
      const json m = manifest("repulsion", json{{"spec", to_json(spec)}, {"x0", x}, {"alphas", a},
                                                {"betas", b}, {"trials", trials}, {"seed", rep_seed}});
      const std::string hash = manifest_hash(m);
      write_repulsion_csv(files.add("repulsion.csv"), t, hash);
      json doc = to_json(t);
      doc["manifest"] = m;
      doc["manifest_hash"] = hash;
      write_json(files.add("repulsion.json"), doc);
      for (const auto& c : t.cells)
        std::printf("alpha=%g beta=%g  p=%.6g  ratio=%.4g%s\n", c.alpha, c.beta, c.p_hat, c.ratio,
                    c.below_floor ? "  (below n^-1/2)" : "");
      std::printf("ratio spread = %.4g\n", t.ratio_spread());
      return 0;
    }
    if (*ver) {
      std::vector<std::string> names;
      if (lemma == "all") {
        names = campaign_names();
      } else {
        const auto& known = campaign_names();
        if (std::find(known.begin(), known.end(), lemma) == known.end())
          throw UsageError("unknown lemma: " + lemma);
        names = {lemma};
      }
      const int count = instances.value_or(profile == "full" ? 200 : 50);
      if (count < 1) throw UsageError("--instances must be positive");
      if (ver_workers < 1) throw UsageError("--workers must be positive");
      json summary = json::array();
      bool failed = false;
      for (const auto& name : names) {
        const CampaignSummary s = run_campaign(name, count, ver_seed, ver_workers);
        summary.push_back(to_json(s));
        if (s.exact && s.fails > 0) failed = true;
        std::printf("%-10s %4d holds  %4d fails  %4d skipped  worst ratio %.4g%s\n",
                    name.c_str(), s.holds, s.fails, s.skipped, s.worst_ratio,
                    s.exact ? "" : "  (fitted constants)");
      }
      const json m = manifest("verify", json{{"lemmas", names}, {"instances", count}, {"seed", ver_seed}});
      write_json(files.add("verify.json"),
                 json{{"manifest", m}, {"manifest_hash", manifest_hash(m)}, {"campaigns", summary}});
      return failed ? 1 : 0;
    }
  } catch (const UsageError& e) {
    files.discard();
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    files.discard();
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
