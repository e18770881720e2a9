#include "randroots/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace randroots {

using nlohmann::json;

std::string ensemble_name(const EnsembleSpec& spec) { return spec.name(); }

json to_json(const EnsembleSpec& spec) {
  json j{{"ensemble", spec.name()}, {"n", spec.degree}, {"dist", spec.dist.name()}};
  if (spec.dist.kind() == DistKind::Custom) j["quantiles"] = spec.dist.quantiles();
  if (spec.kind == EnsembleKind::Orthogonal && spec.basis.family == OrthoFamily::Jacobi) {
    j["jacobi_alpha"] = spec.basis.alpha;
    j["jacobi_beta"] = spec.basis.beta;
  }
  return j;
}

EnsembleSpec spec_from_json(const json& j) {
  const std::string dname = j.at("dist").get<std::string>();
  const CoeffDist d = j.contains("quantiles")
                          ? CoeffDist::from_quantiles(j.at("quantiles").get<std::vector<double>>())
                          : CoeffDist::parse(dname);
  return EnsembleSpec::parse(j.at("ensemble").get<std::string>(), j.at("n").get<int>(), d,
                             j.value("jacobi_alpha", 0.0), j.value("jacobi_beta", 0.0));
}

json to_json(const ExperimentConfig& cfg) {
  return json{{"spec", to_json(cfg.spec)},
              {"interval", {cfg.interval.lo, cfg.interval.hi}},
              {"trials", cfg.trials},
              {"base_seed", cfg.base_seed},
              {"density", cfg.density},
              {"tol", cfg.tol},
              {"workers", cfg.workers}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.spec = spec_from_json(j.at("spec"));
  const auto iv = j.at("interval").get<std::vector<double>>();
  if (iv.size() != 2) throw std::invalid_argument("interval must have two endpoints");
  cfg.interval = Interval(iv[0], iv[1]);
  cfg.trials = j.at("trials").get<int>();
  cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
  cfg.density = j.value("density", 16.0);
  cfg.tol = j.value("tol", 0.0);
  cfg.workers = j.value("workers", 1);
  cfg.validate();
  return cfg;
}

json to_json(const ExperimentReport& r) {
  return json{{"schema_version", kSchemaVersion},
              {"config", to_json(r.config)},
              {"counts", r.counts},
              {"mean", r.mean},
              {"variance", r.variance},
              {"std_error", r.std_error},
              {"flagged_trials", r.flagged_trials},
              {"wall_seconds", r.wall_seconds}};
}

ExperimentReport report_from_json(const json& j) {
  if (j.value("schema_version", 0) != kSchemaVersion)
    throw std::invalid_argument("unsupported report schema version");
  ExperimentReport r;
  r.config = config_from_json(j.at("config"));
  r.counts = j.at("counts").get<std::vector<int>>();
  if (static_cast<int>(r.counts.size()) != r.config.trials)
    throw std::invalid_argument("report counts do not match its trial count");
  r.flagged_trials = j.value("flagged_trials", std::size_t{0});
  r.wall_seconds = j.value("wall_seconds", 0.0);
  summarize(r);
  return r;
}

json to_json(const TailEstimate& t) {
  json pts = json::array();
  for (const auto& p : t.points)
    pts.push_back({{"epsilon", p.epsilon}, {"hits", p.hits}, {"p_hat", p.p_hat},
                   {"ci", {p.ci.lo, p.ci.hi}}});
  return json{{"scale", t.scale}, {"center", t.center}, {"trials", t.trials}, {"points", pts}};
}

json to_json(const RepulsionTable& t) {
  json cells = json::array();
  for (const auto& c : t.cells)
    cells.push_back({{"alpha", c.alpha}, {"beta", c.beta}, {"hits", c.hits},
                     {"p_hat", c.p_hat}, {"ratio", c.ratio}, {"ci", {c.ci.lo, c.ci.hi}},
                     {"below_floor", c.below_floor}});
  return json{{"x0", t.x0}, {"normalizer", t.normalizer}, {"trials", t.trials},
              {"ratio_spread", t.ratio_spread()}, {"cells", cells}};
}

json to_json(const PersistenceEstimate& p) {
  return json{{"trials", p.trials}, {"zero_trials", p.zero_trials}, {"p_hat", p.p_hat},
              {"ci", {p.ci.lo, p.ci.hi}}, {"one_sided", p.one_sided}};
}

std::string manifest_hash(const json& reproducible_config) {
  const std::string s = reproducible_config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const json& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "# " << header.dump() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_counts_csv(const std::filesystem::path& path, const ExperimentReport& r,
                      const std::string& hash) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(r.counts.size());
  for (std::size_t k = 0; k < r.counts.size(); ++k)
    rows.push_back({std::to_string(k), std::to_string(r.counts[k])});
  write_csv(path, {{"manifest", hash}, {"schema_version", kSchemaVersion}}, {"trial", "count"}, rows);
}

void write_intensity_csv(const std::filesystem::path& path, const IntensityCurve& c,
                         const std::string& hash) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < c.x.size(); ++k) rows.push_back({format_real(c.x[k]), format_real(c.rho[k])});
  write_csv(path,
            {{"manifest", hash}, {"schema_version", kSchemaVersion},
             {"quadrature_total", c.quadrature_total}},
            {"x", "rho1"}, rows);
}

void write_tails_csv(const std::filesystem::path& path, const TailEstimate& t,
                     const std::string& hash) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : t.points)
    rows.push_back({format_real(p.epsilon), format_real(p.p_hat), format_real(p.ci.lo),
                    format_real(p.ci.hi)});
  write_csv(path, {{"manifest", hash}, {"schema_version", kSchemaVersion}, {"scale", t.scale}},
            {"epsilon", "p_hat", "ci_lo", "ci_hi"}, rows);
}

void write_repulsion_csv(const std::filesystem::path& path, const RepulsionTable& t,
                         const std::string& hash) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : t.cells)
    rows.push_back({format_real(c.alpha), format_real(c.beta), format_real(c.p_hat),
                    format_real(c.ratio)});
  write_csv(path, {{"manifest", hash}, {"schema_version", kSchemaVersion}, {"x0", t.x0}},
            {"alpha", "beta", "p_hat", "ratio"}, rows);
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

}  // namespace randroots
