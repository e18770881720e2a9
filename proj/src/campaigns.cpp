#include "randroots/campaigns.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "randroots/analysis.hpp"
#include "randroots/evaluation.hpp"
#include "randroots/oracles.hpp"
#include "randroots/rng.hpp"

namespace randroots {

using nlohmann::json;

namespace {

constexpr double kSlack = 1.0 + 1e-9;

struct Tally {
  Outcome outcome = Outcome::Skipped;
  double ratio = 0.0;
  json record;
};

CampaignSummary collect(const std::string& lemma, const std::vector<Tally>& t, bool exact) {
  CampaignSummary s;
  s.lemma = lemma;
  s.exact = exact;
  s.instances = static_cast<int>(t.size());
  s.detail["instances"] = json::array();
  for (const auto& x : t) {
    switch (x.outcome) {
      case Outcome::Holds: ++s.holds; break;
      case Outcome::Fails: ++s.fails; break;
      case Outcome::Skipped: ++s.skipped; break;
    }
    if (x.outcome != Outcome::Skipped) s.worst_ratio = std::max(s.worst_ratio, x.ratio);
    s.detail["instances"].push_back(x.record);
  }
  return s;
}

std::vector<double> random_points(Stream& st, int M) {
  // redraw until the points keep their minimum gap from both ends of T
  for (;;) {
    std::vector<double> p;
    for (int j = 0; j < M; ++j) p.push_back(0.02 + 0.96 * st.uniform());
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (static_cast<int>(p.size()) < M) continue;
    double delta = M == 1 ? std::min(p[0], 1.0 - p[0]) : 1.0;
    for (int j = 1; j < M; ++j) delta = std::min(delta, p[j] - p[j - 1]);
    if (p.front() >= delta && p.back() <= 1.0 - delta) return p;
  }
}

Tally sieve_instance(std::uint64_t seed) {
  Stream st(seed);
  const int kind = static_cast<int>(st.next_u64() % 4);
  SieveCheckInput in;
  int n = 0;
  switch (kind) {
    case 0:
      n = 5 + static_cast<int>(st.next_u64() % 56);
      in.sample = make_sample(EnsembleSpec(EnsembleKind::Trig, n), st.next_u64());
      in.domain = {0.0, 2.0 * std::numbers::pi};
      break;
    case 1:
      n = 5 + static_cast<int>(st.next_u64() % 46);
      in.sample = make_sample(EnsembleSpec(EnsembleKind::Orthogonal, n, CoeffDist::gaussian(),
                                           OrthoBasis::legendre()),
                              st.next_u64());
      in.domain = {-1.0, 1.0};
      break;
    case 2:
      n = 5 + static_cast<int>(st.next_u64() % 36);
      in.sample = make_sample(EnsembleSpec(EnsembleKind::Kac, n, CoeffDist::rademacher()),
                              st.next_u64());
      in.domain = {-1.0, 1.0};
      break;
    default:
      n = 5 + static_cast<int>(st.next_u64() % 96);
      in.sample = make_sample(EnsembleSpec(EnsembleKind::Elliptic, n), st.next_u64());
      in.domain = {-2.0, 2.0};
      break;
  }
  in.d = kind == 3 ? 1 : 1 + static_cast<int>(st.next_u64() % 2);
  in.N = n * in.domain.length();
  in.c_star = 0.5 + 1.5 * st.uniform();
  if (st.uniform() < 0.15) {
    // one point at the largest grid value of |f^(d-1)|
    const Evaluator ev(in.sample.spec);
    double best = -1.0, at = 0.5;
    for (int j = 1; j < 512; ++j) {
      const double u = j / 512.0;
      const double v = std::fabs(ev.derivatives(in.sample, in.domain.lo + u * in.domain.length(),
                                                in.d - 1)[in.d - 1]);
      if (v > best) {
        best = v;
        at = u;
      }
    }
    in.points = {at};
  } else {
    in.points = random_points(st, 1 + static_cast<int>(st.next_u64() % 50));
  }
  const CheckResult r = check_large_sieve(in);
  return {r.outcome, r.ratio(),
          json{{"ensemble", in.sample.spec.name()}, {"n", n}, {"d", in.d},
               {"points", in.points.size()}, {"lhs", r.lhs}, {"rhs", r.rhs},
               {"outcome", outcome_name(r.outcome)}, {"note", r.note}}};
}

Tally interp_instance(std::uint64_t seed) {
  Stream st(seed);
  InterpolationInput in;
  const int m = 1 + static_cast<int>(st.next_u64() % 20);
  const double r = 0.05 * std::pow(40.0, st.uniform());
  const double lo = -1.0 + 2.0 * st.uniform();
  in.I = {lo, lo + r};
  const int layout = static_cast<int>(st.next_u64() % 3);
  for (int j = 0; j < m; ++j) {
    double u = st.uniform();
    if (layout == 1) u = 0.05 * u * u;           // cluster at the left end
    if (layout == 2) u = 1.0 - 0.05 * u;         // cluster at the right end
    in.roots.push_back(lo + r * u);
  }
  if (st.uniform() < 0.5) {
    in.h = {1.0};
  } else {
    const int deg = static_cast<int>(st.next_u64() % 4);
    for (int j = 0; j <= deg; ++j) in.h.push_back(st.normal());
  }
  const CheckResult c = check_interpolation_bound(in);
  return {c.outcome, c.ratio(),
          json{{"m", m}, {"r", r}, {"layout", layout}, {"h_degree", in.h.size() - 1},
               {"lhs", c.lhs}, {"rhs", c.rhs}, {"outcome", outcome_name(c.outcome)}}};
}

PolySample scaled(const PolySample& p, double s) {
  std::vector<double> a = p.a, b = p.b;
  for (auto& v : a) v *= s;
  for (auto& v : b) v *= s;
  return make_sample_from(p.spec, std::move(a), std::move(b));
}

Tally stability_attempt(std::uint64_t seed) {
  Stream st(seed);
  StabilityCheckInput in;
  EnsembleSpec spec;
  if (st.uniform() < 0.5) {
    spec = EnsembleSpec(EnsembleKind::Trig, 5 + static_cast<int>(st.next_u64() % 26));
    in.I = {0.3, 2.0 * std::numbers::pi - 0.3};
  } else {
    spec = EnsembleSpec(EnsembleKind::Orthogonal, 5 + static_cast<int>(st.next_u64() % 26),
                        CoeffDist::gaussian(), OrthoBasis::legendre());
    in.I = {-0.9, 0.9};
  }
  in.f = make_sample(spec, st.next_u64());
  const Evaluator ev(spec);
  const int G = in.grid;
  std::vector<double> fv(G), dv(G);
  double fmax = 0.0;
  for (int j = 0; j < G; ++j) {
    const ValueSlope v = ev.value_slope(in.f, in.I.lo + in.I.length() * j / (G - 1));
    fv[j] = std::fabs(v.f);
    dv[j] = std::fabs(v.df);
    fmax = std::max(fmax, fv[j]);
  }
  in.mu = fmax * (0.01 + 0.04 * st.uniform());
  double dmin = INFINITY;
  for (int j = 0; j < G; ++j)
    if (fv[j] <= 2.0 * in.mu) dmin = std::min(dmin, dv[j]);
  in.nu = std::isfinite(dmin) ? 0.5 * dmin : 1.0;
  const PolySample g0 = make_sample(spec, st.next_u64());
  const double gmax = sup_norm([&](double x) { return ev.value(g0, x); }, in.I.lo, in.I.hi);
  in.g = scaled(g0, (0.2 + 0.7 * st.uniform()) * in.mu / gmax);
  const StabilityResult r = check_stability(in);
  const double miss =
      r.qualifying_roots ? static_cast<double>(r.qualifying_roots - r.matched_roots) : 0.0;
  return {r.outcome, miss,
          json{{"ensemble", spec.name()}, {"n", spec.degree}, {"mu", in.mu}, {"nu", in.nu},
               {"qualifying", r.qualifying_roots}, {"matched", r.matched_roots},
               {"outcome", outcome_name(r.outcome)}, {"note", r.note}}};
}

Tally stability_instance(std::uint64_t seed) {
  Tally t;
  for (std::uint64_t attempt = 0; attempt < 20; ++attempt) {
    t = stability_attempt(derive_seed(seed, attempt));
    if (t.outcome != Outcome::Skipped && t.record["qualifying"].get<int>() > 0) return t;
  }
  return t;
}

Tally bw_instance(std::uint64_t seed) {
  Stream st(seed);
  static constexpr int sizes[] = {3, 11, 51};
  const int n = sizes[seed % 3];
  std::vector<double> a(n + 1);
  for (auto& v : a) v = st.normal();
  const BwNormResult r = check_bw_norm_identity(n, a);
  const bool ok = r.rel_err < 1e-8 && r.coeff_norm_err < 1e-8;
  return {ok ? Outcome::Holds : Outcome::Fails, r.rel_err / 1e-8,
          json{{"n", n}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_err", r.rel_err},
               {"coeff_norm_err", r.coeff_norm_err}}};
}

Tally weylderiv_instance(std::uint64_t seed) {
  Stream st(seed);
  const double x = 5.0 + 15.0 * st.uniform();
  const double L = (2.0 * st.uniform() - 1.0) * std::cbrt(x);
  const int i = std::max(6, static_cast<int>(std::lround(x * x + L * x)));
  const int d = 1 + static_cast<int>(st.next_u64() % 6);
  const double exact = weyl_term_derivative(i, x, d);
  const double fd = weyl_term_derivative_fd(i, x, d);
  const double rel = std::fabs(exact - fd) / std::fabs(fd);
  double closed_rel = 0.0;
  if (d == 1) {
    const double closed = std::fma(-x, x, static_cast<double>(i)) / x;
    const double ratio = weyl_derivative_ratio(i, x, 1);
    closed_rel = std::fabs(ratio - closed) / std::fabs(closed);
  }
  const double worst = std::max(rel / 1e-6, closed_rel / 1e-12);
  return {worst <= 1.0 ? Outcome::Holds : Outcome::Fails, worst,
          json{{"i", i}, {"x", x}, {"d", d}, {"hermite", exact}, {"fd", fd}, {"rel_err", rel},
               {"closed_form_rel_err", closed_rel}}};
}

Tally bernstein_instance(std::uint64_t seed) {
  Stream st(seed);
  const int n = (seed % 2 == 0) ? 50 : 200;
  const PolySample p = make_sample(
      EnsembleSpec(EnsembleKind::Orthogonal, n, CoeffDist::gaussian(), OrthoBasis::legendre()),
      st.next_u64());
  const BernsteinResult r = check_bernstein(p, {-0.5, 0.5}, {-0.75, 0.75}, 1);
  return {Outcome::Holds, r.fitted_c,
          json{{"n", n}, {"lhs", r.lhs}, {"base", r.base}, {"fitted_c", r.fitted_c}}};
}

Tally overcrowd_instance(std::uint64_t seed) {
  Stream st(seed);
  const int n = 100;
  const PolySample p = make_sample(EnsembleSpec(EnsembleKind::Weyl, n), st.next_u64());
  const double half = 0.5 * std::sqrt(static_cast<double>(n));
  const Interval T{-half, half};
  const OvercrowdingResult r = check_overcrowding_contrapositive(p, T, 32.0, 2.0, T.length());
  return {r.outcome, r.roots / r.root_limit,
          json{{"max_abs", r.max_abs}, {"bound", r.bound}, {"roots", r.roots},
               {"root_limit", r.root_limit}, {"outcome", outcome_name(r.outcome)},
               {"note", r.note}}};
}

template <class F>
std::vector<Tally> run_instances(int instances, std::uint64_t seed, int workers, F fn) {
  std::vector<Tally> t(instances);
  parallel_for(instances, workers, [&](std::size_t k) { t[k] = fn(derive_seed(seed, k)); });
  return t;
}

CampaignSummary weylterm_campaign() {
  const ConstantFit fit = fit_weyl_term_constants({10.0, 30.0, 100.0});
  const ConstantFit check = fit_weyl_term_constants({20.0, 50.0, 70.0});
  const double s1 = std::max(fit.c1, check.c1) / std::min(fit.c1, check.c1);
  const double s2 = std::max(fit.c2, check.c2) / std::min(fit.c2, check.c2);
  // L = 0 at x = 10 lands inside [0.1, 10] x^{-1/2}
  const double v = weyl_term(100, 10.0) * std::sqrt(10.0);
  const bool bracket = v >= 0.1 && v <= 10.0;
  std::vector<Tally> t{{(s1 <= 4.0 && s2 <= 4.0 && bracket) ? Outcome::Holds : Outcome::Fails,
                        std::max(s1, s2) / 4.0,
                        json{{"fit", {{"c1", fit.c1}, {"c2", fit.c2}, {"points", fit.points}}},
                             {"check", {{"c1", check.c1}, {"c2", check.c2}, {"points", check.points}}},
                             {"spread_c1", s1}, {"spread_c2", s2}, {"center_value_scaled", v}}}};
  return collect("weylterm", t, false);
}

}  // namespace

const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names{"largesieve", "interp",    "stability",
                                              "weylterm",   "weylderiv", "bwnorm",
                                              "bernstein",  "overcrowd"};
  return names;
}

double weyl_term_derivative_fd(int i, double x, int d, double h) {
  using boost::multiprecision::cpp_bin_float_100;
  using Big = cpp_bin_float_100;
  if (d < 0 || d > 12) throw std::invalid_argument("derivative order must be in [0, 12]");
  const Big xb = x, hb = h;
  // 1/sqrt(i!) folded into the exponent; its rounding is common to every
  // stencil point
  const Big lf = 0.5 * std::lgamma(i + 1.0);
  auto core = [&](const Big& t) { return exp(-t * t / 2 + i * log(t) - lf); };
  Big sum = 0, binom = 1;
  for (int j = 0; j <= d; ++j) {
    const Big t = xb + (Big(d) / 2 - j) * hb;
    sum += ((j % 2) ? -1 : 1) * binom * core(t);
    binom = binom * (d - j) / (j + 1);
  }
  sum /= pow(hb, d);
  return static_cast<double>(sum);
}

CampaignSummary run_campaign(const std::string& lemma, int instances, std::uint64_t seed,
                             int workers) {
  if (instances < 1) throw std::invalid_argument("instances must be at least 1");
  if (lemma == "largesieve")
    return collect(lemma, run_instances(instances, seed, workers, sieve_instance), true);
  if (lemma == "interp")
    return collect(lemma, run_instances(instances, seed, workers, interp_instance), true);
  if (lemma == "stability")
    return collect(lemma, run_instances(instances, seed, workers, stability_instance), true);
  if (lemma == "bwnorm")
    return collect(lemma, run_instances(instances, seed, workers, bw_instance), true);
  if (lemma == "weylderiv")
    return collect(lemma, run_instances(instances, seed, workers, weylderiv_instance), true);
  if (lemma == "weylterm") return weylterm_campaign();
  if (lemma == "bernstein") {
    auto t = run_instances(instances, seed, workers, bernstein_instance);
    double c50 = 0.0, c200 = 0.0;
    for (const auto& x : t) (x.record["n"].get<int>() == 50 ? c50 : c200) = std::max(
        x.record["n"].get<int>() == 50 ? c50 : c200, x.ratio);
    CampaignSummary s = collect(lemma, t, false);
    const double spread = (c50 > 0 && c200 > 0) ? std::max(c50, c200) / std::min(c50, c200) : 1.0;
    s.worst_ratio = spread / 4.0;
    s.detail["fitted_c_n50"] = c50;
    s.detail["fitted_c_n200"] = c200;
    s.detail["spread"] = spread;
    if (spread > 4.0) {
      s.fails = s.holds;
      s.holds = 0;
    }
    return s;
  }
  if (lemma == "overcrowd")
    return collect(lemma, run_instances(instances, seed, workers, overcrowd_instance), true);
  throw std::invalid_argument("unknown lemma: " + lemma);
}

json to_json(const CampaignSummary& s) {
  json j{{"lemma", s.lemma},   {"instances", s.instances}, {"holds", s.holds},
         {"fails", s.fails},   {"skipped", s.skipped},     {"worst_ratio", s.worst_ratio},
         {"exact", s.exact}};
  for (auto it = s.detail.begin(); it != s.detail.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace randroots
