#include "randroots/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "randroots/evaluation.hpp"
#include "randroots/rootcount.hpp"
#include "randroots/special.hpp"

namespace randroots {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Fails: return "fails";
    case Outcome::Skipped: return "skipped";
  }
  return "?";
}

namespace {

double integrate(const std::function<double(double)>& g, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, lo, hi, 15, 1e-12, &err);
  if (!std::isfinite(v)) throw NumericalDegeneracy("quadrature produced a non-finite value", v);
  return v;
}

// k-th derivative of u -> F(lo + u L)
double rescaled_derivative(const Evaluator& ev, const PolySample& p, double lo, double L, double u,
                           int k) {
  const auto d = ev.derivatives(p, lo + u * L, k);
  return d[k] * std::pow(L, k);
}

}  // namespace

double sup_norm(const std::function<double(double)>& g, double lo, double hi) {
  if (!(hi >= lo)) throw std::invalid_argument("sup_norm needs lo <= hi");
  if (hi == lo) return std::fabs(g(lo));
  constexpr int kGrid = 1024;
  std::vector<double> v(kGrid);
  const double h = (hi - lo) / (kGrid - 1);
  for (int j = 0; j < kGrid; ++j) v[j] = std::fabs(g(j == kGrid - 1 ? hi : lo + j * h));
  std::vector<int> idx(kGrid);
  for (int j = 0; j < kGrid; ++j) idx[j] = j;
  std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(), [&](int a, int b) { return v[a] > v[b]; });
  double best = v[idx[0]];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int t = 0; t < 3; ++t) {
    double a = lo + std::max(0, idx[t] - 1) * h;
    double b = std::min(hi, lo + (idx[t] + 1) * h);
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = std::fabs(g(c)), fd = std::fabs(g(d));
    for (int it = 0; it < 60 && b - a > 1e-15 * (std::fabs(a) + std::fabs(b) + 1e-300); ++it) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = std::fabs(g(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = std::fabs(g(d));
      }
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

CheckResult check_large_sieve(const SieveCheckInput& in) {
  if (in.d < 1) throw std::invalid_argument("derivative order d must be at least 1");
  if (in.points.empty()) throw std::invalid_argument("at least one dividing point is required");
  if (!(in.c_star > 0.0 && in.N > 0.0 && in.S >= 0.0))
    throw std::invalid_argument("C*, N must be positive and S nonnegative");
  for (std::size_t i = 0; i < in.points.size(); ++i) {
    if (!(in.points[i] >= 0.0 && in.points[i] <= 1.0))
      throw std::invalid_argument("dividing points must lie in [0, 1]");
    if (i > 0 && !(in.points[i] > in.points[i - 1]))
      throw std::invalid_argument("dividing points must be strictly increasing");
  }
  const Evaluator ev(in.sample.spec);
  const double lo = in.domain.lo, L = in.domain.length();
  if (!(L > 0.0)) throw std::invalid_argument("domain must have positive length");
  const int d = in.d;

  double delta;
  if (in.points.size() == 1) {
    delta = std::min(in.points[0], 1.0 - in.points[0]);
  } else {
    delta = INFINITY;
    for (std::size_t i = 1; i < in.points.size(); ++i)
      delta = std::min(delta, in.points[i] - in.points[i - 1]);
  }

  std::array<double, 2> I{};
  for (int j = 0; j < 2; ++j) {
    const int k = d - 1 + j;
    I[j] = integrate([&](double u) {
      const double v = rescaled_derivative(ev, in.sample, lo, L, u, k);
      return v * v;
    }, 0.0, 1.0);
  }
  const double cn = in.c_star * in.N;
  double S = in.S;
  if (S == 0.0) S = std::max(I[0] / std::pow(cn, 2 * (d - 1)), I[1] / std::pow(cn, 2 * d));

  CheckResult r;
  for (double x : in.points) {
    const double v = rescaled_derivative(ev, in.sample, lo, L, x, d - 1);
    r.lhs += v * v;
  }
  r.rhs = (cn + 1.0 / delta) * std::pow(cn, 2 * (d - 1)) * S;

  const double slack = 1.0 + 1e-9;
  if (I[0] > std::pow(cn, 2 * (d - 1)) * S * slack || I[1] > std::pow(cn, 2 * d) * S * slack) {
    r.outcome = Outcome::Skipped;
    r.note = "integral hypotheses not met";
    return r;
  }
  if (!(delta > 0.0) || in.points.front() < delta || in.points.back() > 1.0 - delta) {
    r.outcome = Outcome::Skipped;
    r.note = "points closer than delta to the ends of T";
    return r;
  }
  r.outcome = r.lhs <= r.rhs * slack ? Outcome::Holds : Outcome::Fails;
  return r;
}

CheckResult check_interpolation_bound(const InterpolationInput& in) {
  const int m = static_cast<int>(in.roots.size());
  if (m < 1 || m > 20) throw std::invalid_argument("need between 1 and 20 roots");
  if (in.h.empty()) throw std::invalid_argument("multiplier needs at least one coefficient");
  for (double x : in.roots)
    if (!in.I.contains(x)) throw std::invalid_argument("roots must lie inside I");
  const double lo = in.I.lo, r = in.I.length();
  // coefficients in t = x - lo
  std::vector<double> c = in.h;
  for (double x : in.roots) {
    const double s = x - lo;
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= s * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> dm;
  for (std::size_t i = m; i < c.size(); ++i) {
    double f = c[i];
    for (int k = 0; k < m; ++k) f *= static_cast<double>(i - k);
    dm.push_back(f);
  }
  auto horner = [](const std::vector<double>& q, double t) {
    double s = 0.0;
    for (std::size_t i = q.size(); i-- > 0;) s = s * t + q[i];
    return s;
  };
  CheckResult out;
  out.lhs = sup_norm([&](double x) { return horner(c, x - lo); }, lo, in.I.hi);
  const double dmax = sup_norm([&](double x) { return horner(dm, x - lo); }, lo, in.I.hi);
  out.rhs = std::pow(4.0 * std::numbers::e * r / m, m) * dmax;
  out.outcome = out.lhs <= out.rhs * (1.0 + 1e-9) ? Outcome::Holds : Outcome::Fails;
  return out;
}

StabilityResult check_stability(const StabilityCheckInput& in) {
  if (!(in.mu > 0.0 && in.nu > 0.0)) throw std::invalid_argument("mu and nu must be positive");
  if (!(in.f.spec.kind == in.g.spec.kind && in.f.degree() == in.g.degree() &&
        in.f.spec.basis == in.g.spec.basis))
    throw std::invalid_argument("f and g must share ensemble and degree");
  if (in.grid < 2) throw std::invalid_argument("grid needs at least two points");
  StabilityResult res;
  const double reach = in.mu / in.nu;
  if (!(in.I.length() > 2.0 * reach)) {
    res.note = "interval shorter than 2 mu / nu";
    return res;
  }
  const Evaluator ev(in.f.spec);
  const double h = in.I.length() / (in.grid - 1);
  for (int j = 0; j < in.grid; ++j) {
    const double x = j == in.grid - 1 ? in.I.hi : in.I.lo + j * h;
    const ValueSlope v = ev.value_slope(in.f, x);
    if (!(std::fabs(v.f) > in.mu || std::fabs(v.df) > in.nu)) {
      res.note = "|f| <= mu and |f'| <= nu at a grid point";
      return res;
    }
  }
  const double gmax = sup_norm([&](double x) { return ev.value(in.g, x); }, in.I.lo, in.I.hi);
  if (!(gmax < in.mu)) {
    res.note = "max |g| is not below mu";
    return res;
  }

  std::vector<double> a = in.f.a, b = in.f.b;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += in.g.a[i];
  for (std::size_t i = 0; i < b.size(); ++i) b[i] += in.g.b[i];
  const PolySample sum = make_sample_from(in.f.spec, std::move(a), std::move(b));

  const auto froots = find_roots(in.f, in.I);
  const auto sroots = find_roots(sum, in.I);
  std::size_t next = 0;
  for (double x : froots) {
    if (!(x - in.I.lo > reach && in.I.hi - x > reach)) continue;
    ++res.qualifying_roots;
    while (next < sroots.size() && sroots[next] <= x - reach) ++next;
    if (next < sroots.size() && sroots[next] < x + reach) {
      ++res.matched_roots;
      ++next;
    }
  }
  res.outcome = res.matched_roots == res.qualifying_roots ? Outcome::Holds : Outcome::Fails;
  return res;
}

double log_weyl_term(int i, double x) {
  if (i < 0) throw std::invalid_argument("index must be nonnegative");
  if (!(x >= 0.0)) throw std::invalid_argument("x must be nonnegative");
  if (x == 0.0) return i == 0 ? 0.0 : -INFINITY;
  return -0.5 * x * x + i * std::log(x) - 0.5 * std::lgamma(i + 1.0);
}

double weyl_term(int i, double x) { return std::exp(log_weyl_term(i, x)); }

double weyl_derivative_ratio(int i, double x, int d) {
  if (d < 0 || d > 12) throw std::invalid_argument("derivative order must be in [0, 12]");
  if (!(x > 0.0)) throw std::invalid_argument("x must be positive");
  if (i < 0) throw std::invalid_argument("index must be nonnegative");
  // terms reach x^d while the sum is (1 + |L|)^d: extended precision
  using R = long double;
  const R xl = x;
  std::vector<R> he(d + 1);
  he[0] = 1;
  if (d >= 1) he[1] = xl;
  for (int k = 1; k < d; ++k) he[k + 1] = xl * he[k] - k * he[k - 1];
  R sum = 0, binom = 1;
  for (int k = 0; k <= d; ++k) {
    const int j = d - k;  // derivatives falling on x^i
    R fall = 1;
    for (int t = 0; t < j; ++t) fall *= static_cast<R>(i - t) / xl;
    sum += ((k % 2) ? -1 : 1) * binom * he[k] * fall;
    binom = binom * (d - k) / (k + 1);
  }
  return static_cast<double>(sum);
}

double weyl_term_derivative(int i, double x, int d) {
  return weyl_derivative_ratio(i, x, d) * weyl_term(i, x);
}

ConstantFit fit_weyl_term_constants(const std::vector<double>& xs) {
  ConstantFit fit;
  fit.c1 = 0.0;
  fit.c2 = INFINITY;
  // root in c of -log c - c L^2 = target; the left side decreases in c
  auto solve = [](double L2, double target) {
    double lo = -30.0, hi = 30.0;  // log c
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double c = std::exp(mid);
      if (-mid - c * L2 > target) lo = mid;
      else hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
  };
  for (double x : xs) {
    if (!(x > 1.0)) throw std::invalid_argument("grid values of x must exceed 1");
    const double Lmax = std::cbrt(x);
    const int ilo = static_cast<int>(std::ceil(x * x - Lmax * x));
    const int ihi = static_cast<int>(std::floor(x * x + Lmax * x));
    const int step = std::max(1, (ihi - ilo) / 200);
    for (int i = std::max(ilo, 0); i <= ihi; i += step) {
      const double L = (i - x * x) / x;
      const double target = log_weyl_term(i, x) + 0.5 * std::log(x);
      const double c = solve(L * L, target);
      fit.c1 = std::max(fit.c1, c);
      fit.c2 = std::min(fit.c2, c);
      ++fit.points;
    }
  }
  return fit;
}

BwNormResult check_bw_norm_identity(int n, const std::vector<double>& a, bool allow_even) {
  const HarmonicCoeffs h = elliptic_to_harmonic(n, a, allow_even);
  BwNormResult r;
  const int M = 4 * (n + 1);
  CompensatedSum lhs;
  for (int j = 0; j < M; ++j) {
    const double g = elliptic_angular(n, a, std::numbers::pi * j / M);
    lhs.add(g * g);
  }
  r.lhs = lhs.value() / M;
  CompensatedSum rhs, coef, orig;
  for (std::size_t k = 0; k < h.modes.size(); ++k) {
    const double e2 = h.b[k] * h.b[k] + h.c[k] * h.c[k];
    rhs.add(std::exp(2.0 * h.log_weight[k]) * e2);
    coef.add(e2);
  }
  for (double v : a) orig.add(v * v);
  r.rhs = rhs.value();
  const double tiny = std::numeric_limits<double>::min();
  r.rel_err = std::fabs(r.lhs - r.rhs) / std::max(r.lhs, tiny);
  if (r.lhs == 0.0 && r.rhs == 0.0) r.rel_err = 0.0;
  r.coeff_norm_err = orig.value() > 0.0 ? std::fabs(coef.value() - orig.value()) / orig.value() : 0.0;
  return r;
}

BernsteinResult check_bernstein(const PolySample& p, const Interval& inner, const Interval& outer,
                                int k) {
  if (k < 1 || k > p.degree()) throw std::invalid_argument("derivative order must be in [1, n]");
  if (!(outer.lo < inner.lo && inner.hi < outer.hi && inner.length() > 0.0))
    throw std::invalid_argument("inner interval must sit strictly inside the outer one");
  const Evaluator ev(p.spec);
  const double eps0 = std::min(inner.lo - outer.lo, outer.hi - inner.hi) / inner.length();
  BernsteinResult r;
  r.lhs = integrate([&](double x) {
    const double v = ev.derivatives(p, x, k)[k];
    return v * v;
  }, inner.lo, inner.hi);
  const double f2 = integrate([&](double x) {
    const double v = ev.value(p, x);
    return v * v;
  }, outer.lo, outer.hi);
  const double n = p.degree();
  r.base = std::pow(eps0 * outer.length() * outer.length(), -k) * std::pow(n, 2 * k) * f2;
  r.fitted_c = r.base > 0.0 ? std::pow(r.lhs / r.base, 1.0 / k) : 0.0;
  return r;
}

OvercrowdingResult check_overcrowding_contrapositive(const PolySample& p, const Interval& T,
                                                     double A, double c_star, double N) {
  if (!(A > 0.0 && c_star > 0.0 && N > 0.0)) throw std::invalid_argument("A, C*, N must be positive");
  if (!(T.length() > 0.0)) throw std::invalid_argument("T must have positive length");
  const Evaluator ev(p.spec);
  const double lo = T.lo, L = T.length();
  OvercrowdingResult r;
  r.root_limit = A * N;
  r.bound = std::pow(2.0, -A / 8.0 + 2.0) * std::sqrt(c_star);
  const int top = p.spec.kind == EnsembleKind::Elliptic ? 1 : 3;
  for (int d = 0; d <= top; ++d) {
    const double I = integrate([&](double u) {
      const double v = rescaled_derivative(ev, p, lo, L, u, d);
      return v * v;
    }, 0.0, 1.0);
    const double cap = d == 0 ? c_star * c_star : std::pow(c_star * N, 2 * d);
    if (I > cap) {
      r.note = "integral hypothesis fails at d = " + std::to_string(d);
      return r;
    }
  }
  if (top < 3) r.note = "hypotheses spot-checked for d <= 1 only";
  r.max_abs = sup_norm([&](double u) { return ev.value(p, lo + u * L); }, 0.0, 1.0);
  r.roots = count_roots_scan(p, T).count;
  if (r.max_abs > r.bound) {
    r.outcome = r.roots < r.root_limit ? Outcome::Holds : Outcome::Fails;
  } else {
    r.outcome = Outcome::Holds;
    if (r.note.empty()) r.note = "max |G| within the bound; contrapositive is vacuous";
  }
  return r;
}

}  // namespace randroots
