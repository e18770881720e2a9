#include "randroots/kernels.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "randroots/errors.hpp"
#include "randroots/special.hpp"

namespace randroots {

namespace {

constexpr double kPi = std::numbers::pi;

// log |c_i| for the monomial-weighted ensembles, F = sum xi_i c_i x^i.
double log_weight(EnsembleKind k, int n, int i) {
  switch (k) {
    case EnsembleKind::Elliptic: return 0.5 * log_binomial(n, i);
    case EnsembleKind::Weyl: return -0.5 * std::lgamma(i + 1.0);
    default: return 0.0;
  }
}

bool monomial(EnsembleKind k) {
  return k == EnsembleKind::Kac || k == EnsembleKind::Elliptic || k == EnsembleKind::Weyl;
}

// Orthonormal p_j(x) and p_j'(x), j = 0..n, sharing one positive scale.
void ortho_values(const KernelId& id, double x, std::vector<double>& p, std::vector<double>& dp) {
  const int n = id.n;
  p.assign(n + 1, 0.0);
  dp.assign(n + 1, 0.0);
  p[0] = id.basis.p0();
  for (int j = 0; j < n; ++j) {
    const double aj1 = id.basis.rec_a(j + 1);
    const double bj = id.basis.rec_b(j);
    const double aj = j > 0 ? id.basis.rec_a(j) : 0.0;
    const double pm = j > 0 ? p[j - 1] : 0.0;
    const double dpm = j > 0 ? dp[j - 1] : 0.0;
    p[j + 1] = ((x - bj) * p[j] - aj * pm) / aj1;
    dp[j + 1] = ((x - bj) * dp[j] + p[j] - aj * dpm) / aj1;
    const double big = std::max(std::fabs(p[j + 1]), std::fabs(dp[j + 1]));
    if (big > 1e200) {
      for (int k = 0; k <= j + 1; ++k) {
        p[k] *= 1e-200;
        dp[k] *= 1e-200;
      }
    }
  }
}

// Unit vector proportional to the basis (p_j(x))_j of the ensemble.
std::vector<double> unit_basis(const KernelId& id, double x) {
  const int n = id.n;
  std::vector<double> v;
  if (monomial(id.kind)) {
    v.resize(n + 1);
    if (x == 0.0) {
      v.assign(n + 1, 0.0);
      v[0] = 1.0;
      return v;
    }
    const double lx = std::log(std::fabs(x));
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
      v[i] = log_weight(id.kind, n, i) + i * lx;
      peak = std::max(peak, v[i]);
    }
    for (int i = 0; i <= n; ++i) {
      const double m = std::exp(v[i] - peak);
      v[i] = (x < 0 && i % 2 == 1) ? -m : m;
    }
  } else if (id.kind == EnsembleKind::Trig) {
    v.resize(2 * static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
      v[2 * (j - 1)] = std::cos(j * x);
      v[2 * (j - 1) + 1] = std::sin(j * x);
    }
  } else {
    std::vector<double> dp;
    ortho_values(id, x, v, dp);
  }
  double ss = 0.0;
  for (double c : v) ss += c * c;
  const double r = 1.0 / std::sqrt(ss);
  for (double& c : v) c *= r;
  return v;
}

void check_point(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("kernel arguments must be finite");
}

double kac_closed(int n, double x) {
  const double ax = std::fabs(x);
  if (ax > 1.0) return kac_closed(n, 1.0 / x) / (x * x);
  if (ax == 1.0 || x == 0.0) return -1.0;  // signal: use the series
  const double lx = std::log(ax);
  const double d = (1.0 - ax) * (1.0 + ax);  // 1 - ax exact near 1
  const double A = 1.0 / (d * d);
  const double lB = 2.0 * std::log(n + 1.0) + 2.0 * n * lx -
                    2.0 * std::log(-std::expm1((2.0 * n + 2.0) * lx));
  const double v = A - std::exp(lB);
  if (v < 1e-3 * A) return -1.0;
  return std::sqrt(v) / kPi;
}

double weyl_closed(int n, double x) {
  if (x == 0.0) return 1.0 / kPi;
  const double u = x * x;
  // R = u^n e^-u / Gamma(n+1, u)
  const double R = std::exp(-std::log(u) - log_upper_gamma_scaled(n + 1.0, u));
  const double t2 = R * (u - n - 1.0);
  const double t3 = u * R * R;
  const double v = 1.0 + t2 - t3;
  const double scale = std::max({1.0, std::fabs(t2), t3});
  if (v < 1e-3 * scale) return -1.0;
  return std::sqrt(v) / kPi;
}

}  // namespace

KernelId::KernelId(EnsembleKind k, int degree, OrthoBasis b) : kind(k), n(degree), basis(b) {
  if (degree < 1) throw std::domain_error("kernel degree must be at least 1");
}

double kernel_normalized(const KernelId& id, double s, double t) {
  check_point(s);
  check_point(t);
  if (id.kind == EnsembleKind::Elliptic) {
    const double c = 1.0 + s * t;
    if (c == 0.0) return 0.0;
    const double lg = id.n * (std::log(std::fabs(c)) - 0.5 * std::log1p(s * s) - 0.5 * std::log1p(t * t));
    const double m = std::exp(lg);
    return (c < 0 && id.n % 2 == 1) ? -m : m;
  }
  if (id.kind == EnsembleKind::Trig) {
    double sum = 0.0;
    for (int j = 1; j <= id.n; ++j) sum += std::cos(j * (s - t));
    return sum / id.n;
  }
  const auto u = unit_basis(id, s);
  const auto v = unit_basis(id, t);
  double dot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
  return std::clamp(dot, -1.0, 1.0);
}

double kernel_defect(const KernelId& id, double s, double t) {
  check_point(s);
  check_point(t);
  if (id.kind == EnsembleKind::Elliptic) {
    const double c = 1.0 + s * t;
    if (c > 0.0) {
      const double r = (s - t) / c;
      return -std::expm1(-0.5 * id.n * std::log1p(r * r));
    }
    return 1.0 - kernel_normalized(id, s, t);
  }
  if (id.kind == EnsembleKind::Trig) {
    double sum = 0.0;
    const double half = 0.5 * (s - t);
    for (int j = 1; j <= id.n; ++j) {
      const double sj = std::sin(j * half);
      sum += sj * sj;
    }
    return 2.0 * sum / id.n;
  }
  const auto u = unit_basis(id, s);
  const auto v = unit_basis(id, t);
  double d2 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d2 += (u[i] - v[i]) * (u[i] - v[i]);
  return 0.5 * d2;
}

double intensity_series(const KernelId& id, double x) {
  check_point(x);
  const int n = id.n;
  if (monomial(id.kind)) {
    if (std::fabs(x) < 1e-150) {
      // Var_w(i) / x^2 -> c_1^2 / c_0^2
      return std::exp(log_weight(id.kind, n, 1) - log_weight(id.kind, n, 0)) / kPi;
    }
    std::vector<double> lw(n + 1);
    const double lx = std::log(std::fabs(x));
    for (int i = 0; i <= n; ++i) lw[i] = 2.0 * (log_weight(id.kind, n, i) + i * lx);
    const IndexMoments m = index_moments(lw);
    return std::sqrt(m.variance) / (kPi * std::fabs(x));
  }
  if (id.kind == EnsembleKind::Trig) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += static_cast<double>(j) * j;
    return std::sqrt(s / n) / kPi;
  }
  std::vector<double> p, dp;
  ortho_values(id, x, p, dp);
  double A = 0.0, B = 0.0, C = 0.0;
  for (int j = 0; j <= n; ++j) {
    A += p[j] * p[j];
    B += p[j] * dp[j];
    C += dp[j] * dp[j];
  }
  const double v = (A * C - B * B) / (A * A);
  return std::sqrt(std::max(v, 0.0)) / kPi;
}

double intensity(const KernelId& id, double x) {
  check_point(x);
  const double n = id.n;
  switch (id.kind) {
    case EnsembleKind::Elliptic: return std::sqrt(n) / (kPi * (1.0 + x * x));
    case EnsembleKind::Trig: return std::sqrt((n + 1.0) * (2.0 * n + 1.0) / 6.0) / kPi;
    case EnsembleKind::Kac: {
      const double r = kac_closed(id.n, x);
      return r >= 0.0 ? r : intensity_series(id, x);
    }
    case EnsembleKind::Weyl: {
      const double r = weyl_closed(id.n, x);
      return r >= 0.0 ? r : intensity_series(id, x);
    }
    case EnsembleKind::Orthogonal: return intensity_series(id, x);
  }
  return 0.0;
}

double intensity_from_kernel(const KernelId& id, double x, double h) {
  check_point(x);
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  double logk = 0.0;
  if (id.kind == EnsembleKind::Elliptic && 1.0 + (x + h) * (x - h) > 0.0) {
    const double r = 2.0 * h / (1.0 + (x + h) * (x - h));
    logk = -0.5 * id.n * std::log1p(r * r);
  } else {
    logk = std::log1p(-kernel_defect(id, x + h, x - h));
  }
  const double D = -logk / (2.0 * h * h);
  if (D < 0.0) {
    if (D > -1e-12) return 0.0;
    throw NumericalDegeneracy("negative mixed partial of log K", D);
  }
  return std::sqrt(D) / kPi;
}

QuadratureResult integrate_intensity(const KernelId& id, double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw std::invalid_argument("invalid interval");
  if (lo == hi) return {0.0, 0.0, true};
  const bool finite = std::isfinite(lo) && std::isfinite(hi);
  if (!finite && id.kind == EnsembleKind::Trig)
    throw std::domain_error("trigonometric intensity is periodic; use a finite interval");

  std::vector<double> brk{0.0};
  const double n = id.n;
  if (id.kind == EnsembleKind::Kac) {
    for (double s : {1.0, -1.0}) {
      brk.push_back(s);
      for (double k : {1.0, 4.0, 16.0, 64.0, 256.0}) {
        if (k / n < 1.0) brk.push_back(s * (1.0 - k / n));
        brk.push_back(s * (1.0 + k / n));
      }
    }
  } else if (id.kind == EnsembleKind::Weyl) {
    for (double f : {0.5, 0.9, 1.0, 1.1, 1.5, 2.0}) {
      brk.push_back(f * std::sqrt(n));
      brk.push_back(-f * std::sqrt(n));
    }
  } else if (id.kind == EnsembleKind::Elliptic) {
    brk.push_back(1.0);
    brk.push_back(-1.0);
  }
  std::vector<double> pts{lo};
  for (double b : brk)
    if (b > lo && b < hi) pts.push_back(b);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());


  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  QuadratureResult out;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double err = 0.0, v = 0.0;
    // atan substitution only for long or unbounded pieces: near a steep
    // stretch, rounding in tan(t) turns into noise the error estimate chases
    const bool angular = !std::isfinite(pts[k]) || !std::isfinite(pts[k + 1]) ||
                         (monomial(id.kind) && pts[k + 1] - pts[k] > 8.0);
    if (angular) {
      auto g = [&](double t) {
        const double x = std::tan(t);
        return intensity(id, x) * (1.0 + x * x);
      };
      v = GK::integrate(g, std::atan(pts[k]), std::atan(pts[k + 1]), 20, 1e-10, &err);
    } else {
      auto g = [&](double x) { return intensity(id, x); };
      v = GK::integrate(g, pts[k], pts[k + 1], 20, 1e-10, &err);
    }
    out.value += v;
    out.error += err;
  }
  out.converged = out.error <= 1e-6 * std::max(std::fabs(out.value), 1e-300) || out.error < 1e-14;
  return out;
}

double expected_roots(const KernelId& id, const Interval& I) {
  const QuadratureResult r = integrate_intensity(id, I.lo, I.hi);
  if (!r.converged)
    throw std::runtime_error("intensity quadrature did not converge (error " +
                             std::to_string(r.error) + ")");
  return r.value;
}

double expected_roots_full_line(const KernelId& id) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const QuadratureResult r = integrate_intensity(id, -inf, inf);
  if (!r.converged) throw std::runtime_error("intensity quadrature did not converge");
  return r.value;
}

IntensityCurve intensity_curve(const KernelId& id, const Interval& range, int grid) {
  if (grid < 1) throw std::invalid_argument("grid must be at least 1");
  IntensityCurve c;
  c.id = id;
  c.range = range;
  c.x.resize(grid);
  c.rho.resize(grid);
  for (int k = 0; k < grid; ++k) {
    const double x = grid == 1 ? 0.5 * (range.lo + range.hi)
                               : range.lo + range.length() * k / (grid - 1.0);
    c.x[k] = x;
    c.rho[k] = intensity(id, x);
  }
  c.quadrature_total = expected_roots(id, range);
  return c;
}

}  // namespace randroots
