#include "randroots/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randroots/special.hpp"

namespace randroots {

namespace {

// Terms below this fraction of the peak term are dropped.
constexpr double kTermCut = 1e-22;

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

void check_x(double x) {
  if (std::isnan(x)) throw std::invalid_argument("evaluation point is NaN");
}

// sum_k c_k cos(kx) and sum_k d_k sin(kx), k = 0..n, by Clenshaw.
// weight(k) scales both coefficient sequences on the fly.
template <class Cos, class Sin>
std::pair<double, double> clenshaw_trig(int n, double x, Cos ccoef, Sin scoef) {
  const double c1 = std::cos(x);
  const double two_c = 2.0 * c1;
  double bc1 = 0.0, bc2 = 0.0, bs1 = 0.0, bs2 = 0.0;
  for (int k = n; k >= 1; --k) {
    const double bc = ccoef(k) + two_c * bc1 - bc2;
    const double bs = scoef(k) + two_c * bs1 - bs2;
    bc2 = bc1;
    bc1 = bc;
    bs2 = bs1;
    bs1 = bs;
  }
  return {ccoef(0) + bc1 * c1 - bc2, bs1 * std::sin(x)};
}

// F^(m) of sum_k a_k cos(kx) + b_k sin(kx), unnormalized.
double trig_derivative(const PolySample& p, double x, int m) {
  const int n = p.degree();
  const int r = m % 4;
  auto km = [m](int k) { return m == 0 ? 1.0 : std::pow(static_cast<double>(k), m); };
  const auto& a = p.a;
  const auto& b = p.b;
  std::pair<double, double> v;
  switch (r) {
    case 0:
      v = clenshaw_trig(n, x, [&](int k) { return km(k) * a[k]; },
                        [&](int k) { return km(k) * b[k]; });
      break;
    case 1:
      v = clenshaw_trig(n, x, [&](int k) { return km(k) * b[k]; },
                        [&](int k) { return -km(k) * a[k]; });
      break;
    case 2:
      v = clenshaw_trig(n, x, [&](int k) { return -km(k) * a[k]; },
                        [&](int k) { return -km(k) * b[k]; });
      break;
    default:
      v = clenshaw_trig(n, x, [&](int k) { return -km(k) * b[k]; },
                        [&](int k) { return km(k) * a[k]; });
      break;
  }
  return v.first + v.second;
}

struct PeakTerms {
  int lo = 0;
  int hi = -1;
  double log_scale = 0.0;
  std::vector<double>* u = nullptr;  // u[i - lo]
  double at(int i) const { return (i < lo || i > hi) ? 0.0 : (*u)[i - lo]; }
};

thread_local std::vector<double> tl_terms;
thread_local std::vector<double> tl_up;
thread_local std::vector<double> tl_down;

// Fills terms from the peak outward: up[k] = u_{peak+k}, down[k] = u_{peak-k}.
template <class Up, class Down>
PeakTerms peak_terms(int n, int peak, double log_peak, double peak_sign, Up up_ratio,
                     Down down_ratio, int pad) {
  tl_up.clear();
  tl_down.clear();
  double u = peak_sign;
  tl_up.push_back(u);
  for (int i = peak; i < n; ++i) {
    u *= up_ratio(i);
    if (std::fabs(u) < kTermCut && i + 1 > peak + pad) break;
    tl_up.push_back(u);
  }
  u = peak_sign;
  for (int i = peak; i > 0; --i) {
    u *= down_ratio(i);
    if (std::fabs(u) < kTermCut && i - 1 < peak - pad) break;
    tl_down.push_back(u);
  }
  PeakTerms t;
  t.lo = peak - static_cast<int>(tl_down.size());
  t.hi = peak + static_cast<int>(tl_up.size()) - 1;
  t.log_scale = log_peak;
  tl_terms.assign(static_cast<std::size_t>(t.hi - t.lo + 1), 0.0);
  for (std::size_t k = 0; k < tl_down.size(); ++k) tl_terms[tl_down.size() - 1 - k] = tl_down[k];
  for (std::size_t k = 0; k < tl_up.size(); ++k) tl_terms[tl_down.size() + k] = tl_up[k];
  t.u = &tl_terms;
  return t;
}

}  // namespace

Evaluator::Evaluator(const EnsembleSpec& spec) : spec_(spec) {
  spec_.validate();
  const int n = spec_.degree;
  switch (spec_.kind) {
    case EnsembleKind::Orthogonal:
      rec_a_.assign(static_cast<std::size_t>(n) + 2, 0.0);
      rec_b_.assign(static_cast<std::size_t>(n) + 1, 0.0);
      for (int j = 1; j <= n + 1; ++j) rec_a_[j] = spec_.basis.rec_a(j);
      for (int j = 0; j <= n; ++j) rec_b_[j] = spec_.basis.rec_b(j);
      p0_ = spec_.basis.p0();
      break;
    case EnsembleKind::Elliptic:
      half_log_.resize(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) half_log_[i] = 0.5 * log_binomial(n, i);
      break;
    case EnsembleKind::Weyl:
      half_log_.resize(static_cast<std::size_t>(n) + 1);
      sqrt_int_.resize(static_cast<std::size_t>(n) + 2);
      for (int i = 0; i <= n; ++i) half_log_[i] = 0.5 * std::lgamma(i + 1.0);
      for (int i = 0; i <= n + 1; ++i) sqrt_int_[i] = std::sqrt(static_cast<double>(i));
      break;
    default:
      break;
  }
}

ValueSlope Evaluator::kac(const PolySample& p, double x, bool scaled) const {
  const auto& a = p.a;
  const int n = p.degree();
  if (!scaled || std::fabs(x) <= 1.0) {
    double s = a[n], c = 0.0, d = 0.0;
    for (int i = n - 1; i >= 0; --i) {
      // derivative first, it uses the previous partial value
      d = d * x + (s + c);
      double pr, pe, sr, se;
      two_prod(s, x, pr, pe);
      two_sum(pr, a[i], sr, se);
      s = sr;
      c = c * x + (pe + se);
    }
    return {s + c, d};
  }
  // |x|^-n F(x) = sign(x)^n sum a_i y^(n-i), y = 1/x
  const double y = 1.0 / x;
  double s = a[0], c = 0.0, d = 0.0;
  for (int i = 1; i <= n; ++i) {
    d = d * y + (s + c);
    double pr, pe, sr, se;
    two_prod(s, y, pr, pe);
    two_sum(pr, a[i], sr, se);
    s = sr;
    c = c * y + (pe + se);
  }
  const double sg = (x < 0 && n % 2 == 1) ? -1.0 : 1.0;
  // d/dx [sign^n R(1/x)] = -sign^n R'(y) y^2
  return {sg * (s + c), -sg * d * y * y};
}

ValueSlope Evaluator::trig(const PolySample& p, double x) const {
  const double norm = 1.0 / std::sqrt(static_cast<double>(p.degree()));
  return {norm * trig_derivative(p, x, 0), norm * trig_derivative(p, x, 1)};
}

ValueSlope Evaluator::orthogonal(const PolySample& p, double x) const {
  const int n = p.degree();
  const auto& c = p.a;
  double y1 = 0.0, y2 = 0.0, d1 = 0.0, d2 = 0.0;
  for (int k = n; k >= 0; --k) {
    const double ia = 1.0 / rec_a_[k + 1];
    const double alpha = (x - rec_b_[k]) * ia;
    const double beta = (k + 2 <= n + 1) ? -rec_a_[k + 1] / rec_a_[k + 2] : 0.0;
    const double y = c[k] + alpha * y1 + beta * y2;
    const double d = alpha * d1 + ia * y1 + beta * d2;
    y2 = y1;
    y1 = y;
    d2 = d1;
    d1 = d;
  }
  const double norm = p0_ / std::sqrt(static_cast<double>(n));
  return {norm * y1, norm * d1};
}

ValueSlope Evaluator::weyl(const PolySample& p, double x, bool scaled) const {
  const int n = p.degree();
  const double ax = std::fabs(x);
  int peak = 0;
  if (ax > 0.0) peak = static_cast<int>(std::clamp(std::floor(x * x), 0.0, static_cast<double>(n)));
  const double log_peak =
      -0.5 * x * x + (peak > 0 ? peak * std::log(ax) : 0.0) - half_log_[peak];
  const double sign = (x < 0 && peak % 2 == 1) ? -1.0 : 1.0;
  const auto& sq = sqrt_int_;
  const PeakTerms t = peak_terms(
      n, peak, log_peak, sign, [&](int i) { return x / sq[i + 1]; },
      [&](int i) { return sq[i] / x; }, 1);
  CompensatedSum S, D;
  double Q = 0.0, QD = 0.0;
  for (int i = t.lo; i <= t.hi; ++i) {
    const double ui = t.at(i);
    const double di = sq[i] * t.at(i - 1) - x * ui;
    S.add(p.a[i] * ui);
    D.add(p.a[i] * di);
    Q += ui * ui;
    QD += ui * di;
  }
  if (!scaled) {
    const double e = std::exp(t.log_scale);
    return {e * S.value(), e * D.value()};
  }
  const double rq = 1.0 / std::sqrt(Q);
  const double s = S.value() * rq;
  return {s, D.value() * rq - s * QD / Q};
}

ValueSlope Evaluator::angular(const PolySample& p, double theta) const {
  if (spec_.kind != EnsembleKind::Elliptic)
    throw std::invalid_argument("angular form exists for Elliptic only");
  check_x(theta);
  const int n = p.degree();
  double c = std::cos(theta), s = std::sin(theta);
  double flip = 1.0;
  if (s < 0.0) {
    c = -c;
    s = -s;
    if (n % 2 == 1) flip = -1.0;
  }
  const int peak = static_cast<int>(std::clamp(std::round(n * c * c), 0.0, static_cast<double>(n)));
  const double lc = peak > 0 ? peak * std::log(std::fabs(c)) : 0.0;
  const double ls = (n - peak) > 0 ? (n - peak) * std::log(s) : 0.0;
  const double sign = (c < 0 && peak % 2 == 1) ? -1.0 : 1.0;
  const double nd = static_cast<double>(n);
  const PeakTerms t = peak_terms(
      n, peak, half_log_[peak] + lc + ls, sign,
      [&](int i) { return std::sqrt((nd - i) / (i + 1.0)) * (c / s); },
      [&](int i) { return std::sqrt(i / (nd - i + 1.0)) * (s / c); }, 1);
  CompensatedSum G, D;
  for (int i = t.lo; i <= t.hi; ++i) {
    G.add(p.a[i] * t.at(i));
    const double up = (i < n) ? std::sqrt((nd - i) * (i + 1.0)) * t.at(i + 1) : 0.0;
    const double dn = (i > 0) ? std::sqrt(i * (nd - i + 1.0)) * t.at(i - 1) : 0.0;
    D.add(p.a[i] * (up - dn));
  }
  const double e = flip * std::exp(t.log_scale);
  return {e * G.value(), e * D.value()};
}

ValueSlope Evaluator::value_slope(const PolySample& p, double x) const {
  check_x(x);
  switch (spec_.kind) {
    case EnsembleKind::Kac: return kac(p, x, false);
    case EnsembleKind::Trig: return trig(p, x);
    case EnsembleKind::Orthogonal: return orthogonal(p, x);
    case EnsembleKind::Weyl: return weyl(p, x, false);
    case EnsembleKind::Elliptic: {
      const double r = std::hypot(1.0, x);
      const double s = 1.0 / r;
      const ValueSlope g = angular(p, std::atan2(1.0, x));
      return {g.f, -g.df * s * s};
    }
  }
  return {};
}

ValueSlope Evaluator::working(const PolySample& p, double x) const {
  check_x(x);
  switch (spec_.kind) {
    case EnsembleKind::Kac: return kac(p, x, true);
    case EnsembleKind::Weyl: return weyl(p, x, true);
    default: return value_slope(p, x);
  }
}

std::vector<double> Evaluator::derivatives(const PolySample& p, double x, int order) const {
  check_x(x);
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const int n = p.degree();
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  switch (spec_.kind) {
    case EnsembleKind::Kac: {
      // Horner for all derivatives; out[k] accumulates F^(k)/k!
      for (int i = n; i >= 0; --i) {
        for (int k = std::min(order, n - i); k >= 1; --k) out[k] = out[k] * x + out[k - 1];
        out[0] = out[0] * x + p.a[i];
      }
      double f = 1.0;
      for (int k = 2; k <= order; ++k) {
        f *= k;
        out[k] *= f;
      }
      return out;
    }
    case EnsembleKind::Trig: {
      const double norm = 1.0 / std::sqrt(static_cast<double>(n));
      for (int k = 0; k <= order; ++k) out[k] = norm * trig_derivative(p, x, k);
      return out;
    }
    case EnsembleKind::Orthogonal: {
      const int m = order;
      std::vector<double> y1(m + 1, 0.0), y2(m + 1, 0.0), y(m + 1, 0.0);
      for (int k = n; k >= 0; --k) {
        const double ia = 1.0 / rec_a_[k + 1];
        const double alpha = (x - rec_b_[k]) * ia;
        const double beta = (k + 2 <= n + 1) ? -rec_a_[k + 1] / rec_a_[k + 2] : 0.0;
        for (int j = 0; j <= m; ++j) {
          y[j] = alpha * y1[j] + beta * y2[j];
          if (j == 0) y[j] += p.a[k];
          else y[j] += j * ia * y1[j - 1];
        }
        y2.swap(y1);
        y1 = y;
      }
      const double norm = p0_ / std::sqrt(static_cast<double>(n));
      for (int j = 0; j <= m; ++j) out[j] = norm * y1[j];
      return out;
    }
    case EnsembleKind::Weyl: {
      const double ax = std::fabs(x);
      int peak = 0;
      if (ax > 0.0) peak = static_cast<int>(std::clamp(std::floor(x * x), 0.0, static_cast<double>(n)));
      const double log_peak =
          -0.5 * x * x + (peak > 0 ? peak * std::log(ax) : 0.0) - half_log_[peak];
      const double sign = (x < 0 && peak % 2 == 1) ? -1.0 : 1.0;
      const auto& sq = sqrt_int_;
      const PeakTerms t = peak_terms(
          n, peak, log_peak, sign, [&](int i) { return x / sq[i + 1]; },
          [&](int i) { return sq[i] / x; }, order + 2);
      const int w = t.hi - t.lo + 1;
      // rows: derivative order; t^(k+1)_i = sqrt(i) t^(k)_{i-1} - x t^(k)_i - k t^(k-1)_i
      std::vector<std::vector<double>> d(order + 1, std::vector<double>(w, 0.0));
      for (int i = 0; i < w; ++i) d[0][i] = t.at(t.lo + i);
      for (int k = 0; k < order; ++k) {
        for (int i = 0; i < w; ++i) {
          const int idx = t.lo + i;
          double v = -x * d[k][i];
          if (i > 0) v += sq[idx] * d[k][i - 1];
          if (k > 0) v -= k * d[k - 1][i];
          d[k + 1][i] = v;
        }
      }
      const double e = std::exp(t.log_scale);
      for (int k = 0; k <= order; ++k) {
        CompensatedSum s;
        for (int i = 0; i < w; ++i) s.add(p.a[t.lo + i] * d[k][i]);
        out[k] = e * s.value();
      }
      return out;
    }
    case EnsembleKind::Elliptic: {
      if (order > 1) throw UnsupportedCase("elliptic derivatives beyond first order");
      const ValueSlope v = value_slope(p, x);
      out[0] = v.f;
      if (order == 1) out[1] = v.df;
      return out;
    }
  }
  return out;
}

double evaluate(const PolySample& p, double x) { return Evaluator(p.spec).value(p, x); }

double evaluate_derivative(const PolySample& p, double x) {
  return Evaluator(p.spec).value_slope(p, x).df;
}

}  // namespace randroots
