#include "randroots/rootcount.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "randroots/kernels.hpp"

namespace randroots {

namespace {

constexpr double kPi = std::numbers::pi;

int sgn(double v) { return (v > 0) - (v < 0); }

// Cumulative integral of g over [lo, hi] as a piecewise-linear table built
// by adaptive Simpson; breakpoints are always table knots.
struct CumulativeTable {
  std::vector<double> t;
  std::vector<double> cum;

  void build(const std::function<double(double)>& g, std::vector<double> knots, double rel_tol) {
    t.assign(1, knots.front());
    cum.assign(1, 0.0);
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      const double a = knots[k], b = knots[k + 1];
      if (!(b > a)) continue;
      const double fa = g(a), fm = g(0.5 * (a + b)), fb = g(b);
      const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
      simpson(g, a, b, fa, fm, fb, whole, rel_tol, 0);
    }
  }

  void simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm,
               double fb, double whole, double rel_tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    if (depth >= 40 || std::fabs(both - whole) <= 15.0 * rel_tol * std::fabs(both) + 1e-14 * (b - a)) {
      t.push_back(m);
      cum.push_back(cum.back() + left);
      t.push_back(b);
      cum.push_back(cum.back() + right);
      return;
    }
    simpson(g, a, m, fa, flm, fm, left, rel_tol, depth + 1);
    simpson(g, m, b, fm, frm, fb, right, rel_tol, depth + 1);
  }

  double total() const { return cum.back(); }

  double invert(double level) const {
    auto it = std::lower_bound(cum.begin(), cum.end(), level);
    if (it == cum.begin()) return t.front();
    if (it == cum.end()) return t.back();
    const std::size_t j = static_cast<std::size_t>(it - cum.begin());
    const double c0 = cum[j - 1], c1 = cum[j];
    const double w = c1 > c0 ? (level - c0) / (c1 - c0) : 0.0;
    return t[j - 1] + w * (t[j] - t[j - 1]);
  }
};

bool angular_variable(EnsembleKind k) {
  return k == EnsembleKind::Kac || k == EnsembleKind::Elliptic || k == EnsembleKind::Weyl;
}

std::vector<double> feature_points(const EnsembleSpec& spec) {
  const double n = spec.degree;
  std::vector<double> pts{0.0};
  if (spec.kind == EnsembleKind::Kac) {
    for (double s : {1.0, -1.0}) {
      pts.push_back(s);
      for (double k : {1.0, 10.0}) {
        if (k / n < 1.0) pts.push_back(s * (1.0 - k / n));
        pts.push_back(s * (1.0 + k / n));
      }
    }
  } else if (spec.kind == EnsembleKind::Weyl) {
    pts.push_back(std::sqrt(n));
    pts.push_back(-std::sqrt(n));
  }
  return pts;
}

}  // namespace

Interval default_interval(const EnsembleSpec& spec) {
  const double rn = std::sqrt(static_cast<double>(spec.degree));
  switch (spec.kind) {
    case EnsembleKind::Kac: return {-1e6, 1e6};
    case EnsembleKind::Trig: return {0.0, 2.0 * kPi};
    case EnsembleKind::Elliptic:
    case EnsembleKind::Weyl: return {-10.0 * rn, 10.0 * rn};
    case EnsembleKind::Orthogonal: return {-0.5, 0.5};
  }
  return {};
}

ScanPlan::ScanPlan(const EnsembleSpec& spec, const Interval& I, double density)
    : interval_(I), eval_(spec) {
  if (!(density >= 8.0)) throw std::invalid_argument("scan density must be at least 8");
  const KernelId id = KernelId::of(spec);
  const bool ang = angular_variable(spec.kind);
  auto to_t = [ang](double x) { return ang ? std::atan(x) : x; };
  auto to_x = [ang](double t) { return ang ? std::tan(t) : t; };

  std::vector<double> knots{to_t(I.lo)};
  auto features = feature_points(spec);
  std::sort(features.begin(), features.end());
  for (double f : features)
    if (f > I.lo && f < I.hi) knots.push_back(to_t(f));
  knots.push_back(to_t(I.hi));

  std::vector<double> xs;
  if (I.length() == 0.0) {
    xs = {I.lo};
  } else if (spec.kind == EnsembleKind::Trig) {
    expected_ = I.length() * intensity(id, 0.0);
    const int N = std::max(32, static_cast<int>(std::ceil(density * expected_)));
    for (int k = 0; k <= N; ++k) xs.push_back(I.lo + I.length() * k / N);
  } else {
    CumulativeTable table;
    auto g = [&](double t) {
      const double x = to_x(t);
      return ang ? intensity(id, x) * (1.0 + x * x) : intensity(id, x);
    };
    table.build(g, knots, 1e-6);
    expected_ = table.total();
    const int N = std::max(32, static_cast<int>(std::ceil(density * expected_)));
    for (int k = 0; k <= N; ++k) xs.push_back(to_x(table.invert(expected_ * k / N)));
  }
  xs.front() = I.lo;
  xs.back() = I.hi;
  // exact special points as nodes: integer-coefficient Kac samples vanish at +-1
  for (double f : features)
    if (f > I.lo && f < I.hi && (f == 0.0 || std::fabs(f) == 1.0)) xs.push_back(f);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  nodes_ = std::move(xs);
}

namespace {

struct Node {
  double x;
  double f;
  double d;
};

class Scanner {
 public:
  Scanner(const PolySample& p, const ScanPlan& plan, const ScanOptions& opt)
      : p_(p), ev_(plan.evaluator()), opt_(opt) {
    const Interval& I = plan.interval();
    tol_ = opt.tol > 0 ? opt.tol : 1e-12 * std::max(1.0, I.length());
  }

  RootCount run(const std::vector<double>& xs) {
    std::vector<Node> nodes;
    nodes.reserve(xs.size());
    for (double x : xs) {
      const ValueSlope v = ev_.working(p_, x);
      nodes.push_back({x, v.f, v.df});
      scale_ = std::max(scale_, std::fabs(v.f));
    }
    if (scale_ == 0.0) scale_ = 1.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Node& a = nodes[k];
      if (a.f == 0.0) add_root(a.x);
      if (k + 1 == nodes.size()) break;
      const Node& b = nodes[k + 1];
      cell(a, b, right_sign(a), left_sign(b), 0);
    }
    RootCount rc;
    rc.count = count_;
    rc.certification = Certification::ScanRefined;
    rc.budget_exceeded = exhausted_;
    rc.nodes = spent_;
    if (roots_.size() >= 2) {
      double g = INFINITY;
      for (std::size_t i = 1; i < roots_.size(); ++i) g = std::min(g, roots_[i] - roots_[i - 1]);
      rc.min_gap = g;
    }
    if (opt_.keep_roots) rc.roots = std::move(roots_);
    return rc;
  }

 private:
  Node eval(double x) {
    ++spent_;
    if (spent_ > opt_.node_budget) exhausted_ = true;
    const ValueSlope v = ev_.working(p_, x);
    return {x, v.f, v.df};
  }

  // Sign of F just to the right (dir = +1) or left (dir = -1) of a node.
  int side_sign(const Node& n, int dir) {
    if (n.f != 0.0) return sgn(n.f);
    if (n.d != 0.0) return dir * sgn(n.d);
    if (p_.spec.kind == EnsembleKind::Kac && std::fabs(n.x) <= 1.0) {
      const auto d = ev_.derivatives(p_, n.x, std::min(p_.degree(), 64));
      for (std::size_t k = 2; k < d.size(); ++k)
        if (d[k] != 0.0) return ((k % 2 == 1) ? dir : 1) * sgn(d[k]);
    }
    const double h = 1e-9 * std::max(1.0, std::fabs(n.x));
    return sgn(ev_.working(p_, n.x + dir * h).f);
  }
  int right_sign(const Node& n) { return side_sign(n, +1); }
  int left_sign(const Node& n) { return side_sign(n, -1); }

  // Critical points of the cubic Hermite interpolant on [a, b], as fractions.
  static int hermite_critical(const Node& a, const Node& b, double t[2]) {
    const double h = b.x - a.x;
    const double A = 6.0 * a.f + 3.0 * h * a.d - 6.0 * b.f + 3.0 * h * b.d;
    const double B = -6.0 * a.f - 4.0 * h * a.d + 6.0 * b.f - 2.0 * h * b.d;
    const double C = h * a.d;
    int k = 0;
    if (std::fabs(A) < 1e-14 * (std::fabs(B) + std::fabs(C))) {
      if (B != 0.0) {
        const double r = -C / B;
        if (r > 0.0 && r < 1.0) t[k++] = r;
      }
      return k;
    }
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return 0;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (B + (B >= 0 ? sq : -sq));
    double r1 = q / A, r2 = q != 0.0 ? C / q : r1;
    if (r1 > r2) std::swap(r1, r2);
    if (r1 > 0.0 && r1 < 1.0) t[k++] = r1;
    if (r2 > 0.0 && r2 < 1.0 && r2 != r1) t[k++] = r2;
    return k;
  }

  static double hermite_value(const Node& a, const Node& b, double t) {
    const double h = b.x - a.x;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * a.f + (t3 - 2 * t2 + t) * h * a.d + (-2 * t3 + 3 * t2) * b.f +
           (t3 - t2) * h * b.d;
  }

  double split_point(const Node& a, const Node& b, int s, bool minimum) {
    double t[2];
    const int k = hermite_critical(a, b, t);
    double best = 0.5;
    if (k > 0) {
      best = t[0];
      if (minimum && k == 2 && s * hermite_value(a, b, t[1]) < s * hermite_value(a, b, t[0]))
        best = t[1];
    }
    best = std::clamp(best, 0.02, 0.98);
    return a.x + best * (b.x - a.x);
  }

  void cell(const Node& a, const Node& b, int sa, int sb, int depth) {
    if (!(b.x > a.x)) return;
    if (sa != sb) {
      const bool monotone = sb * a.d >= 0.0 && sb * b.d >= 0.0;
      if (monotone || depth >= opt_.max_depth || exhausted_) {
        add_root(refine(a, b, sa));
        return;
      }
      const Node c = eval(split_point(a, b, sb, false));
      if (c.f == 0.0) add_root(c.x);
      cell(a, c, sa, left_sign(c), depth + 1);
      cell(c, b, right_sign(c), sb, depth + 1);
      return;
    }
    const int s = sa;
    if (!(s * a.d < 0.0 && s * b.d > 0.0)) return;
    if (depth >= opt_.max_depth || exhausted_) return;
    const Node c = eval(split_point(a, b, s, true));
    if (c.f == 0.0 || (std::fabs(c.f) <= 1e-12 * scale_ && sgn(c.f) == s)) {
      add_root(c.x);  // tangential contact
      return;
    }
    if (sgn(c.f) != s) {
      cell(a, c, sa, sgn(c.f), depth + 1);
      cell(c, b, sgn(c.f), sb, depth + 1);
      return;
    }
    if (std::fabs(c.d) * (b.x - a.x) <= 1e-3 * std::fabs(c.f)) return;
    cell(a, c, sa, s, depth + 1);
    cell(c, b, s, sb, depth + 1);
  }

  // Safeguarded Newton on a bracket with F just right of a having sign sa.
  double refine(Node a, Node b, int sa) {
    double lo = a.x, hi = b.x;
    if (sa > 0) std::swap(lo, hi);  // F(lo side) < 0
    double x = 0.5 * (a.x + b.x);
    double dx_old = std::fabs(b.x - a.x);
    double dx = dx_old;
    for (int it = 0; it < 200; ++it) {
      const ValueSlope v = ev_.working(p_, x);
      ++spent_;
      if (v.f == 0.0) return x;
      if (v.f < 0.0) lo = x;
      else hi = x;
      const bool bisect = ((x - hi) * v.df - v.f) * ((x - lo) * v.df - v.f) > 0.0 ||
                          std::fabs(2.0 * v.f) > std::fabs(dx_old * v.df);
      dx_old = dx;
      if (bisect) {
        dx = 0.5 * (hi - lo);
        x = lo + dx;
      } else {
        dx = v.f / v.df;
        x -= dx;
      }
      if (std::fabs(hi - lo) < tol_ || std::fabs(dx) < 0.5 * tol_) break;
    }
    return x;
  }

  void add_root(double x) {
    ++count_;
    roots_.push_back(x);
  }

  const PolySample& p_;
  const Evaluator& ev_;
  ScanOptions opt_;
  double tol_ = 0.0;
  double scale_ = 0.0;
  int count_ = 0;
  std::vector<double> roots_;
  std::size_t spent_ = 0;
  bool exhausted_ = false;
};

}  // namespace

RootCount count_roots_scan(const PolySample& p, const ScanPlan& plan, const ScanOptions& opt) {
  if (p.spec.kind != plan.evaluator().spec().kind || p.degree() != plan.evaluator().spec().degree)
    throw std::invalid_argument("sample does not match the scan plan");
  const Interval& I = plan.interval();
  if (opt.tol != 0.0 && opt.tol < 1e-13 * I.length())
    throw std::invalid_argument("tolerance below 1e-13 |I|");
  Scanner s(p, plan, opt);
  return s.run(plan.nodes());
}

RootCount count_roots_scan(const PolySample& p, const Interval& I, double density, double tol) {
  ScanPlan plan(p.spec, I, density);
  ScanOptions opt;
  opt.density = density;
  opt.tol = tol;
  return count_roots_scan(p, plan, opt);
}

std::vector<double> find_roots(const PolySample& p, const Interval& I, double tol) {
  ScanPlan plan(p.spec, I);
  ScanOptions opt;
  opt.tol = tol;
  opt.keep_roots = true;
  RootCount rc = count_roots_scan(p, plan, opt);
  return rc.roots.value_or(std::vector<double>{});
}

}  // namespace randroots
