#pragma once

#include <optional>
#include <string>
#include <vector>

#include "randroots/ensembles.hpp"
#include "randroots/interval.hpp"

namespace randroots {

struct KernelId {
  EnsembleKind kind = EnsembleKind::Kac;
  int n = 1;
  OrthoBasis basis{};

  KernelId() = default;
  KernelId(EnsembleKind k, int degree, OrthoBasis b = {});
  static KernelId of(const EnsembleSpec& s) { return KernelId(s.kind, s.degree, s.basis); }
};

// Correlation K(s,t)/sqrt(K(s,s) K(t,t)).
double kernel_normalized(const KernelId& id, double s, double t);

// 1 - kernel_normalized(s, t), accurate when s and t are close.
double kernel_defect(const KernelId& id, double s, double t);

// First intensity from the closed forms.
double intensity(const KernelId& id, double x);

// Same quantity through Var_w(i) / x^2 (monomial ensembles) or the
// orthonormal-basis sums; used as an independent check and near the
// removable singularities of the closed forms.
double intensity_series(const KernelId& id, double x);

// (1/pi) sqrt(d^2/dsdt log K(s,t)) at s = t = x by the symmetric stencil
// -log K(x+h, x-h) / (2h^2).
double intensity_from_kernel(const KernelId& id, double x, double h);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
};

// Integral of the intensity over [lo, hi]; infinite ends are allowed.
QuadratureResult integrate_intensity(const KernelId& id, double lo, double hi);

// Throws std::runtime_error when the error estimate exceeds 1e-6 relative.
double expected_roots(const KernelId& id, const Interval& I);
double expected_roots_full_line(const KernelId& id);

struct IntensityCurve {
  KernelId id;
  Interval range;
  std::vector<double> x;
  std::vector<double> rho;
  double quadrature_total = 0.0;
};

IntensityCurve intensity_curve(const KernelId& id, const Interval& range, int grid);

}  // namespace randroots
