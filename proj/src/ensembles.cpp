#include "randroots/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace randroots {

OrthoBasis OrthoBasis::jacobi(double alpha, double beta) {
  if (!(alpha > -1.0 && beta > -1.0))
    throw std::invalid_argument("Jacobi parameters must exceed -1");
  return {OrthoFamily::Jacobi, alpha, beta};
}

double OrthoBasis::rec_b(int j) const {
  const double s = alpha + beta;
  if (j == 0) return (beta - alpha) / (s + 2.0);
  const double t = 2.0 * j + s;
  return (beta * beta - alpha * alpha) / (t * (t + 2.0));
}

double OrthoBasis::rec_a(int j) const {
  const double s = alpha + beta;
  if (j == 1) {
    // the general formula has a removable 0/0 when alpha + beta = -1
    return std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) * (2.0 + s) * (3.0 + s)));
  }
  const double t = 2.0 * j + s;
  const double num = 4.0 * j * (j + alpha) * (j + beta) * (j + s);
  return std::sqrt(num / (t * t * (t + 1.0) * (t - 1.0)));
}

double OrthoBasis::p0() const {
  const double log_mu0 = (alpha + beta + 1.0) * std::numbers::ln2 + std::lgamma(alpha + 1.0) +
                         std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0);
  return std::exp(-0.5 * log_mu0);
}

EnsembleSpec::EnsembleSpec(EnsembleKind k, int n, CoeffDist d, OrthoBasis b)
    : kind(k), degree(n), dist(std::move(d)), basis(b) {
  validate();
}

void EnsembleSpec::validate() const {
  if (degree < 1) throw std::invalid_argument("degree must be at least 1");
  if (kind == EnsembleKind::Orthogonal && !(basis.alpha > -1.0 && basis.beta > -1.0))
    throw std::invalid_argument("Jacobi parameters must exceed -1");
}

std::string EnsembleSpec::name() const {
  switch (kind) {
    case EnsembleKind::Kac: return "kac";
    case EnsembleKind::Trig: return "trig";
    case EnsembleKind::Elliptic: return "elliptic";
    case EnsembleKind::Weyl: return "weyl";
    case EnsembleKind::Orthogonal:
      switch (basis.family) {
        case OrthoFamily::LegendreP: return "legendre";
        case OrthoFamily::ChebyshevT: return "cheb1";
        case OrthoFamily::ChebyshevU: return "cheb2";
        case OrthoFamily::Jacobi: return "jacobi";
      }
  }
  return "?";
}

EnsembleSpec EnsembleSpec::parse(const std::string& e, int n, CoeffDist d, double ja,
                                 double jb) {
  if (e == "kac") return {EnsembleKind::Kac, n, d};
  if (e == "trig") return {EnsembleKind::Trig, n, d};
  if (e == "elliptic") return {EnsembleKind::Elliptic, n, d};
  if (e == "weyl") return {EnsembleKind::Weyl, n, d};
  if (e == "legendre") return {EnsembleKind::Orthogonal, n, d, OrthoBasis::legendre()};
  if (e == "cheb1") return {EnsembleKind::Orthogonal, n, d, OrthoBasis::chebyshev_t()};
  if (e == "cheb2") return {EnsembleKind::Orthogonal, n, d, OrthoBasis::chebyshev_u()};
  if (e == "jacobi") return {EnsembleKind::Orthogonal, n, d, OrthoBasis::jacobi(ja, jb)};
  throw std::invalid_argument("unknown ensemble '" + e + "'");
}

PolySample make_sample(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.degree);
  PolySample p;
  p.spec = spec;
  p.seed = seed;
  Stream s(seed);
  if (spec.kind == EnsembleKind::Trig) {
    p.a.assign(n + 1, 0.0);
    p.b.assign(n + 1, 0.0);
    fill_coefficients(spec.dist, s, std::span<double>(p.a).subspan(1));
    fill_coefficients(spec.dist, s, std::span<double>(p.b).subspan(1));
  } else {
    p.a.resize(n + 1);
    fill_coefficients(spec.dist, s, p.a);
  }
  return p;
}

PolySample make_sample_from(const EnsembleSpec& spec, std::vector<double> a,
                            std::vector<double> b) {
  spec.validate();
  const auto len = static_cast<std::size_t>(spec.degree) + 1;
  if (a.size() != len) throw std::invalid_argument("coefficient length must be n + 1");
  if (spec.kind == EnsembleKind::Trig) {
    if (b.empty()) b.assign(len, 0.0);
    if (b.size() != len) throw std::invalid_argument("sine coefficient length must be n + 1");
  } else if (!b.empty()) {
    throw std::invalid_argument("only Trig samples take a second coefficient sequence");
  }
  for (double v : a)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite coefficient");
  for (double v : b)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite coefficient");
  PolySample p;
  p.spec = spec;
  p.a = std::move(a);
  p.b = std::move(b);
  return p;
}

}  // namespace randroots
