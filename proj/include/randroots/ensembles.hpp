#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randroots/distributions.hpp"
#include "randroots/errors.hpp"

namespace randroots {

enum class EnsembleKind { Kac, Trig, Elliptic, Weyl, Orthogonal };
enum class OrthoFamily { LegendreP, ChebyshevT, ChebyshevU, Jacobi };

// Orthonormal basis for the weight (1-x)^alpha (1+x)^beta on [-1, 1].
struct OrthoBasis {
  OrthoFamily family = OrthoFamily::LegendreP;
  double alpha = 0.0;
  double beta = 0.0;

  static OrthoBasis legendre() { return {OrthoFamily::LegendreP, 0.0, 0.0}; }
  static OrthoBasis chebyshev_t() { return {OrthoFamily::ChebyshevT, -0.5, -0.5}; }
  static OrthoBasis chebyshev_u() { return {OrthoFamily::ChebyshevU, 0.5, 0.5}; }
  static OrthoBasis jacobi(double alpha, double beta);

  // Three-term recurrence x p_j = a_{j+1} p_{j+1} + b_j p_j + a_j p_{j-1}.
  double rec_a(int j) const;  // j >= 1
  double rec_b(int j) const;  // j >= 0
  double p0() const;          // constant orthonormal polynomial

  bool operator==(const OrthoBasis&) const = default;
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Kac;
  int degree = 1;
  CoeffDist dist = CoeffDist::gaussian();
  OrthoBasis basis{};

  EnsembleSpec() = default;
  EnsembleSpec(EnsembleKind k, int n, CoeffDist d = CoeffDist::gaussian(),
               OrthoBasis b = {});

  void validate() const;
  std::string name() const;
  // kac|trig|elliptic|weyl|legendre|cheb1|cheb2|jacobi
  static EnsembleSpec parse(const std::string& ensemble, int n, CoeffDist d,
                            double jacobi_alpha = 0.0, double jacobi_beta = 0.0);
};

// One realized polynomial. For Trig, `a` holds cosine and `b` sine
// coefficients; slot 0 of both is unused (frequencies run 1..n).
struct PolySample {
  EnsembleSpec spec;
  std::vector<double> a;
  std::vector<double> b;
  std::uint64_t seed = 0;

  int degree() const { return spec.degree; }
};

PolySample make_sample(const EnsembleSpec& spec, std::uint64_t seed);

// Sample with given coefficients; lengths must match the ensemble arity.
PolySample make_sample_from(const EnsembleSpec& spec, std::vector<double> a,
                            std::vector<double> b = {});

// ---- elliptic harmonic basis change -----------------------------------

struct HarmonicCoeffs {
  int n = 0;
  std::vector<int> modes;           // l with n - l even, ascending
  std::vector<double> b;            // cosine coefficients
  std::vector<double> c;            // sine coefficients (c at l = 0 is 0)
  std::vector<double> log_weight;   // log w(l), w(l)^2 = C(n, (n-l)/2) / 2^n

  // Orthonormal basis function scale: sqrt(2) w(l) for l >= 1, w(0) for l = 0.
  double basis_scale(std::size_t k) const;
  double reconstruct(double theta) const;
};

struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
};

constexpr int kMaxHarmonicDegree = 2048;

// Row i expresses sqrt(C(n,i)) cos^i(t) sin^(n-i)(t) in the orthonormal
// basis ordered by harmonic_column(). Even n needs `allow_even`.
DenseMatrix compute_U(int n, bool allow_even = false);

// Column of U for mode l (cosine when `sine` is false).
int harmonic_column(int n, int l, bool sine);

HarmonicCoeffs elliptic_to_harmonic(int n, const std::vector<double>& a,
                                    bool allow_even = false);
HarmonicCoeffs elliptic_to_harmonic(const DenseMatrix& U, int n,
                                    const std::vector<double>& a);

// G(theta) = sum a_i sqrt(C(n,i)) cos^i sin^(n-i), summed directly.
double elliptic_angular(int n, const std::vector<double>& a, double theta);

}  // namespace randroots
