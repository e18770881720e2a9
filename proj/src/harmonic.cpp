// Change of basis for elliptic polynomials in the angular variable:
// sqrt(C(n,i)) cos^i(t) sin^(n-i)(t) is expanded in cos(l t), sin(l t) with
// l = n, n-2, ... by collecting modes of the binomial product
//   cos^i sin^(n-i) = 2^-n i^-(n-i) z^-n (z^2+1)^i (z^2-1)^(n-i),  z = e^{it}.
#include <gmpxx.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "randroots/ensembles.hpp"
#include "randroots/special.hpp"

namespace randroots {

namespace {

double log_abs(const mpz_class& v) {
  long e = 0;
  const double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::numbers::ln2;
}

double log_binomial_exact(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return log_abs(b);
}

void check_degree(int n, bool allow_even) {
  if (n < 1) throw std::invalid_argument("degree must be at least 1");
  if (n > kMaxHarmonicDegree) throw std::length_error("harmonic basis change limited to n <= 2048");
  if (n % 2 == 0 && !allow_even)
    throw UnsupportedCase("even degree needs the even-n extension flag");
}

// log of the orthonormal basis scale for mode l.
double log_basis_scale(int n, int l) {
  const double lw2 = log_binomial_exact(n, (n - l) / 2) - n * std::numbers::ln2;
  return 0.5 * (l == 0 ? lw2 : lw2 + std::numbers::ln2);
}

}  // namespace

int harmonic_column(int n, int l, bool sine) {
  if (l < 0 || l > n || (n - l) % 2 != 0) throw std::invalid_argument("invalid harmonic mode");
  if (n % 2 == 1) return (l - 1) + (sine ? 1 : 0);
  if (l == 0) {
    if (sine) throw std::invalid_argument("no sine mode at l = 0");
    return 0;
  }
  return l - 1 + (sine ? 1 : 0);
}

DenseMatrix compute_U(int n, bool allow_even) {
  check_degree(n, allow_even);
  const int dim = n + 1;
  DenseMatrix U;
  U.rows = U.cols = dim;
  U.data.assign(static_cast<std::size_t>(dim) * dim, 0.0);

  std::vector<double> log_scale(dim, 0.0);
  for (int l = n % 2; l <= n; l += 2) log_scale[l] = log_basis_scale(n, l);

  // P_0(w) = (w - 1)^n
  std::vector<mpz_class> p(dim);
  for (int k = 0; k <= n; ++k) {
    mpz_bin_uiui(p[k].get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    if ((n - k) % 2 != 0) p[k] = -p[k];
  }
  std::vector<mpz_class> q(dim + 1);

  for (int i = 0; i <= n; ++i) {
    const int r = n - i;
    const double sign_base = (r % 2 == 0 ? (r / 2) % 2 : ((r - 1) / 2) % 2) == 0 ? 1.0 : -1.0;
    const double lrow = 0.5 * log_binomial_exact(n, i) - n * std::numbers::ln2;
    for (int k = (n + 1) / 2; k <= n; ++k) {
      const int l = 2 * k - n;
      if (p[k] == 0) continue;
      const bool sine = (r % 2 != 0);
      if (l == 0 && sine) continue;
      const double lv = lrow + log_abs(p[k]) + (l == 0 ? 0.0 : std::numbers::ln2) - log_scale[l];
      const double sign = sign_base * (sgn(p[k]) > 0 ? 1.0 : -1.0);
      U(i, harmonic_column(n, l, sine)) = sign * std::exp(lv);
    }
    if (i == n) break;
    // P_{i+1} = P_i (1 + w) / (w - 1), division exact
    q[0] = p[0];
    for (int k = 1; k <= n; ++k) q[k] = p[k] + p[k - 1];
    q[dim] = p[n];
    mpz_class carry = 0;
    for (int k = dim; k >= 1; --k) {
      carry += q[k];
      p[k - 1] = carry;
    }
    if (carry + q[0] != 0) throw std::logic_error("inexact division in basis change");
  }
  return U;
}

double HarmonicCoeffs::basis_scale(std::size_t k) const {
  const double s = std::exp(log_weight[k]);
  return modes[k] == 0 ? s : std::numbers::sqrt2 * s;
}

double HarmonicCoeffs::reconstruct(double theta) const {
  CompensatedSum sum;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const double lt = modes[k] * theta;
    sum.add(basis_scale(k) * (b[k] * std::cos(lt) + c[k] * std::sin(lt)));
  }
  return sum.value();
}

HarmonicCoeffs elliptic_to_harmonic(const DenseMatrix& U, int n, const std::vector<double>& a) {
  if (U.rows != n + 1 || static_cast<int>(a.size()) != n + 1)
    throw std::invalid_argument("coefficient length must be n + 1");
  HarmonicCoeffs h;
  h.n = n;
  for (int l = n % 2; l <= n; l += 2) {
    h.modes.push_back(l);
    h.log_weight.push_back(0.5 * (log_binomial_exact(n, (n - l) / 2) - n * std::numbers::ln2));
    double bl = 0.0, cl = 0.0;
    const int cc = harmonic_column(n, l, false);
    for (int i = 0; i <= n; ++i) bl += a[i] * U(i, cc);
    if (l > 0) {
      const int cs = harmonic_column(n, l, true);
      for (int i = 0; i <= n; ++i) cl += a[i] * U(i, cs);
    }
    h.b.push_back(bl);
    h.c.push_back(cl);
  }
  return h;
}

HarmonicCoeffs elliptic_to_harmonic(int n, const std::vector<double>& a, bool allow_even) {
  return elliptic_to_harmonic(compute_U(n, allow_even), n, a);
}

double elliptic_angular(int n, const std::vector<double>& a, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (static_cast<int>(a.size()) != n + 1) throw std::invalid_argument("coefficient length must be n + 1");
  CompensatedSum sum;
  for (int i = 0; i <= n; ++i) {
    const double pc = (i == 0) ? 0.0 : i * std::log(std::fabs(c));
    const double ps = (n - i == 0) ? 0.0 : (n - i) * std::log(std::fabs(s));
    const double mag = std::exp(0.5 * log_binomial(n, i) + pc + ps);
    double sgn = 1.0;
    if (c < 0 && i % 2 == 1) sgn = -sgn;
    if (s < 0 && (n - i) % 2 == 1) sgn = -sgn;
    sum.add(a[i] * sgn * mag);
  }
  return sum.value();
}

}  // namespace randroots
