#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

#include "randroots/rootcount.hpp"

namespace randroots {

namespace {

using Poly = std::vector<mpz_class>;  // ascending powers, no trailing zeros

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

void make_primitive(Poly& p) {
  mpz_class g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  trim(d);
  return d;
}

// lc(b)^(deg a - deg b + 1) * a mod b
Poly prem(Poly a, const Poly& b) {
  const int db = degree(b);
  const mpz_class& lc = b.back();
  int e = degree(a) - db + 1;
  while (!a.empty() && degree(a) >= db) {
    const mpz_class lead = a.back();
    const int shift = degree(a) - db;
    for (auto& c : a) c *= lc;
    for (int i = 0; i <= db; ++i) a[i + shift] -= lead * b[i];
    trim(a);
    --e;
  }
  for (; e > 0; --e)
    for (auto& c : a) c *= lc;
  return a;
}

Poly gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = prem(a, b);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_primitive(a);
  return a;
}

// exact quotient a / b
Poly divide(Poly a, const Poly& b) {
  const int db = degree(b);
  Poly q(a.size() - b.size() + 1);
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), a.back().get_mpz_t(), b.back().get_mpz_t());
    q[shift] = t;
    for (int i = 0; i <= db; ++i) a[i + shift] -= t * b[i];
    trim(a);
  }
  return q;
}

std::vector<Poly> sturm_chain(const std::vector<std::int64_t>& coeffs) {
  Poly p;
  for (auto c : coeffs) p.emplace_back(static_cast<long>(c));
  trim(p);
  if (p.empty()) throw std::invalid_argument("zero polynomial has no finite root count");
  if (degree(p) > kMaxSturmDegree) throw std::invalid_argument("degree above the Sturm limit");
  make_primitive(p);
  if (degree(p) >= 1) {
    Poly g = gcd(p, derivative(p));
    if (degree(g) > 0) p = divide(p, g);
    make_primitive(p);
  }
  std::vector<Poly> chain{p};
  if (degree(p) < 1) return chain;
  Poly d = derivative(p);
  make_primitive(d);
  chain.push_back(d);
  while (degree(chain.back()) > 0) {
    const Poly& a = chain[chain.size() - 2];
    const Poly& b = chain.back();
    Poly r = prem(a, b);
    if (r.empty()) break;
    const int e = degree(a) - degree(b) + 1;
    const bool flip = !(sgn(b.back()) < 0 && e % 2 == 1);  // -sgn(lc)^e
    make_primitive(r);
    if (flip)
      for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_at(const Poly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return sgn(acc);
}

int variations(const std::vector<Poly>& chain, const mpq_class& x) {
  int v = 0, last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_inf(const std::vector<Poly>& chain, int dir) {
  int v = 0, last = 0;
  for (const auto& p : chain) {
    int s = sgn(p.back());
    if (dir < 0 && degree(p) % 2 == 1) s = -s;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

mpq_class exact(double x) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

}  // namespace

RootCount count_roots_sturm(const std::vector<std::int64_t>& coeffs, const Interval& I) {
  const auto chain = sturm_chain(coeffs);
  RootCount rc;
  rc.certification = Certification::ExactSturm;
  rc.count = chain.size() < 2 ? 0 : variations(chain, exact(I.lo)) - variations(chain, exact(I.hi));
  return rc;
}

int count_real_roots_sturm(const std::vector<std::int64_t>& coeffs) {
  const auto chain = sturm_chain(coeffs);
  if (chain.size() < 2) return 0;
  return variations_inf(chain, -1) - variations_inf(chain, +1);
}

}  // namespace randroots
