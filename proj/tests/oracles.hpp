#pragma once

// Independent brute-force references used only by the tests. None of these
// call into the closed-form counting, merging or quadrature code.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "hweyl/quotient.hpp"
#include "hweyl/rational.hpp"

namespace oracle {

using hweyl::BigInt;
using hweyl::Rational;

// Pascal-free multiplicative binomial, exact.
inline BigInt choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= BigInt(n - k + i);
    r /= BigInt(i);
  }
  return r;
}

inline BigInt ipow(std::int64_t base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= BigInt(base);
  return r;
}

struct TypeATerm {
  std::int64_t n;
  std::int64_t j;
  Rational value;  // units of pi/(2c)
  BigInt multiplicity;
};

// Every positive type (a) eigenvalue <= x by a plain double loop over (n, j).
inline std::vector<TypeATerm> type_a_terms(int d, const BigInt& L, const Rational& alpha, const Rational& x) {
  std::vector<TypeATerm> out;
  for (int sign : {+1, -1}) {
    const Rational shift = Rational(d) - sign * alpha;
    const Rational slope = shift > 0 ? shift : Rational(2);
    for (std::int64_t n = 1; Rational(n * slope) <= x; ++n) {
      for (std::int64_t j = 0;; ++j) {
        Rational v = Rational(n) * (Rational(d + 2 * j) - sign * alpha);
        if (v > x) break;
        if (v == 0) continue;
        out.push_back({sign * n, j, v, ipow(n, d) * L * choose(j + d - 1, d - 1)});
      }
    }
  }
  return out;
}

inline BigInt count_type_a(int d, const BigInt& L, const Rational& alpha, const Rational& x) {
  BigInt total = 0;
  for (const auto& t : type_a_terms(d, L, alpha, x)) total += t.multiplicity;
  return total;
}

// Lattice points xi = (k_i e_i) of the dual with 0 < c |xi|^2 <= x, by
// scanning the full bounding box and testing each point exactly.
inline std::map<Rational, std::uint64_t> type_b_norms(const std::vector<Rational>& dual_diag, const Rational& c,
                                                      const Rational& x) {
  const std::size_t m = dual_diag.size();
  std::vector<std::int64_t> K(m);
  for (std::size_t i = 0; i < m; ++i) {
    double bound = std::sqrt(hweyl::to_double(x / (c * dual_diag[i] * dual_diag[i])));
    K[i] = static_cast<std::int64_t>(bound) + 1;
  }
  std::map<Rational, std::uint64_t> norms;
  std::vector<std::int64_t> k(m);
  for (std::size_t i = 0; i < m; ++i) k[i] = -K[i];
  while (true) {
    Rational norm = 0;
    for (std::size_t i = 0; i < m; ++i) norm += Rational(k[i] * k[i]) * dual_diag[i] * dual_diag[i];
    if (norm > 0 && c * norm <= x) ++norms[norm];
    std::size_t i = 0;
    while (i < m && k[i] == K[i]) k[i] = -K[i], ++i;
    if (i == m) break;
    ++k[i];
  }
  return norms;
}

inline std::uint64_t count_type_b(const std::vector<Rational>& dual_diag, const Rational& c, const Rational& x) {
  std::uint64_t total = 0;
  for (const auto& [norm, count] : type_b_norms(dual_diag, c, x)) total += count;
  return total;
}

// Composite trapezoid rule on [a, b] with `nodes` points.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, long nodes) {
  const double h = (b - a) / static_cast<double>(nodes - 1);
  double s = 0.5 * (f(a) + f(b));
  for (long i = 1; i + 1 < nodes; ++i) s += f(a + h * static_cast<double>(i));
  return s * h;
}

// (x / sinh x)^p e^{-r x}, written independently of the library integrand.
inline double sinh_kernel(int p, double r, double x) {
  const double base = x == 0.0 ? 1.0 : x / std::sinh(x);
  return std::pow(base, p) * std::exp(-r * x);
}

}  // namespace oracle
