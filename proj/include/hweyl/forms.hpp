#pragma once

// Kohn Laplacian on (p,q)-forms. On (0,q)-forms box_b acts diagonally as
// L_{d-2q} on each of the binom(d,q) coefficient functions, and the p-degree
// contributes another binom(d,p) copies.

#include "hweyl/quotient.hpp"
#include "hweyl/spectrum.hpp"

namespace hweyl {

class FormDegree {
 public:
  // Requires d >= 2, 0 <= p <= d, 0 < q < d.
  FormDegree(int d, int p, int q);

  int d() const { return d_; }
  int p() const { return p_; }
  int q() const { return q_; }

  // d - 2q; always strictly inside (-d, d).
  Rational alpha() const { return Rational(d_ - 2 * q_); }

  // binom(d,p) binom(d,q).
  BigInt factor() const;

 private:
  int d_;
  int p_;
  int q_;
};

SpectralCount box_b_count(const QuotientGeometry& geometry, const FormDegree& deg, const Threshold& lambda,
                          const CountOptions& opts = {});

double box_b_weyl_target(int d, const FormDegree& deg, double volume, double tol = 1e-10);

}  // namespace hweyl
