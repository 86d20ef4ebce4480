#pragma once

// Compact quotients M = Gamma_ell \ H_d in normal form.
//
// A quotient is determined by the divisor chain ell_1 | ell_2 | ... | ell_d,
// the center generator c (the lattice meets the center in (0, 0, cZ)) and an
// optional lattice scale s produced by dilations. The projected lattice
// Lambda = pi(Gamma) is diagonal in polarized coordinates (p, q) -> p + iq:
//
//   Lambda = s * (Z^d x ell_1 Z x ... x ell_d Z),   vol(M) = L * c^(d+1).

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "hweyl/rational.hpp"

namespace hweyl {

// Diagonal lattice in R^dim given by the lengths of its orthogonal basis vectors.
struct DiagonalLattice {
  std::vector<Rational> diag;

  std::size_t dim() const { return diag.size(); }
  Rational covolume() const;

  bool operator==(const DiagonalLattice&) const = default;
};

class QuotientGeometry {
 public:
  // Validating constructor; see make_quotient.
  QuotientGeometry(int d, std::vector<std::int64_t> ell, Rational c, Rational scale = 1);

  int d() const { return d_; }
  const std::vector<std::int64_t>& ell() const { return ell_; }
  const Rational& c() const { return c_; }
  const Rational& scale() const { return scale_; }

  // L = ell_1 * ... * ell_d.
  const BigInt& L() const { return L_; }

  // L * c^(d+1), exact.
  Rational volume() const;

  bool operator==(const QuotientGeometry&) const = default;

 private:
  int d_;
  std::vector<std::int64_t> ell_;
  Rational c_;
  Rational scale_;
  BigInt L_;
};

QuotientGeometry make_quotient(int d, std::vector<std::int64_t> ell, const Rational& c);

// diag = scale * (1, ..., 1, ell_1, ..., ell_d).
DiagonalLattice projected_lattice(const QuotientGeometry& q);

// {xi : <xi, lambda> in Z for all lambda}; reciprocal entries for a diagonal lattice.
DiagonalLattice dual_lattice(const DiagonalLattice& lattice);

// (z, t) -> (r z, r^2 t): c -> r^2 c and Lambda -> r Lambda.
QuotientGeometry dilate(const QuotientGeometry& q, const Rational& r);

// {"d": int, "ell": [int], "c": "num/den"} plus "scale" when it is not 1.
nlohmann::json to_json(const QuotientGeometry& q);
QuotientGeometry quotient_from_json(const nlohmann::json& j);

}  // namespace hweyl
