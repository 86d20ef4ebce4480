#include "hweyl/forms.hpp"

#include <cmath>
#include <string>

#include "hweyl/errors.hpp"
#include "hweyl/weyl.hpp"

namespace hweyl {

FormDegree::FormDegree(int d, int p, int q) : d_(d), p_(p), q_(q) {
  if (d < 2) throw ValidationError("(p,q)-forms need d >= 2, got d = " + std::to_string(d));
  if (p < 0 || p > d) throw ValidationError("form degree p = " + std::to_string(p) + " outside [0, d]");
  if (q <= 0 || q >= d) throw ValidationError("form degree q = " + std::to_string(q) + " outside (0, d)");
}

BigInt FormDegree::factor() const {
  return binomial(static_cast<std::uint64_t>(d_), static_cast<std::uint64_t>(p_)) *
         binomial(static_cast<std::uint64_t>(d_), static_cast<std::uint64_t>(q_));
}

SpectralCount box_b_count(const QuotientGeometry& geometry, const FormDegree& deg, const Threshold& lambda,
                          const CountOptions& opts) {
  if (deg.d() != geometry.d()) {
    throw ValidationError("form degree built for d = " + std::to_string(deg.d()) + " but quotient has d = " +
                          std::to_string(geometry.d()));
  }
  SpectralCount c = count_total(geometry, deg.alpha(), lambda, opts);
  const BigInt k = deg.factor();
  c.n_a *= k;
  c.n_b *= k;
  c.n_total *= k;
  c.normalized_ratio = c.n_total.get_d() / std::pow(c.lambda, geometry.d() + 1);
  return c;
}

double box_b_weyl_target(int d, const FormDegree& deg, double volume, double tol) {
  if (deg.d() != d) throw ValidationError("form degree dimension does not match d");
  if (!(volume > 0.0)) throw ValidationError("volume must be positive");
  return deg.factor().get_d() * weyl_constant(d, to_double(deg.alpha()), tol).value * volume;
}

}  // namespace hweyl
