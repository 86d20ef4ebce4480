#include "hweyl/quotient.hpp"

#include <string>

#include "hweyl/errors.hpp"

namespace hweyl {

Rational DiagonalLattice::covolume() const {
  Rational v = 1;
  for (const auto& e : diag) v *= e;
  return v;
}

QuotientGeometry::QuotientGeometry(int d, std::vector<std::int64_t> ell, Rational c, Rational scale)
    : d_(d), ell_(std::move(ell)), c_(std::move(c)), scale_(std::move(scale)), L_(1) {
  if (d_ < 1) throw ValidationError("d must be >= 1, got " + std::to_string(d_));
  if (static_cast<int>(ell_.size()) != d_) {
    throw ValidationError("ell must have d = " + std::to_string(d_) + " entries, got " +
                          std::to_string(ell_.size()));
  }
  for (std::size_t i = 0; i < ell_.size(); ++i) {
    if (ell_[i] <= 0) {
      throw ValidationError("ell_" + std::to_string(i + 1) + " = " + std::to_string(ell_[i]) + " is not positive");
    }
  }
  for (std::size_t i = 0; i + 1 < ell_.size(); ++i) {
    if (ell_[i + 1] % ell_[i] != 0) {
      throw ValidationError("divisibility chain broken: ell_" + std::to_string(i + 1) + " = " +
                            std::to_string(ell_[i]) + " does not divide ell_" + std::to_string(i + 2) + " = " +
                            std::to_string(ell_[i + 1]));
    }
  }
  c_.canonicalize();
  scale_.canonicalize();
  if (c_ <= 0) throw ValidationError("center parameter c must be positive, got " + to_string(c_));
  if (scale_ <= 0) throw ValidationError("lattice scale must be positive, got " + to_string(scale_));
  for (auto l : ell_) L_ *= BigInt(static_cast<long>(l));
}

Rational QuotientGeometry::volume() const {
  Rational v(L_);
  for (int i = 0; i <= d_; ++i) v *= c_;
  return v;
}

QuotientGeometry make_quotient(int d, std::vector<std::int64_t> ell, const Rational& c) {
  return QuotientGeometry(d, std::move(ell), c);
}

DiagonalLattice projected_lattice(const QuotientGeometry& q) {
  DiagonalLattice lat;
  lat.diag.reserve(2 * q.d());
  for (int i = 0; i < q.d(); ++i) lat.diag.push_back(q.scale());
  for (auto l : q.ell()) lat.diag.push_back(Rational(q.scale() * static_cast<long>(l)));
  return lat;
}

DiagonalLattice dual_lattice(const DiagonalLattice& lattice) {
  DiagonalLattice dual;
  dual.diag.reserve(lattice.dim());
  for (const auto& e : lattice.diag) {
    if (e <= 0) throw ValidationError("diagonal lattice entries must be positive");
    dual.diag.push_back(Rational(1 / e));
  }
  return dual;
}

QuotientGeometry dilate(const QuotientGeometry& q, const Rational& r) {
  if (r <= 0) throw ValidationError("dilation factor must be positive, got " + to_string(r));
  return QuotientGeometry(q.d(), q.ell(), Rational(r * r * q.c()), Rational(r * q.scale()));
}

nlohmann::json to_json(const QuotientGeometry& q) {
  nlohmann::json j;
  j["d"] = q.d();
  j["ell"] = q.ell();
  j["c"] = to_string(q.c());
  if (q.scale() != 1) j["scale"] = to_string(q.scale());
  return j;
}

QuotientGeometry quotient_from_json(const nlohmann::json& j) {
  try {
    int d = j.at("d").get<int>();
    auto ell = j.at("ell").get<std::vector<std::int64_t>>();
    Rational c = j.contains("c") ? parse_rational(j.at("c").get<std::string>()) : Rational(1);
    Rational scale = j.contains("scale") ? parse_rational(j.at("scale").get<std::string>()) : Rational(1);
    return QuotientGeometry(d, std::move(ell), c, scale);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed quotient JSON: ") + e.what());
  }
}

}  // namespace hweyl
