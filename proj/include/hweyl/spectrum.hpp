#pragma once

// Spectrum of L_alpha = L_0 + i alpha T on a compact Heisenberg quotient.
//
// Two families of eigenvalues, both measured here in units of u = pi / (2c):
//
//   type (a)  |n| (d + 2j - alpha sgn n),  n != 0, j >= 0,
//             multiplicity |n|^d L binom(j + d - 1, d - 1)
//   type (b)  c |xi|^2,  xi in the dual of the projected lattice,
//             i.e. (pi/2)|xi|^2 in absolute units
//
// With alpha and c rational every eigenvalue is an exact rational in these
// units, so coinciding eigenvalues are detected and merged exactly.
// Zero eigenvalues are never counted.

#include <cstdint>
#include <variant>
#include <vector>

#include "hweyl/quotient.hpp"
#include "hweyl/rational.hpp"

namespace hweyl {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// u = pi / (2c).
double spectral_unit(const Rational& c);

// A counting threshold stored as X = lambda / u, the threshold in units of u.
//
// Thresholds built from an absolute (floating) lambda carry X = 2 c lambda / pi
// as a 256-bit rational approximation of an irrational number, so an exact tie
// with a rational eigenvalue cannot occur. Thresholds built in units of u are
// exact and ties count as "<=".
class Threshold {
 public:
  static Threshold absolute(double lambda, const QuotientGeometry& q);
  static Threshold in_units(const Rational& x, const QuotientGeometry& q);

  const Rational& units() const { return x_; }
  double absolute_value() const { return lambda_; }
  bool exact() const { return exact_; }

  // floor(k * X), exactly.
  BigInt floor_times(const BigInt& k) const;

 private:
  Threshold(Rational x, double lambda, bool exact) : x_(std::move(x)), lambda_(lambda), exact_(exact) {}

  Rational x_;
  double lambda_;
  bool exact_;
};

struct CountOptions {
  // Cap on enumerated lattice points, n-shells and spectral sources.
  std::uint64_t budget = kDefaultBudget;
};

enum class EigenKind { TypeA, TypeB, Mixed };

struct TypeASource {
  std::int64_t n;
  std::int64_t j;
  BigInt multiplicity;
};

struct TypeBSource {
  Rational norm_sq;
  BigInt multiplicity;  // number of dual lattice points of this norm
};

using SpectralSource = std::variant<TypeASource, TypeBSource>;

struct EigenvalueRecord {
  EigenKind kind;
  Rational exact_value;  // units of pi / (2c)
  double float_value;    // absolute
  std::vector<SpectralSource> sources;
  BigInt multiplicity;
};

struct SpectralCount {
  double lambda;  // absolute threshold
  BigInt n_a;
  BigInt n_b;
  BigInt n_total;
  double normalized_ratio;  // n_total / lambda^(d+1)
};

// Throws ValidationError unless -d <= alpha <= d.
void validate_alpha(int d, const Rational& alpha);

Rational type_a_eigenvalue(const QuotientGeometry& q, const Rational& alpha, std::int64_t n, std::int64_t j);
BigInt type_a_multiplicity(const QuotientGeometry& q, std::int64_t n, std::int64_t j);

// sum_{j=0}^{J} binom(j + d - 1, d - 1) = binom(J + d, d).
BigInt cumulative_multiplicity(int d, std::int64_t J);

BigInt count_type_a(const QuotientGeometry& q, const Rational& alpha, const Threshold& lambda,
                    const CountOptions& opts = {});
BigInt count_type_b(const QuotientGeometry& q, const Threshold& lambda, const CountOptions& opts = {});
SpectralCount count_total(const QuotientGeometry& q, const Rational& alpha, const Threshold& lambda,
                          const CountOptions& opts = {});

// Every positive eigenvalue <= lambda_max, merged by exact value, ascending.
std::vector<EigenvalueRecord> enumerate_spectrum(const QuotientGeometry& q, const Rational& alpha,
                                                 const Threshold& lambda_max, const CountOptions& opts = {});

// #{k in Z^m : sum_i weights[i] k_i^2 <= bound}, origin included.
std::uint64_t count_ellipsoid_points(const std::vector<std::uint64_t>& weights, std::uint64_t bound);

// Single-threaded references for the OpenMP kernels above. Same closed forms,
// plain loops; kept for cross-checking and benchmarking.
namespace serial {

BigInt count_type_a(const QuotientGeometry& q, const Rational& alpha, const Threshold& lambda,
                    const CountOptions& opts = {});
BigInt count_type_b(const QuotientGeometry& q, const Threshold& lambda, const CountOptions& opts = {});
std::uint64_t count_ellipsoid_points(const std::vector<std::uint64_t>& weights, std::uint64_t bound);

}  // namespace serial

}  // namespace hweyl
