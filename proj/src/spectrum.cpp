#include "hweyl/spectrum.hpp"

#include <mpfr.h>
#include <omp.h>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "hweyl/errors.hpp"

namespace hweyl {

namespace {

constexpr mpfr_prec_t kThresholdBits = 256;

class MpfrValue {
 public:
  MpfrValue() { mpfr_init2(v_, kThresholdBits); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;

  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

std::int64_t to_int64(const BigInt& z, const char* what, std::uint64_t budget) {
  if (!z.fits_slong_p()) throw ResourceError(std::string(what) + " exceeds 64-bit range", budget);
  return z.get_si();
}

std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// One sign branch of the type (a) family. In units of u the eigenvalue is
// n (A + 2 b j) / b with n = |n| >= 1, where b is the denominator of alpha and
// A = b d - sgn(n) a. Scaling by b turns "eigenvalue <= X" into the integer
// test n (A + 2 b j) <= F with F = floor(b X).
struct TypeABranch {
  int sign;
  std::int64_t F;
  std::int64_t A;
  std::int64_t two_b;
  std::int64_t n_max;
  bool zero_mode;  // A == 0: the j = 0 eigenvalue is zero and skipped

  // Largest admissible j for this n, or -1 if none.
  std::int64_t j_max(std::int64_t n) const {
    std::int64_t qn = F / n;
    if (qn < A) return -1;
    std::int64_t J = (qn - A) / two_b;
    if (zero_mode && J < 1) return -1;
    return J;
  }
};

std::array<TypeABranch, 2> plan_type_a(const QuotientGeometry& q, const Rational& alpha, const Threshold& lambda,
                                       const CountOptions& opts) {
  validate_alpha(q.d(), alpha);
  const BigInt& a = alpha.get_num();
  const BigInt& b = alpha.get_den();
  const std::int64_t F = to_int64(lambda.floor_times(b), "type (a) threshold", opts.budget);
  const std::int64_t two_b = to_int64(BigInt(2 * b), "alpha denominator", opts.budget);

  std::array<TypeABranch, 2> branches{};
  const std::array<int, 2> signs{+1, -1};
  for (std::size_t i = 0; i < 2; ++i) {
    BigInt A_big = b * q.d() - signs[i] * a;
    TypeABranch br{signs[i], F, 0, two_b, 0, A_big == 0};
    if (A_big > F) {
      br.A = 0;
      br.n_max = 0;
      branches[i] = br;
      continue;
    }
    br.A = A_big.get_si();
    br.n_max = br.zero_mode ? F / two_b : F / br.A;
    if (static_cast<std::uint64_t>(br.n_max) > opts.budget) {
      throw ResourceError("type (a) enumeration needs " + std::to_string(br.n_max) + " n-shells", opts.budget);
    }
    branches[i] = br;
  }
  return branches;
}

// n^d (binom(J + d, d) - zero_mode): all j <= J of one (n, sign) pair.
void add_shell(BigInt& acc, BigInt& scratch, BigInt& binom, const TypeABranch& br, std::int64_t n, int d) {
  std::int64_t J = br.j_max(n);
  if (J < 0) return;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(J + d), static_cast<unsigned long>(d));
  if (br.zero_mode) binom -= 1;
  mpz_ui_pow_ui(scratch.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(d));
  scratch *= binom;
  acc += scratch;
}

// Integer form of the type (b) test c |xi|^2 <= X. Every xi in the dual
// lattice has |xi|^2 = S / Q with S = sum_i weights[i] k_i^2, k in Z^(2d).
struct EllipsoidPlan {
  std::vector<std::uint64_t> weights;
  std::uint64_t bound;
  BigInt Q;
};

EllipsoidPlan plan_type_b(const QuotientGeometry& q, const Threshold& lambda, const CountOptions& opts) {
  const DiagonalLattice dual = dual_lattice(projected_lattice(q));
  BigInt Q = 1;
  for (const auto& e : dual.diag) {
    BigInt den_sq = e.get_den() * e.get_den();
    mpz_lcm(Q.get_mpz_t(), Q.get_mpz_t(), den_sq.get_mpz_t());
  }
  EllipsoidPlan plan{{}, 0, Q};
  double log_weight_product = 0.0;
  for (const auto& e : dual.diag) {
    BigInt w = e.get_num() * e.get_num() * (Q / (e.get_den() * e.get_den()));
    if (!w.fits_ulong_p()) throw ResourceError("dual lattice weight exceeds 64-bit range", opts.budget);
    plan.weights.push_back(w.get_ui());
    log_weight_product += std::log(w.get_d());
  }
  // p S <= r Q X  <=>  S <= floor(floor(r Q X) / p), with c = p / r.
  BigInt B = lambda.floor_times(BigInt(q.c().get_den() * Q));
  mpz_fdiv_q(B.get_mpz_t(), B.get_mpz_t(), q.c().get_num_mpz_t());

  // Ball-volume estimate of the point count, checked before any enumeration.
  const double m = static_cast<double>(plan.weights.size());
  double log_estimate = (m / 2.0) * std::log(std::numbers::pi) - std::lgamma(m / 2.0 + 1.0) +
                        (m / 2.0) * std::log(std::max(B.get_d(), 1.0)) - 0.5 * log_weight_product;
  if (log_estimate > std::log(static_cast<double>(opts.budget))) {
    throw ResourceError("type (b) lattice enumeration needs about " +
                            std::to_string(static_cast<unsigned long long>(std::exp(std::min(log_estimate, 60.0)))) +
                            " points",
                        opts.budget);
  }
  if (!B.fits_slong_p()) throw ResourceError("type (b) norm bound exceeds 64-bit range", opts.budget);
  plan.bound = B.get_ui();
  return plan;
}

std::uint64_t count_rec(const std::uint64_t* w, std::size_t m, std::uint64_t bound) {
  const std::uint64_t K = isqrt(bound / w[0]);
  if (m == 1) return 2 * K + 1;
  std::uint64_t total = count_rec(w + 1, m - 1, bound);
  for (std::uint64_t k = 1; k <= K; ++k) total += 2 * count_rec(w + 1, m - 1, bound - w[0] * k * k);
  return total;
}

void enumerate_rec(const std::uint64_t* w, std::size_t m, std::uint64_t bound, std::uint64_t partial,
                   std::uint64_t weight, std::map<std::uint64_t, std::uint64_t>& norms) {
  const std::uint64_t K = isqrt(bound / w[0]);
  for (std::uint64_t k = 0; k <= K; ++k) {
    const std::uint64_t s = w[0] * k * k;
    const std::uint64_t mult = k == 0 ? weight : 2 * weight;
    if (m == 1) {
      norms[partial + s] += mult;
    } else {
      enumerate_rec(w + 1, m - 1, bound - s, partial + s, mult, norms);
    }
  }
}

void check_point_count(std::uint64_t points, const CountOptions& opts) {
  if (points > opts.budget) {
    throw ResourceError("type (b) enumeration found " + std::to_string(points) + " points", opts.budget);
  }
}

}  // namespace

double spectral_unit(const Rational& c) { return std::numbers::pi / (2.0 * to_double(c)); }

Threshold Threshold::absolute(double lambda, const QuotientGeometry& q) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("threshold lambda must be positive and finite, got " + format_double(lambda));
  }
  MpfrValue x;
  MpfrValue pi;
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_set_d(x.get(), lambda, MPFR_RNDN);
  Rational two_c = 2 * q.c();
  mpfr_mul_q(x.get(), x.get(), two_c.get_mpq_t(), MPFR_RNDN);
  mpfr_div(x.get(), x.get(), pi.get(), MPFR_RNDN);
  Rational units;
  mpfr_get_q(units.get_mpq_t(), x.get());
  units.canonicalize();
  return Threshold(std::move(units), lambda, false);
}

Threshold Threshold::in_units(const Rational& x, const QuotientGeometry& q) {
  if (x <= 0) throw ValidationError("threshold must be positive, got " + to_string(x));
  return Threshold(x, to_double(x) * spectral_unit(q.c()), true);
}

BigInt Threshold::floor_times(const BigInt& k) const { return floor(Rational(x_ * k)); }

void validate_alpha(int d, const Rational& alpha) {
  if (alpha < -d || alpha > d) {
    throw ValidationError("alpha = " + to_string(alpha) + " outside [-" + std::to_string(d) + ", " +
                          std::to_string(d) + "]");
  }
}

Rational type_a_eigenvalue(const QuotientGeometry& q, const Rational& alpha, std::int64_t n, std::int64_t j) {
  validate_alpha(q.d(), alpha);
  if (n == 0) throw ValidationError("type (a) index n must be nonzero");
  if (j < 0) throw ValidationError("type (a) index j must be nonnegative");
  const long abs_n = n > 0 ? static_cast<long>(n) : -static_cast<long>(n);
  Rational v = Rational(q.d() + 2 * static_cast<long>(j)) - (n > 0 ? alpha : Rational(-alpha));
  v *= abs_n;
  return v;
}

BigInt type_a_multiplicity(const QuotientGeometry& q, std::int64_t n, std::int64_t j) {
  if (n == 0) throw ValidationError("type (a) index n must be nonzero");
  if (j < 0) throw ValidationError("type (a) index j must be nonnegative");
  const auto abs_n = static_cast<unsigned long>(n > 0 ? n : -n);
  BigInt m;
  mpz_ui_pow_ui(m.get_mpz_t(), abs_n, static_cast<unsigned long>(q.d()));
  return m * q.L() * binomial(static_cast<std::uint64_t>(j + q.d() - 1), static_cast<std::uint64_t>(q.d() - 1));
}

BigInt cumulative_multiplicity(int d, std::int64_t J) {
  if (d < 1) throw ValidationError("d must be >= 1");
  if (J < 0) return BigInt(0);
  return binomial(static_cast<std::uint64_t>(J + d), static_cast<std::uint64_t>(d));
}

BigInt count_type_a(const QuotientGeometry& q, const Rational& alpha, const Threshold& lambda,
                    const CountOptions& opts) {
  const auto branches = plan_type_a(q, alpha, lambda, opts);
  const int d = q.d();
  BigInt total = 0;
  for (const auto& br : branches) {
    if (br.n_max == 0) continue;
#pragma omp parallel
    {
      BigInt local = 0, scratch, binom;
#pragma omp for schedule(dynamic, 256) nowait
      for (std::int64_t n = 1; n <= br.n_max; ++n) add_shell(local, scratch, binom, br, n, d);
#pragma omp critical(hweyl_count_type_a)
      total += local;
    }
  }
  return total * q.L();
}

std::uint64_t count_ellipsoid_points(const std::vector<std::uint64_t>& weights, std::uint64_t bound) {
  const std::size_t m = weights.size();
  if (m == 0) return 1;
  if (m == 1) return count_rec(weights.data(), 1, bound);
  const auto K = static_cast<std::int64_t>(isqrt(bound / weights[0]));
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
  for (std::int64_t k = 0; k <= K; ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    const std::uint64_t inner = count_rec(weights.data() + 1, m - 1, bound - weights[0] * uk * uk);
    total += k == 0 ? inner : 2 * inner;
  }
  return total;
}

BigInt count_type_b(const QuotientGeometry& q, const Threshold& lambda, const CountOptions& opts) {
  const EllipsoidPlan plan = plan_type_b(q, lambda, opts);
  const std::uint64_t points = count_ellipsoid_points(plan.weights, plan.bound) - 1;
  check_point_count(points, opts);
  return BigInt(static_cast<unsigned long>(points));
}

SpectralCount count_total(const QuotientGeometry& q, const Rational& alpha, const Threshold& lambda,
                          const CountOptions& opts) {
  SpectralCount c;
  c.lambda = lambda.absolute_value();
  c.n_a = count_type_a(q, alpha, lambda, opts);
  c.n_b = count_type_b(q, lambda, opts);
  c.n_total = c.n_a + c.n_b;
  c.normalized_ratio = c.n_total.get_d() / std::pow(c.lambda, q.d() + 1);
  return c;
}

std::vector<EigenvalueRecord> enumerate_spectrum(const QuotientGeometry& q, const Rational& alpha,
                                                 const Threshold& lambda_max, const CountOptions& opts) {
  const auto branches = plan_type_a(q, alpha, lambda_max, opts);
  const EllipsoidPlan plan = plan_type_b(q, lambda_max, opts);
  const BigInt& b = alpha.get_den();

  std::map<Rational, EigenvalueRecord> merged;
  auto record_at = [&](const Rational& value, EigenKind kind) -> EigenvalueRecord& {
    auto [it, inserted] = merged.try_emplace(value);
    if (inserted) {
      it->second.kind = kind;
      it->second.exact_value = value;
      it->second.multiplicity = 0;
    } else if (it->second.kind != kind) {
      it->second.kind = EigenKind::Mixed;
    }
    return it->second;
  };

  std::uint64_t sources = 0;
  for (const auto& br : branches) {
    for (std::int64_t n = 1; n <= br.n_max; ++n) {
      const std::int64_t J = br.j_max(n);
      if (J < 0) continue;
      for (std::int64_t j = br.zero_mode ? 1 : 0; j <= J; ++j) {
        if (++sources > opts.budget) throw ResourceError("spectrum enumeration exceeds source cap", opts.budget);
        Rational value(BigInt(n) * (br.A + br.two_b * j), b);
        value.canonicalize();
        BigInt mult = type_a_multiplicity(q, n, j);
        auto& rec = record_at(value, EigenKind::TypeA);
        rec.multiplicity += mult;
        rec.sources.emplace_back(TypeASource{br.sign * n, j, std::move(mult)});
      }
    }
  }

  std::map<std::uint64_t, std::uint64_t> norms;
  enumerate_rec(plan.weights.data(), plan.weights.size(), plan.bound, 0, 1, norms);
  std::uint64_t points = 0;
  for (const auto& [s, count] : norms) {
    if (s == 0) continue;
    points += count;
    Rational norm_sq(BigInt(static_cast<unsigned long>(s)), plan.Q);
    norm_sq.canonicalize();
    Rational value = q.c() * norm_sq;
    BigInt mult(static_cast<unsigned long>(count));
    auto& rec = record_at(value, EigenKind::TypeB);
    rec.multiplicity += mult;
    rec.sources.emplace_back(TypeBSource{std::move(norm_sq), std::move(mult)});
  }
  check_point_count(points, opts);

  const double u = spectral_unit(q.c());
  std::vector<EigenvalueRecord> out;
  out.reserve(merged.size());
  for (auto& [value, rec] : merged) {
    rec.float_value = to_double(value) * u;
    out.push_back(std::move(rec));
  }
  return out;
}

namespace serial {

BigInt count_type_a(const QuotientGeometry& q, const Rational& alpha, const Threshold& lambda,
                    const CountOptions& opts) {
  const auto branches = plan_type_a(q, alpha, lambda, opts);
  BigInt total = 0, scratch, binom;
  for (const auto& br : branches) {
    for (std::int64_t n = 1; n <= br.n_max; ++n) add_shell(total, scratch, binom, br, n, q.d());
  }
  return total * q.L();
}

std::uint64_t count_ellipsoid_points(const std::vector<std::uint64_t>& weights, std::uint64_t bound) {
  if (weights.empty()) return 1;
  return count_rec(weights.data(), weights.size(), bound);
}

BigInt count_type_b(const QuotientGeometry& q, const Threshold& lambda, const CountOptions& opts) {
  const EllipsoidPlan plan = plan_type_b(q, lambda, opts);
  const std::uint64_t points = serial::count_ellipsoid_points(plan.weights, plan.bound) - 1;
  check_point_count(points, opts);
  return BigInt(static_cast<unsigned long>(points));
}

}  // namespace serial

}  // namespace hweyl
