#include "hweyl/heat.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hweyl/errors.hpp"

namespace hweyl {

namespace {

constexpr std::int64_t kBlock = 1 << 14;
constexpr std::int64_t kMaxTerms = std::int64_t{1} << 40;

// One n-series sum_{n>=1} f(n) whose consecutive-term ratio is bounded by
// ((n+1)/n)^d e^{-decay}. Once that bound drops below 1 the remainder after
// term N is at most f(N) r_N / (1 - r_N).
struct BranchSeries {
  int d;
  double decay;
  double (*term)(const BranchSeries&, std::int64_t);
  double tu;    // t * u
  double rate;  // exponent multiplier of the branch

  double ratio_bound(std::int64_t n) const {
    return std::pow(static_cast<double>(n + 1) / static_cast<double>(n), d) * std::exp(-decay);
  }
};

// n^d e^{-tu n rate} / (1 - e^{-2 tu n})^d
double interior_term(const BranchSeries& s, std::int64_t n) {
  const double x = s.tu * static_cast<double>(n);
  return std::pow(static_cast<double>(n) / -std::expm1(-2.0 * x), s.d) * std::exp(-x * s.rate);
}

// n^d e^{-tu n d} / (1 - e^{-tu n})^d
double boundary_minus_term(const BranchSeries& s, std::int64_t n) {
  const double x = s.tu * static_cast<double>(n);
  return std::pow(static_cast<double>(n) / -std::expm1(-x), s.d) * std::exp(-x * s.d);
}

// n^d ((1 - e^{-tu n})^{-d} - 1)
double boundary_plus_term(const BranchSeries& s, std::int64_t n) {
  const double x = s.tu * static_cast<double>(n);
  return std::pow(static_cast<double>(n), s.d) * std::expm1(-s.d * std::log1p(-std::exp(-x)));
}

struct SeriesSum {
  double sum = 0.0;
  double tail = 0.0;
};

// Neumaier-compensated running sum in ascending n, shared by both kernels.
class SeriesAccumulator {
 public:
  SeriesAccumulator(const BranchSeries& s, double tol) : s_(s), tol_(tol) {}

  // Returns true once the certified tail is below tol * sum.
  bool add(std::int64_t n, double f) {
    const double t = sum_ + f;
    comp_ += std::abs(sum_) >= std::abs(f) ? (sum_ - t) + f : (f - t) + sum_;
    sum_ = t;
    const double r = s_.ratio_bound(n);
    if (r < 1.0) {
      tail_ = f * r / (1.0 - r);
      if (tail_ <= tol_ * (sum_ + comp_)) return true;
    }
    return false;
  }

  SeriesSum result() const { return {sum_ + comp_, tail_}; }

 private:
  const BranchSeries& s_;
  double tol_;
  double sum_ = 0.0;
  double comp_ = 0.0;
  double tail_ = 0.0;
};

SeriesSum sum_serial(const BranchSeries& s, double tol) {
  SeriesAccumulator acc(s, tol);
  for (std::int64_t n = 1; n <= kMaxTerms; ++n) {
    if (acc.add(n, s.term(s, n))) return acc.result();
  }
  throw ResourceError("heat series did not terminate", static_cast<std::uint64_t>(kMaxTerms));
}

// Terms are evaluated in parallel a block at a time and accumulated serially
// in index order, so the result is bitwise identical to sum_serial.
SeriesSum sum_parallel(const BranchSeries& s, double tol) {
  SeriesAccumulator acc(s, tol);
  std::vector<double> block(kBlock);
  for (std::int64_t start = 1; start <= kMaxTerms; start += kBlock) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < kBlock; ++i) block[i] = s.term(s, start + i);
    for (std::int64_t i = 0; i < kBlock; ++i) {
      if (acc.add(start + i, block[i])) return acc.result();
    }
  }
  throw ResourceError("heat series did not terminate", static_cast<std::uint64_t>(kMaxTerms));
}

void validate_heat_args(const QuotientGeometry& q, double alpha, double t, double tol) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("heat time t must be positive, got " + format_double(t));
  if (t < kMinHeatTime) {
    throw ValidationError("heat time t = " + format_double(t) + " below the supported minimum " +
                          format_double(kMinHeatTime));
  }
  if (!(std::abs(alpha) <= q.d())) {
    throw ValidationError("alpha = " + format_double(alpha) + " outside [-d, d] for d = " + std::to_string(q.d()));
  }
  if (!(tol > 0.0)) throw ValidationError("heat tolerance must be positive");
}

template <class Summer>
HeatTracePoint heat_trace_with(const QuotientGeometry& q, double alpha, double t, double tol, Summer&& sum) {
  validate_heat_args(q, alpha, t, tol);
  const int d = q.d();
  const double c = to_double(q.c());
  SeriesSum minus, plus;
  if (std::abs(alpha) < d) {
    const double tu = t * std::numbers::pi / (2.0 * c);
    minus = sum(BranchSeries{d, tu * (d + alpha), interior_term, tu, d + alpha}, tol);
    plus = sum(BranchSeries{d, tu * (d - alpha), interior_term, tu, d - alpha}, tol);
  } else {
    const double tu = t * std::numbers::pi / c;
    minus = sum(BranchSeries{d, tu * d, boundary_minus_term, tu, static_cast<double>(d)}, tol);
    plus = sum(BranchSeries{d, tu, boundary_plus_term, tu, 1.0}, tol);
  }
  const double L = q.L().get_d();
  HeatTracePoint p;
  p.t = t;
  p.g = L * (minus.sum + plus.sum);
  p.scaled = std::pow(t, d + 1) * p.g;
  p.truncation_bound = L * (minus.tail + plus.tail);
  return p;
}

}  // namespace

HeatTracePoint heat_trace(const QuotientGeometry& q, double alpha, double t, double tol) {
  return heat_trace_with(q, alpha, t, tol, sum_parallel);
}

std::vector<HeatTracePoint> scaled_trace_sequence(const QuotientGeometry& q, double alpha,
                                                  std::span<const double> t_values, double tol) {
  std::vector<HeatTracePoint> out;
  out.reserve(t_values.size());
  for (double t : t_values) out.push_back(heat_trace(q, alpha, t, tol));
  return out;
}

namespace serial {

HeatTracePoint heat_trace(const QuotientGeometry& q, double alpha, double t, double tol) {
  return heat_trace_with(q, alpha, t, tol, sum_serial);
}

}  // namespace serial

}  // namespace hweyl
