#include <doctest.h>

#include <cmath>
#include <vector>

#include "hweyl/errors.hpp"
#include "hweyl/heat.hpp"
#include "hweyl/spectrum.hpp"
#include "hweyl/weyl.hpp"

using namespace hweyl;

namespace {

// sum of mult * e^{-lambda t} over the enumerated type (a) spectrum.
double direct_type_a_sum(const QuotientGeometry& q, const Rational& alpha, const Rational& x_max, double t) {
  const double u = spectral_unit(q.c());
  double s = 0.0;
  for (const auto& rec : enumerate_spectrum(q, alpha, Threshold::in_units(x_max, q))) {
    for (const auto& src : rec.sources) {
      if (const auto* a = std::get_if<TypeASource>(&src)) {
        s += a->multiplicity.get_d() * std::exp(-to_double(rec.exact_value) * u * t);
      }
    }
  }
  return s;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("heat trace matches the direct spectral sum") {
  // At t >= 1/2 the eigenvalues beyond 120 u contribute < e^{-90}.
  for (int d = 1; d <= 2; ++d) {
    auto q = make_quotient(d, std::vector<std::int64_t>(d, 1), 1);
    for (Rational alpha : {Rational(0), Rational(1, 2), Rational(d), Rational(-d)}) {
      for (double t : {1.0, 0.5}) {
        auto p = heat_trace(q, to_double(alpha), t);
        const double direct = direct_type_a_sum(q, alpha, 120, t);
        CAPTURE(d);
        CAPTURE(t);
        CHECK(std::abs(p.g - direct) <= p.truncation_bound + 1e-13 * direct);
      }
    }
  }
}

TEST_CASE("heat trace on a non-unit quotient") {
  auto q = make_quotient(2, {1, 2}, Rational(3, 2));
  auto p = heat_trace(q, 0.25, 1.0);
  const double direct = direct_type_a_sum(q, Rational(1, 4), 160, 1.0);
  CHECK(std::abs(p.g - direct) <= p.truncation_bound + 1e-13 * direct);
  CHECK(p.scaled == doctest::Approx(p.g).epsilon(1e-15));
}

TEST_CASE("truncation bound dominates the dropped tail") {
  auto q = make_quotient(2, {1, 1}, 1);
  for (double alpha : {0.0, 1.5, 2.0}) {
    for (double t : {0.3, 0.01}) {
      auto coarse = heat_trace(q, alpha, t, 1e-6);
      auto fine = heat_trace(q, alpha, t, 1e-15);
      CHECK(coarse.truncation_bound >= 0.0);
      CHECK(std::abs(fine.g - coarse.g) <= coarse.truncation_bound + fine.truncation_bound + 1e-14 * fine.g);
    }
  }
}

TEST_CASE("heat trace is symmetric in alpha and decreasing in t") {
  auto q = make_quotient(2, {1, 2}, 1);
  for (double alpha : {0.5, 1.25, 2.0}) {
    for (double t : {0.001, 0.1, 2.0}) {
      auto plus = heat_trace(q, alpha, t);
      auto minus = heat_trace(q, -alpha, t);
      CHECK(plus.g == doctest::Approx(minus.g).epsilon(1e-13));
    }
    double prev = INFINITY;
    for (double t = 1e-3; t < 20.0; t *= 1.7) {
      double g = heat_trace(q, alpha, t).g;
      CHECK(g < prev);
      CHECK(g > 0.0);
      prev = g;
    }
    CHECK(heat_trace(q, alpha, 40.0).g < 1e-20);
  }
}

TEST_CASE("OpenMP heat kernel is bitwise identical to the serial one") {
  auto q = make_quotient(2, {1, 1}, 1);
  for (double alpha : {0.0, 0.5, 2.0}) {
    for (double t : {1e-3, 0.2}) {
      auto a = heat_trace(q, alpha, t);
      auto b = serial::heat_trace(q, alpha, t);
      CHECK(a.g == b.g);
      CHECK(a.truncation_bound == b.truncation_bound);
    }
  }
}

TEST_CASE("scaled trace approaches Gamma(d+2) C vol as t -> 0") {
  auto q = make_quotient(1, {1}, 1);
  const std::vector<double> ts{1e-1, 1e-2, 1e-3, 1e-4};
  auto seq = scaled_trace_sequence(q, 0.0, ts);
  REQUIRE(seq.size() == ts.size());
  const double limit = factorial(2) * weyl_constant(1, 0.0).value * to_double(q.volume());
  CHECK(limit == doctest::Approx(1.0).epsilon(1e-12));
  double prev_gap = INFINITY;
  for (const auto& p : seq) {
    CHECK(p.scaled > 0.0);
    CHECK(std::isfinite(p.scaled));
    const double gap = std::abs(p.scaled - limit);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-3);
}

TEST_CASE("heat trace validation") {
  auto q = make_quotient(1, {1}, 1);
  CHECK_THROWS_AS(heat_trace(q, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(heat_trace(q, 0.0, -1.0), ValidationError);
  CHECK_THROWS_AS(heat_trace(q, 0.0, 1e-9), ValidationError);
  CHECK_THROWS_AS(heat_trace(q, 1.5, 1.0), ValidationError);
  CHECK_NOTHROW(heat_trace(q, 1.0, 1.0));
}
