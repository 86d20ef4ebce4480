#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hweyl/errors.hpp"
#include "hweyl/weyl.hpp"
#include "oracles.hpp"

using namespace hweyl;

namespace {

double prefactor(int d) {
  double gamma = 1.0;
  for (int k = 2; k <= d + 1; ++k) gamma *= k;
  return 2.0 / (std::pow(std::numbers::pi, d + 1) * gamma);
}

}  // namespace

TEST_CASE("C_{1,0} = 1/2") {
  // int x / sinh x dx = pi^2 / 2 = 4 * sum 1/(2k+1)^2.
  double series = 0.0;
  for (long k = 200000; k >= 0; --k) series += 1.0 / ((2.0 * k + 1) * (2.0 * k + 1));
  CHECK(4.0 * series == doctest::Approx(std::numbers::pi * std::numbers::pi / 2).epsilon(1e-5));

  auto w = weyl_constant(1, 0.0);
  CHECK(std::abs(w.value - 0.5) < 1e-8);
  CHECK(w.quadrature_error < 1e-10);
  CHECK(w.d == 1);
  CHECK(w.alpha == 0.0);
}

TEST_CASE("C_{2,0} agrees with the trapezoid oracle") {
  const double trap = oracle::trapezoid([](double x) { return oracle::sinh_kernel(2, 0.0, x); }, -40, 40, 1'000'001);
  CHECK(std::abs(weyl_constant(2, 0.0).value - prefactor(2) * trap) < 1e-8);
  // int (x/sinh x)^2 dx = pi^2/3, so C_{2,0} = 1/(9 pi).
  CHECK(weyl_constant(2, 0.0).value == doctest::Approx(1.0 / (9.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("interior constants against the trapezoid oracle") {
  for (int d = 1; d <= 3; ++d) {
    for (double alpha : {0.0, 1.0 / 3.0, d - 0.5}) {
      if (!(alpha < d)) continue;
      const double trap =
          oracle::trapezoid([&](double x) { return oracle::sinh_kernel(d, alpha, x); }, -80, 80, 400'001);
      CHECK(std::abs(weyl_constant(d, alpha).value - prefactor(d) * trap) < 1e-9);
    }
  }
}

TEST_CASE("boundary constants") {
  for (int d = 1; d <= 3; ++d) {
    const double trap =
        oracle::trapezoid([&](double x) { return oracle::sinh_kernel(d + 1, d - 1.0, x); }, -60, 60, 400'001);
    const double expected = prefactor(d) * d / (d + 1.0) * trap;
    CHECK(std::abs(weyl_constant(d, d).value - expected) < 1e-9);
    CHECK(weyl_constant(d, -d).value == doctest::Approx(weyl_constant(d, d).value).epsilon(1e-12));
  }
  // d = 1: int (x/sinh x)^2 dx = pi^2/3 gives 1/6.
  CHECK(weyl_constant(1, 1.0).value == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  for (int d = 1; d <= 3; ++d) {
    auto [boundary, interior] = weyl_constant_boundary_consistency(d);
    CHECK(boundary > 0.0);
    CHECK(interior > 0.0);
    CHECK(interior > weyl_constant(d, 0.0).value);
  }
}

TEST_CASE("alpha symmetry and monotonicity") {
  const double tol = 1e-10;
  for (int d = 1; d <= 3; ++d) {
    for (double alpha : {0.0, 1.0 / 3.0, 1.0, d - 0.1}) {
      CHECK(std::abs(weyl_constant(d, alpha, tol).value - weyl_constant(d, -alpha, tol).value) <= 2 * tol);
    }
    double prev = 0.0;
    for (double alpha = 0.0; alpha < d - 0.05; alpha += 0.1) {
      double v = weyl_constant(d, alpha).value;
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("sinh kernel near the removable singularity") {
  for (double x : {-2e-4, -1e-4, -5e-5, 0.0, 5e-5, 1e-4, 2e-4, 1.0, -3.0, 30.0}) {
    CHECK(sinh_kernel(3, 0.5, x) == doctest::Approx(oracle::sinh_kernel(3, 0.5, x)).epsilon(1e-13));
  }
  CHECK(std::isfinite(sinh_kernel(2, 1.9, -900.0)));
  CHECK(sinh_kernel(2, 0.0, 1000.0) >= 0.0);
}

TEST_CASE("parallel and serial quadrature agree exactly") {
  for (double rate : {0.0, 0.7, 1.9}) {
    auto a = sinh_kernel_integral(2, rate, 1e-12);
    auto b = serial::sinh_kernel_integral(2, rate, 1e-12);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
  }
}

TEST_CASE("weyl_constant validation and failure reporting") {
  CHECK_THROWS_AS(weyl_constant(1, 1.5), ValidationError);
  CHECK_THROWS_AS(weyl_constant(0, 0.0), ValidationError);
  CHECK_THROWS_AS(sinh_kernel_integral(1, 1.0, 1e-8), ValidationError);
  try {
    weyl_constant(1, 0.0, 1e-30);
    FAIL("expected quadrature failure");
  } catch (const QuadratureError& e) {
    CHECK(e.achieved_error() > 0.0);
  }
}

TEST_CASE("flat torus leading constant") {
  CHECK(flat_torus_leading(DiagonalLattice{{1, 1}}, 1) == doctest::Approx(2.0));
  CHECK(flat_torus_leading(DiagonalLattice{{1, 2}}, 1) == doctest::Approx(1.0));
  CHECK(flat_torus_leading(DiagonalLattice{{1, 1, 1, 1}}, 2) == doctest::Approx(2.0));
  CHECK_THROWS_AS(flat_torus_leading(DiagonalLattice{{1, 1}}, 2), ValidationError);

  auto q = make_quotient(1, {1}, 1);
  const double ratio = count_type_b(q, Threshold::absolute(1e3, q)).get_d() / 1e3;
  CHECK(std::abs(ratio / flat_torus_leading(dual_lattice(projected_lattice(q)), 1) - 1.0) < 0.25);
}

TEST_CASE("convergence report") {
  auto q = make_quotient(1, {1}, 1);
  const std::vector<double> lambdas{1e2, 1e3, 1e4};
  auto rows = convergence_report(q, 0, lambdas);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].target == doctest::Approx(0.5));
    CHECK(rows[i].rel_error == doctest::Approx(rows[i].ratio / rows[i].target - 1.0));
    CHECK(rows[i].n_total == rows[i].n_a + rows[i].n_b);
    if (i > 0) CHECK(std::abs(rows[i].rel_error) < std::abs(rows[i - 1].rel_error));
  }

  const std::vector<double> tiny{0.1};
  auto below = convergence_report(q, 0, tiny);
  CHECK(below[0].ratio == 0.0);
  CHECK(below[0].rel_error == -1.0);

  auto plus = convergence_report(q, Rational(1, 2), lambdas);
  auto minus = convergence_report(q, Rational(-1, 2), lambdas);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    CHECK(plus[i].n_total == minus[i].n_total);
    CHECK(plus[i].rel_error == doctest::Approx(minus[i].rel_error).epsilon(1e-9));
  }

  const std::vector<double> unsorted{10.0, 5.0};
  CHECK_THROWS_AS(convergence_report(q, 0, unsorted), ValidationError);
}
