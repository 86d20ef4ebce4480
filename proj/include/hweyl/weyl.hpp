#pragma once

// Weyl constants C_{d,alpha} with lim N(lambda)/lambda^(d+1) = C_{d,alpha} vol(M):
//
//   |alpha| < d:  2 / (pi^(d+1) (d+1)!) * int (x/sinh x)^d e^{-alpha x} dx
//   |alpha| = d:  2d / ((d+1) pi^(d+1) (d+1)!) * int (x/sinh x)^(d+1) e^{-(d-1) x} dx
//
// Integrals run over the whole real line and are evaluated by adaptive
// composite Gauss-Legendre on [-X, X] with analytically bounded tails.

#include <span>
#include <utility>
#include <vector>

#include "hweyl/quotient.hpp"
#include "hweyl/spectrum.hpp"

namespace hweyl {

struct WeylConstant {
  int d;
  double alpha;
  double value;
  double quadrature_error;
};

struct QuadratureResult {
  double value;
  double error;  // panel error estimates plus the tail bound
};

// int_R (x / sinh x)^power e^{-rate x} dx, requires |rate| < power.
// tol bounds the absolute error, or the relative error once the integral exceeds 1.
QuadratureResult sinh_kernel_integral(int power, double rate, double tol);

// (x / sinh x)^power e^{-rate x}, with the removable singularity filled in.
double sinh_kernel(int power, double rate, double x);

WeylConstant weyl_constant(int d, double alpha, double tol = 1e-10);

// (boundary constant at alpha = d, interior constant at alpha = d - 1e-2).
std::pair<double, double> weyl_constant_boundary_consistency(int d, double tol = 1e-10);

// lim N_b(lambda) / lambda^d for eigenvalues (pi/2)|xi|^2, xi in dual.
double flat_torus_leading(const DiagonalLattice& dual, int d);

struct ConvergenceRow {
  double lambda;
  BigInt n_a;
  BigInt n_b;
  BigInt n_total;
  double ratio;   // N(lambda) / lambda^(d+1)
  double target;  // C_{d,alpha} vol(M)
  double rel_error;
};

std::vector<ConvergenceRow> convergence_report(const QuotientGeometry& q, const Rational& alpha,
                                               std::span<const double> lambda_values, double tol = 1e-10,
                                               const CountOptions& opts = {});

namespace serial {

QuadratureResult sinh_kernel_integral(int power, double rate, double tol);

}  // namespace serial

}  // namespace hweyl
