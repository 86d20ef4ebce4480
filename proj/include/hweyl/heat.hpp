#pragma once

// Type (a) heat trace G(t) = sum_j exp(-lambda_j t) in closed form.
//
// Summing the j-series with 1/(1-z)^d = sum binom(j+d-1, d-1) z^j leaves one
// series over n >= 1 per sign of n:
//
//   |alpha| < d, u = pi/(2c):
//     G = L sum n^d [e^{-tun(d+alpha)} + e^{-tun(d-alpha)}] / (1 - e^{-2tun})^d
//   |alpha| = d, u = pi/c (the j = 0 zero modes dropped):
//     G = L sum n^d [e^{-tund} / (1 - e^{-tun})^d + (1 - e^{-tun})^{-d} - 1]
//
// As t -> 0+, t^(d+1) G(t) -> Gamma(d+2) C_{d,alpha} vol(M).

#include <span>
#include <vector>

#include "hweyl/quotient.hpp"

namespace hweyl {

inline constexpr double kMinHeatTime = 1e-8;

struct HeatTracePoint {
  double t;
  double g;
  double scaled;            // t^(d+1) g
  double truncation_bound;  // rigorous bound on the dropped n-tail
};

HeatTracePoint heat_trace(const QuotientGeometry& q, double alpha, double t, double tol = 1e-14);

std::vector<HeatTracePoint> scaled_trace_sequence(const QuotientGeometry& q, double alpha,
                                                  std::span<const double> t_values, double tol = 1e-14);

namespace serial {

HeatTracePoint heat_trace(const QuotientGeometry& q, double alpha, double t, double tol = 1e-14);

}  // namespace serial

}  // namespace hweyl
