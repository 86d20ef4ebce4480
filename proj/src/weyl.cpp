#include "hweyl/weyl.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hweyl/errors.hpp"

namespace hweyl {

namespace {

constexpr int kOrder = 15;
constexpr int kInitialPanels = 64;
constexpr int kMaxDepth = 40;
constexpr double kTailTarget = 1e-18;
constexpr double kRoundoff = 64 * std::numeric_limits<double>::epsilon();

struct GaussLegendre {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};

  GaussLegendre() {
    for (int i = 0; i < kOrder; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= kOrder; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& rule() {
  static const GaussLegendre gl;
  return gl;
}

struct Integrand {
  int power;
  double rate;
  double operator()(double x) const { return sinh_kernel(power, rate, x); }
};

double gl_panel(const Integrand& f, double a, double b) {
  const auto& gl = rule();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kOrder; ++i) s += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return s * half;
}

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Halve [a, b] until one level of refinement changes the panel by < tol.
// The panel errors still add up, so a tol below rounding is caught by the caller.
PanelResult adapt(const Integrand& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl_panel(f, a, mid), right = gl_panel(f, mid, b);
  const double refined = left + right;
  const double diff = std::abs(refined - whole);
  if (diff <= tol) return {refined, diff, true};
  // Refinement is down to rounding noise; splitting further cannot help.
  if (diff <= kRoundoff * (std::abs(left) + std::abs(right))) return {refined, diff, true};
  if (depth >= kMaxDepth) return {refined, diff, false};
  PanelResult l = adapt(f, a, mid, left, 0.5 * tol, depth + 1);
  PanelResult r = adapt(f, mid, b, right, 0.5 * tol, depth + 1);
  return {l.value + r.value, l.error + r.error, l.converged && r.converged};
}

// For |x| >= 1, x/sinh x <= 2|x| e^{-|x|}, so the integrand is bounded by
// (2|x|)^p e^{-k|x|} with k = p - |rate|, and for X > p/k
//   int_X^inf (2x)^p e^{-kx} dx <= (2X)^p e^{-kX} / (k - p/X).
double tail_bound(int power, double rate, double X) {
  const double k = power - std::abs(rate);
  return std::exp(power * std::log(2.0 * X) - k * X) / (k - power / X);
}

double cutoff(int power, double rate) {
  const double k = power - std::abs(rate);
  double X = std::max(1.0, 2.0 * power / k);
  while (tail_bound(power, rate, X) > kTailTarget) X *= 1.25;
  return X;
}

template <bool Parallel>
QuadratureResult integrate(int power, double rate, double tol) {
  if (power < 1) throw ValidationError("sinh kernel power must be >= 1");
  if (!(std::abs(rate) < power)) {
    throw ValidationError("sinh kernel integral diverges for |rate| = " + format_double(std::abs(rate)) +
                          " >= power " + std::to_string(power));
  }
  if (!(tol > 0.0)) throw ValidationError("quadrature tolerance must be positive");
  const Integrand f{power, rate};
  const double X = cutoff(power, rate);
  const double width = 2.0 * X / kInitialPanels;
  std::array<double, kInitialPanels> coarse;
  std::array<PanelResult, kInitialPanels> panels;
  auto lo = [&](int i) { return -X + i * width; };
  auto hi = [&](int i) { return (i + 1 == kInitialPanels) ? X : lo(i) + width; };
#pragma omp parallel for schedule(static) if (Parallel)
  for (int i = 0; i < kInitialPanels; ++i) coarse[i] = gl_panel(f, lo(i), hi(i));
  // tol is absolute for integrals of size <= 1 and relative above that.
  double scale = 0.0;
  for (double v : coarse) scale += std::abs(v);
  tol *= std::max(1.0, scale);
#pragma omp parallel for schedule(dynamic, 1) if (Parallel)
  for (int i = 0; i < kInitialPanels; ++i) {
    panels[i] = adapt(f, lo(i), hi(i), coarse[i], tol / kInitialPanels, 0);
  }
  QuadratureResult out{0.0, 2.0 * tail_bound(power, rate, X)};
  bool converged = true;
  for (const auto& p : panels) {
    out.value += p.value;
    out.error += p.error;
    converged = converged && p.converged;
  }
  if (!converged || out.error > tol) throw QuadratureError("sinh kernel quadrature did not converge", out.error);
  return out;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double sinh_kernel(int power, double rate, double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return std::pow(1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0, power) * std::exp(-rate * x);
  }
  // log(x / sinh x) = log(2|x|) - |x| - log(1 - e^{-2|x|})
  const double log_ratio = std::log(2.0 * ax) - ax - std::log1p(-std::exp(-2.0 * ax));
  return std::exp(power * log_ratio - rate * x);
}

QuadratureResult sinh_kernel_integral(int power, double rate, double tol) {
  return integrate<true>(power, rate, tol);
}

namespace serial {

QuadratureResult sinh_kernel_integral(int power, double rate, double tol) {
  return integrate<false>(power, rate, tol);
}

}  // namespace serial

WeylConstant weyl_constant(int d, double alpha, double tol) {
  if (d < 1) throw ValidationError("d must be >= 1, got " + std::to_string(d));
  if (!(std::abs(alpha) <= d)) {
    throw ValidationError("alpha = " + format_double(alpha) + " outside [-d, d] for d = " + std::to_string(d));
  }
  const double gamma = factorial(d + 1);
  const double pi_pow = std::pow(std::numbers::pi, d + 1);
  double prefactor;
  QuadratureResult integral;
  if (std::abs(alpha) < d) {
    prefactor = 2.0 / (pi_pow * gamma);
    integral = sinh_kernel_integral(d, alpha, tol / prefactor);
  } else {
    prefactor = 2.0 * d / ((d + 1) * pi_pow * gamma);
    integral = sinh_kernel_integral(d + 1, d - 1.0, tol / prefactor);
  }
  return WeylConstant{d, alpha, prefactor * integral.value, prefactor * integral.error};
}

std::pair<double, double> weyl_constant_boundary_consistency(int d, double tol) {
  return {weyl_constant(d, d, tol).value, weyl_constant(d, d - 1e-2, tol).value};
}

double flat_torus_leading(const DiagonalLattice& dual, int d) {
  if (dual.dim() != static_cast<std::size_t>(2 * d)) {
    throw ValidationError("flat torus lattice must have dimension 2d = " + std::to_string(2 * d));
  }
  return std::pow(2.0, d) / (factorial(d) * to_double(dual.covolume()));
}

std::vector<ConvergenceRow> convergence_report(const QuotientGeometry& q, const Rational& alpha,
                                               std::span<const double> lambda_values, double tol,
                                               const CountOptions& opts) {
  for (std::size_t i = 0; i < lambda_values.size(); ++i) {
    if (!(lambda_values[i] > 0.0)) throw ValidationError("lambda values must be positive");
    if (i > 0 && !(lambda_values[i] > lambda_values[i - 1])) {
      throw ValidationError("lambda values must be strictly ascending");
    }
  }
  validate_alpha(q.d(), alpha);
  const double target = weyl_constant(q.d(), to_double(alpha), tol).value * to_double(q.volume());
  std::vector<ConvergenceRow> rows;
  rows.reserve(lambda_values.size());
  for (double lambda : lambda_values) {
    SpectralCount c = count_total(q, alpha, Threshold::absolute(lambda, q), opts);
    rows.push_back({lambda, c.n_a, c.n_b, c.n_total, c.normalized_ratio, target, c.normalized_ratio / target - 1.0});
  }
  return rows;
}

}  // namespace hweyl
