// Serial reference vs OpenMP kernel, same inputs. Run with
// OMP_NUM_THREADS=<n> to vary the parallel side.

#include <benchmark/benchmark.h>

#include "hweyl/heat.hpp"
#include "hweyl/quotient.hpp"
#include "hweyl/spectrum.hpp"
#include "hweyl/weyl.hpp"

using namespace hweyl;

namespace {

const QuotientGeometry& q3() {
  static const QuotientGeometry q = make_quotient(3, {1, 2, 4}, 1);
  return q;
}

const QuotientGeometry& q2() {
  static const QuotientGeometry q = make_quotient(2, {1, 1}, 1);
  return q;
}

template <bool Serial>
void count_a(benchmark::State& state) {
  const auto th = Threshold::in_units(Rational(state.range(0)), q3());
  for (auto _ : state) {
    if constexpr (Serial) {
      benchmark::DoNotOptimize(serial::count_type_a(q3(), Rational(1, 3), th));
    } else {
      benchmark::DoNotOptimize(count_type_a(q3(), Rational(1, 3), th));
    }
  }
}

template <bool Serial>
void count_b(benchmark::State& state) {
  const auto th = Threshold::absolute(static_cast<double>(state.range(0)), q2());
  const CountOptions opts{10'000'000'000ULL};
  for (auto _ : state) {
    if constexpr (Serial) {
      benchmark::DoNotOptimize(serial::count_type_b(q2(), th, opts));
    } else {
      benchmark::DoNotOptimize(count_type_b(q2(), th, opts));
    }
  }
}

template <bool Serial>
void ellipsoid(benchmark::State& state) {
  const std::vector<std::uint64_t> weights{1, 2, 3, 5, 7};
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    if constexpr (Serial) {
      benchmark::DoNotOptimize(serial::count_ellipsoid_points(weights, bound));
    } else {
      benchmark::DoNotOptimize(count_ellipsoid_points(weights, bound));
    }
  }
}

template <bool Serial>
void heat(benchmark::State& state) {
  const double t = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    if constexpr (Serial) {
      benchmark::DoNotOptimize(serial::heat_trace(q2(), 0.5, t));
    } else {
      benchmark::DoNotOptimize(heat_trace(q2(), 0.5, t));
    }
  }
}

template <bool Serial>
void quadrature(benchmark::State& state) {
  for (auto _ : state) {
    if constexpr (Serial) {
      benchmark::DoNotOptimize(serial::sinh_kernel_integral(3, 2.9, 1e-12));
    } else {
      benchmark::DoNotOptimize(sinh_kernel_integral(3, 2.9, 1e-12));
    }
  }
}

}  // namespace

BENCHMARK(count_a<true>)->Name("count_type_a/serial")->Arg(10'000)->Arg(1'000'000);
BENCHMARK(count_a<false>)->Name("count_type_a/omp")->Arg(10'000)->Arg(1'000'000);
BENCHMARK(count_b<true>)->Name("count_type_b/serial")->Arg(10'000)->Arg(50'000);
BENCHMARK(count_b<false>)->Name("count_type_b/omp")->Arg(10'000)->Arg(50'000);
BENCHMARK(ellipsoid<true>)->Name("ellipsoid/serial")->Arg(2'000)->Arg(10'000);
BENCHMARK(ellipsoid<false>)->Name("ellipsoid/omp")->Arg(2'000)->Arg(10'000);
BENCHMARK(heat<true>)->Name("heat_trace/serial")->Arg(10'000)->Arg(1'000'000);
BENCHMARK(heat<false>)->Name("heat_trace/omp")->Arg(10'000)->Arg(1'000'000);
BENCHMARK(quadrature<true>)->Name("sinh_kernel_integral/serial");
BENCHMARK(quadrature<false>)->Name("sinh_kernel_integral/omp");

BENCHMARK_MAIN();
