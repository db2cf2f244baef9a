// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vortexloop/kernels.hpp"
#include "vortexloop/quadrature.hpp"
#include "vortexloop/random.hpp"

using namespace vortexloop;
namespace k = vortexloop::kernels;

namespace {

struct TrigData {
  std::vector<double> c, s, t, out;
  explicit TrigData(std::size_t n) : c(32), s(32), t(uniform_grid(static_cast<int>(n))), out(n) {
    for (int j = 0; j < 32; ++j) {
      c[j] = 1.0 / (j + 1.0);
      s[j] = 0.5 / ((j + 1.0) * (j + 1.0));
    }
  }
};

std::vector<double> wave(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2 * std::numbers::pi * j / n;
    v[j] = std::sin(2 * t) + 0.3 * std::cos(5 * t);
  }
  return v;
}

std::vector<Point> star(std::size_t n) {
  std::vector<Point> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2 * std::numbers::pi * j / n;
    const double r = 1.0 + 0.2 * std::cos(3 * t);
    p[j] = {r * std::cos(t), r * std::sin(t)};
  }
  return p;
}

const PlanarHamiltonian kFlow({Bump{{0.5, 0.2}, 0.6, 2.0}, Bump{{-0.5, -0.4}, 0.5, -1.5}});

template <bool Parallel>
void BM_evaluate_trig(benchmark::State& state) {
  TrigData d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) k::evaluate_trig(0.1, d.c, d.s, d.t, d.out);
    else k::evaluate_trig_serial(0.1, d.c, d.s, d.t, d.out);
    benchmark::DoNotOptimize(d.out.data());
  }
}

template <bool Parallel>
void BM_dft(benchmark::State& state) {
  const auto v = wave(static_cast<std::size_t>(state.range(0)));
  std::vector<double> c, s;
  for (auto _ : state) {
    double a0 = Parallel ? k::dft_coefficients(v, c, s) : k::dft_coefficients_serial(v, c, s);
    benchmark::DoNotOptimize(a0);
  }
}

template <bool Parallel>
void BM_first_crossing(benchmark::State& state) {
  const auto p = star(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto hit = Parallel ? k::first_crossing(p) : k::first_crossing_serial(p);
    benchmark::DoNotOptimize(hit);
  }
}

template <bool Parallel>
void BM_step_points(benchmark::State& state) {
  const auto p0 = star(static_cast<std::size_t>(state.range(0)));
  std::vector<double> err(p0.size());
  const auto scheme = static_cast<Scheme>(state.range(1));
  for (auto _ : state) {
    auto p = p0;
    if constexpr (Parallel) k::step_points(kFlow, p, 1e-3, scheme, err);
    else k::step_points_serial(kFlow, p, 1e-3, scheme, err);
    benchmark::DoNotOptimize(p.data());
  }
}

}  // namespace

BENCHMARK(BM_evaluate_trig<false>)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_evaluate_trig<true>)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_dft<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_dft<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_first_crossing<false>)->Arg(256)->Arg(2048);
BENCHMARK(BM_first_crossing<true>)->Arg(256)->Arg(2048);
BENCHMARK(BM_step_points<false>)->Args({1024, 0})->Args({1024, 1});
BENCHMARK(BM_step_points<true>)->Args({1024, 0})->Args({1024, 1});

BENCHMARK_MAIN();
