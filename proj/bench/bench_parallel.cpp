// Serial loops against the OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include "fibzeta/crosscheck.hpp"
#include "fibzeta/parallel.hpp"

namespace {

using namespace fibzeta;

std::vector<Complex> grid_points(int side) {
  std::vector<Complex> points;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      points.emplace_back(-4.0 + 7.0 * (i + 0.5) / side, -8.0 + 16.0 * (j + 0.5) / side);
    }
  }
  return points;
}

const std::vector<Method> kMethods{Method::binomial, Method::poisson};

void BM_GridSerial(benchmark::State& state) {
  const auto field = make_field(5);
  const auto points = grid_points(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid_serial(field, points, Parity::even, kMethods));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size() * kMethods.size()));
}

void BM_GridOpenMP(benchmark::State& state) {
  const auto field = make_field(5);
  const auto points = grid_points(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_grid(field, points, Parity::even, kMethods));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size() * kMethods.size()));
}

void BM_MembershipSerial(benchmark::State& state) {
  const auto field = make_field(13);
  const auto n_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(membership_scan_serial(field, n_max));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MembershipOpenMP(benchmark::State& state) {
  const auto field = make_field(13);
  const auto n_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(membership_scan(field, n_max));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ShiftedSerial(benchmark::State& state) {
  const auto field = make_field(2);
  const auto n_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z_odd_shifted_convolution(field, {1.5, 2.0}, n_max));
}

void BM_ShiftedOpenMP(benchmark::State& state) {
  const auto field = make_field(2);
  const auto n_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shifted_convolution_parallel(field, {1.5, 2.0}, n_max, Parity::odd));
}

}  // namespace

BENCHMARK(BM_GridSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GridOpenMP)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MembershipSerial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MembershipOpenMP)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ShiftedSerial)->Arg(1000000000)->Arg(100000000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ShiftedOpenMP)->Arg(1000000000)->Arg(100000000000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
