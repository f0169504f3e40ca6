// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hwbounds/capacity.hpp"
#include "hwbounds/convex.hpp"
#include "hwbounds/measures.hpp"
#include "hwbounds/network.hpp"

namespace {

using namespace hwb;

Objective two_copy_objective(double eta) {
  return [eta](std::span<const double> z) {
    if (z[0] < 0.0 || z[1] < 0.0 || z[0] + z[1] > 1.0) return std::numeric_limits<double>::infinity();
    return ncopy_objective(eta, SymmetricPPTPoint({z[0], z[1], 1.0 - z[0] - z[1]})) / 2.0;
  };
}

void BM_GridScanSerial(benchmark::State& state) {
  const Polytope poly = two_copy_polytope(5);
  const auto f = two_copy_objective(-0.9);
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_scan_serial(f, poly, lo, hi, state.range(0)));
  }
}

void BM_GridScanParallel(benchmark::State& state) {
  const Polytope poly = two_copy_polytope(5);
  const auto f = two_copy_objective(-0.9);
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_scan_parallel(f, poly, lo, hi, state.range(0)));
  }
}

QuantumNetwork grid_network(int interior) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> eta(-1.0, 0.0);
  std::vector<std::string> nodes{"A", "B"};
  for (int i = 0; i < interior; ++i) nodes.push_back("r" + std::to_string(i));
  std::vector<NetworkEdge> edges;
  std::bernoulli_distribution keep(0.35);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (keep(rng)) edges.push_back({nodes[i], nodes[j], WernerParams(eta(rng), 4)});
    }
  }
  return QuantumNetwork(nodes, edges, "A", "B");
}

void BM_CutEnumerationSerial(benchmark::State& state) {
  const QuantumNetwork net = grid_network(static_cast<int>(state.range(0)));
  const auto w = edge_weights(net, Measure::e_p_inf);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_cut_enumerate_serial(net, w, CutObjective::sum_edges));
  }
}

void BM_CutEnumerationParallel(benchmark::State& state) {
  const QuantumNetwork net = grid_network(static_cast<int>(state.range(0)));
  const auto w = edge_weights(net, Measure::e_p_inf);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_cut_enumerate_parallel(net, w, CutObjective::sum_edges));
  }
}

std::vector<WernerParams> sweep_params() {
  std::vector<WernerParams> params;
  for (int d = 3; d <= 8; ++d) {
    for (int i = 0; i <= 200; ++i) params.emplace_back(-1.0 + i * 0.005, d);
  }
  return params;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto params = sweep_params();
  for (auto _ : state) benchmark::DoNotOptimize(channel_bounds_serial(params));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto params = sweep_params();
  for (auto _ : state) benchmark::DoNotOptimize(channel_bounds_parallel(params));
}

}  // namespace

BENCHMARK(BM_GridScanSerial)->Arg(201)->Arg(801);
BENCHMARK(BM_GridScanParallel)->Arg(201)->Arg(801);
BENCHMARK(BM_CutEnumerationSerial)->Arg(12)->Arg(16);
BENCHMARK(BM_CutEnumerationParallel)->Arg(12)->Arg(16);
BENCHMARK(BM_SweepSerial);
BENCHMARK(BM_SweepParallel);

BENCHMARK_MAIN();
