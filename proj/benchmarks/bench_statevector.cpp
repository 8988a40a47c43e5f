#include <benchmark/benchmark.h>

#include "pathboltz/circuits.hpp"

using namespace pathboltz;

namespace {

CircuitDescription rotation_ladder(Eigen::Index qubits) {
  CircuitDescription c;
  c.num_qubits = qubits;
  for (Eigen::Index q = 0; q < qubits; ++q) c.labels.push_back("q" + std::to_string(q));
  for (Eigen::Index q = 0; q < qubits; ++q) c.gates.push_back(Gate::ry(0.3 + 0.1 * q, q));
  for (Eigen::Index q = 0; q + 2 < qubits; ++q) {
    c.gates.push_back(Gate::ccry(0.2, q, q + 1, q + 2));
  }
  for (Eigen::Index q = 0; q < qubits; ++q) c.gates.push_back(Gate::measure(q));
  return c;
}

}  // namespace

static void Statevector(benchmark::State& state) {
  const CircuitDescription c = rotation_ladder(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_statevector(c));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(Statevector)->DenseRange(4, 14, 2)->Complexity();

static void SampleShots(benchmark::State& state) {
  const CircuitDescription c = rotation_ladder(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_circuit(c, static_cast<std::uint64_t>(state.range(0)), 3));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(SampleShots)->RangeMultiplier(10)->Range(1000, 100000);
