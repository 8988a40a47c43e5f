#include <benchmark/benchmark.h>

#include <random>

#include "pathboltz/operators.hpp"
#include "pathboltz/path_integral.hpp"

using namespace pathboltz;

namespace {

ComplexMatrix random_hermitian(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    m(r, r) = Complex(uniform(gen), 0.0);
    for (Eigen::Index c = r + 1; c < dim; ++c) {
      m(r, c) = Complex(uniform(gen), uniform(gen));
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

}  // namespace

static void MatrixExponential(benchmark::State& state) {
  const HermitianOperator h(random_hermitian(state.range(0), 1));
  const auto beta = EvolutionParameter::thermal(0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_exponential(h, beta));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(MatrixExponential)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

static void AmplitudeByContraction(benchmark::State& state) {
  const HermitianOperator h(random_hermitian(8, 2));
  const TransferChain chain = build_chain(h, EvolutionParameter::thermal(1.0),
                                          static_cast<std::size_t>(state.range(0)),
                                          SliceScheme::SplitStrang);
  for (auto _ : state) {
    benchmark::DoNotOptimize(amplitude_by_contraction(chain, 0, 1));
  }
}
BENCHMARK(AmplitudeByContraction)->RangeMultiplier(2)->Range(2, 64);

static void AmplitudeByEnumeration(benchmark::State& state) {
  const HermitianOperator h(random_hermitian(4, 3));
  const TransferChain chain = build_chain(h, EvolutionParameter::thermal(1.0),
                                          static_cast<std::size_t>(state.range(0)),
                                          SliceScheme::Exact);
  for (auto _ : state) {
    benchmark::DoNotOptimize(amplitude_by_enumeration(chain, 0, 1));
  }
}
BENCHMARK(AmplitudeByEnumeration)->DenseRange(2, 10, 2);

static void TrotterError(benchmark::State& state) {
  const HermitianOperator h(random_hermitian(16, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(trotter_error(h, EvolutionParameter::thermal(1.0),
                                           static_cast<std::size_t>(state.range(0)),
                                           SliceScheme::SplitStrang));
  }
}
BENCHMARK(TrotterError)->RangeMultiplier(2)->Range(8, 64);

BENCHMARK_MAIN();
