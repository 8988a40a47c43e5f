#include <benchmark/benchmark.h>

#include <random>

#include "pathboltz/rbm.hpp"

using namespace pathboltz;

namespace {

rbm::RbmParams random_model(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uniform(-0.5, 0.5);
  rbm::RbmParams params;
  params.n = n;
  params.p = p;
  params.a = RealVector::NullaryExpr(n, [&](Eigen::Index) { return uniform(gen); });
  params.b = RealVector::NullaryExpr(p, [&](Eigen::Index) { return uniform(gen); });
  params.w = Eigen::MatrixXd::NullaryExpr(n, p, [&](Eigen::Index, Eigen::Index) {
    return uniform(gen);
  });
  return params;
}

}  // namespace

static void ExactJointTable(benchmark::State& state) {
  const auto params = random_model(state.range(0), state.range(0), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rbm::gibbs_table(params));
  }
  state.SetComplexityN(2 * state.range(0));
}
BENCHMARK(ExactJointTable)->DenseRange(4, 10, 2)->Complexity();

static void VisibleMarginalClosedForm(benchmark::State& state) {
  const auto params = random_model(state.range(0), state.range(0), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rbm::visible_marginal(params));
  }
}
BENCHMARK(VisibleMarginalClosedForm)->DenseRange(4, 12, 2);

static void BlockGibbsSweeps(benchmark::State& state) {
  const auto params = random_model(8, 8, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rbm::gibbs_sample(params, static_cast<std::size_t>(state.range(0)), 100, 7));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BlockGibbsSweeps)->RangeMultiplier(4)->Range(1000, 64000);
