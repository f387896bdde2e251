#include <random>

#include <benchmark/benchmark.h>

#include "qitk/entanglement.hpp"
#include "qitk/measures.hpp"
#include "qitk/transforms.hpp"

namespace {

qitk::DensityMatrix random_density(const qitk::DimSpec& dims, std::uint64_t seed) {
  return std::get<qitk::DensityMatrix>(qitk::random_object(qitk::ParamKind::density, dims, seed));
}

void BM_PartialTrace(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto rho = random_density(qitk::DimSpec::qubits(n), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qitk::partial_trace(rho, {0}));
  }
}
BENCHMARK(BM_PartialTrace)->DenseRange(2, 6, 2);

void BM_Concurrence(benchmark::State& state) {
  const auto rho = random_density(qitk::DimSpec{2, 2}, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qitk::concurrence(rho));
  }
}
BENCHMARK(BM_Concurrence);

void BM_SeparableDecode(benchmark::State& state) {
  const auto d = static_cast<int>(state.range(0));
  const auto space = qitk::make_space(qitk::ParamKind::separable, qitk::DimSpec{d, d});
  std::mt19937_64 rng(3);
  const qitk::RealVector x = qitk::random_params(space, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qitk::decode_state(space, x));
  }
}
BENCHMARK(BM_SeparableDecode)->Arg(2)->Arg(4);

void BM_SeparableDecoderStep(benchmark::State& state) {
  const auto d = static_cast<int>(state.range(0));
  qitk::SeparableDecoder decoder(qitk::make_space(qitk::ParamKind::separable, qitk::DimSpec{d, d}));
  std::mt19937_64 rng(3);
  qitk::RealVector x = qitk::random_params(decoder.space(), rng);
  decoder.decode(x);
  Eigen::Index i = 0;
  for (auto _ : state) {
    i = (i + 1) % x.size();
    x(i) += 1e-3;
    benchmark::DoNotOptimize(decoder.decode(x));
  }
}
BENCHMARK(BM_SeparableDecoderStep)->Arg(2)->Arg(4);

void BM_RelativeEntropyObjective(benchmark::State& state) {
  const auto d = static_cast<int>(state.range(0));
  const qitk::DimSpec dims{d, d};
  const auto space = qitk::make_space(qitk::ParamKind::separable, dims);
  const auto rho = random_density(dims, 4);
  std::mt19937_64 rng(5);
  const qitk::RealVector x = qitk::random_params(space, rng);
  for (auto _ : state) {
    const auto sigma = qitk::decode_state(space, x);
    benchmark::DoNotOptimize(qitk::relative_entropy(rho, sigma));
  }
}
BENCHMARK(BM_RelativeEntropyObjective)->Arg(2)->Arg(4);

void BM_VonNeumannEntropy(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto rho = random_density(qitk::DimSpec::qubits(n), 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qitk::von_neumann_entropy(rho));
  }
}
BENCHMARK(BM_VonNeumannEntropy)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
