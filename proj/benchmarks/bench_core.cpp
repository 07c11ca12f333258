#include <benchmark/benchmark.h>

#include <random>

#include "pbgl/discretize.hpp"
#include "pbgl/dynamics.hpp"
#include "pbgl/oracle.hpp"

namespace {

pbgl::LadderConfig make_config(std::size_t n) {
  pbgl::IsotropicBandEdge model;
  model.coupling_upper = 1.0;
  model.coupling_lower = 1.5;
  model = pbgl::with_rho0_from_spacing(model, 9.9 / (n * n));
  const pbgl::TransitionFrequencies atom{-1.31, 0.0};
  auto res = pbgl::build_quadratic_grid(
      model, pbgl::QuadraticGridParams{n, 9.9 / (n * n)}, atom);
  return pbgl::LadderConfig(std::move(res), -1.31, 0.0);
}

void BM_RhsRotating(benchmark::State& state) {
  const auto config = make_config(static_cast<std::size_t>(state.range(0)));
  const pbgl::LadderRhs rhs(config, pbgl::Frame::rotating);
  std::mt19937 rng(1u);
  std::normal_distribution<double> dist;
  pbgl::ComplexVector y(rhs.dimension());
  for (auto& z : y) z = pbgl::Complex(dist(rng), dist(rng));
  pbgl::ComplexVector dydt(y.size());
  for (auto _ : state) {
    rhs(0.0, y, dydt);
    benchmark::DoNotOptimize(dydt.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RhsRotating)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_RhsInteraction(benchmark::State& state) {
  const auto config = make_config(static_cast<std::size_t>(state.range(0)));
  const pbgl::LadderRhs rhs(config, pbgl::Frame::interaction);
  std::mt19937 rng(1u);
  std::normal_distribution<double> dist;
  pbgl::ComplexVector y(rhs.dimension());
  for (auto& z : y) z = pbgl::Complex(dist(rng), dist(rng));
  pbgl::ComplexVector dydt(y.size());
  double t = 0.0;
  for (auto _ : state) {
    rhs(t, y, dydt);
    benchmark::DoNotOptimize(dydt.data());
    t += 1e-3;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RhsInteraction)->Range(64, 256)->Complexity();

void BM_Propagate(benchmark::State& state) {
  const auto config = make_config(40);
  pbgl::PropagateOptions options;
  options.t_end = 5.0;
  options.samples = 50;
  for (auto _ : state) {
    auto result = pbgl::propagate(config, options);
    benchmark::DoNotOptimize(result.series.p1.data());
  }
}
BENCHMARK(BM_Propagate)->Unit(benchmark::kMillisecond);

void BM_DensePropagate(benchmark::State& state) {
  const auto config = make_config(10);
  for (auto _ : state) {
    auto out = pbgl::dense_propagate(config, 5.0);
    benchmark::DoNotOptimize(out.amplitudes.data());
  }
}
BENCHMARK(BM_DensePropagate)->Unit(benchmark::kMicrosecond);

void BM_BuildQuadraticGrid(benchmark::State& state) {
  pbgl::IsotropicBandEdge model;
  model.coupling_lower = 1.5;
  model = pbgl::with_rho0_from_spacing(model, 4.4e-4);
  const pbgl::TransitionFrequencies atom{-1.31, 0.0};
  for (auto _ : state) {
    auto res = pbgl::build_quadratic_grid(
        model, pbgl::QuadraticGridParams{150, 4.4e-4}, atom);
    benchmark::DoNotOptimize(res.mode_frequencies.data());
  }
}
BENCHMARK(BM_BuildQuadraticGrid)->Unit(benchmark::kMicrosecond);

void BM_ComputeShift(benchmark::State& state) {
  const pbgl::DosModel model = pbgl::IsotropicBandEdge{};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pbgl::compute_shift(
        model, pbgl::Transition::upper, -1.31, 0.0, 9.9));
  }
}
BENCHMARK(BM_ComputeShift)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
