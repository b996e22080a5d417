#include <benchmark/benchmark.h>

#include <random>

#include "atomchain/emission.hpp"
#include "atomchain/solver.hpp"
#include "atomchain/toeplitz.hpp"

using namespace atomchain;

namespace {

ScalarSystem transverse_system(std::size_t n, double c) {
  return assemble(ChainSpec(n, 1.0, 628.0, c), ModeSpec(pi / 2, Polarization::perpendicular),
                  Component::y);
}

void BM_DirectSolve(benchmark::State& state) {
  const auto sys = transverse_system(std::size_t(state.range(0)), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_direct(sys));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectSolve)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_GaussSeidel(benchmark::State& state) {
  const auto sys = transverse_system(std::size_t(state.range(0)), 0.3);
  SolveOptions o;
  o.method = SolveMethod::gauss_seidel;
  for (auto _ : state) benchmark::DoNotOptimize(solve_iterative(sys, o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GaussSeidel)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

std::vector<cplx> random_vector(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

void BM_MatvecNaive(benchmark::State& state) {
  const auto sys = transverse_system(std::size_t(state.range(0)), 0.3);
  const auto matrix = coupling_matrix(sys.chain, Component::y);
  const auto x = random_vector(sys.size());
  for (auto _ : state) benchmark::DoNotOptimize(matrix.apply(x));
}
BENCHMARK(BM_MatvecNaive)->RangeMultiplier(4)->Range(64, 16384);

void BM_MatvecFft(benchmark::State& state) {
  const auto sys = transverse_system(std::size_t(state.range(0)), 0.3);
  const auto matrix = coupling_matrix(sys.chain, Component::y);
  const auto x = random_vector(sys.size());
  for (auto _ : state) benchmark::DoNotOptimize(matrix.apply_fft(x));
}
BENCHMARK(BM_MatvecFft)->RangeMultiplier(4)->Range(64, 16384);

void BM_QuadratureRate(benchmark::State& state) {
  ChainSolver solver(ChainSpec(629, 1.0, 628.0, 0.1), {});
  for (auto _ : state)
    benchmark::DoNotOptimize(rate_ratio_quadrature(solver, 315, DipoleOrientation(0.6, 0.0)));
}
BENCHMARK(BM_QuadratureRate)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
