#include <benchmark/benchmark.h>

#include <nlslab/bifurcation.hpp>
#include <nlslab/evolve2d.hpp>

using namespace nlslab;

namespace {

LineProblem make(std::size_t n) { return LineProblem(PotentialSpec::poschl_teller(2.0), Grid1D(n, 20.0)); }

void BM_LineProblem(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make(n).lambda_star());
}
BENCHMARK(BM_LineProblem)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SolveGround(benchmark::State& state) {
  const LineProblem problem = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_ground(problem, problem.lambda_star() + 0.01, 3.0).residual);
}
BENCHMARK(BM_SolveGround)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_TransverseGrowth(benchmark::State& state) {
  const LineProblem problem = make(static_cast<std::size_t>(state.range(0)));
  const GroundState gs = solve_ground(problem, problem.lambda_star() + 0.01, 3.0);
  const OperatorAssembly assembly = assemble(gs, problem);
  const TransverseGrowth growth(assembly);
  const double a = 0.5 * std::sqrt(internal_mode(assembly).lambda_omega);
  for (auto _ : state) benchmark::DoNotOptimize(growth.growth(a));
}
BENCHMARK(BM_TransverseGrowth)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BifurcationReport(benchmark::State& state) {
  const LineProblem problem = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bifurcation_report(problem, 3.0, problem.lambda_star() + 1e-3).R);
}
BENCHMARK(BM_BifurcationReport)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SplitStep(benchmark::State& state) {
  const LineProblem problem = make(static_cast<std::size_t>(state.range(0)));
  const GroundState gs = solve_ground(problem, problem.lambda_star() + 0.05, 3.0);
  const Grid2D grid(problem.grid(), static_cast<std::size_t>(state.range(1)), 4.0);
  SplitStepIntegrator integ(grid, problem.potential(), 3.0, false);
  ComplexVector u = extrude(gs.phi.cast<Complex>(), grid);
  for (auto _ : state) integ.advance(u, 5e-3, 10);
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_SplitStep)->Args({512, 16})->Args({1024, 64})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
