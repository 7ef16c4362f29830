#include <benchmark/benchmark.h>

#include "spinvalve/chain.hpp"
#include "spinvalve/disorder.hpp"
#include "spinvalve/valve.hpp"

namespace {

using namespace spinvalve;

void BM_EigTridiag(benchmark::State& state) {
  const auto spec = ChainSpec::uniform(static_cast<int>(state.range(0)));
  const auto m = build_hamiltonian(spec, DisorderRealization::none(spec));
  for (auto _ : state) benchmark::DoNotOptimize(eig_tridiag(m));
}
BENCHMARK(BM_EigTridiag)->Arg(8)->Arg(20)->Arg(64);

void BM_Propagator(benchmark::State& state) {
  const auto spec = ChainSpec::uniform(static_cast<int>(state.range(0)));
  const auto s = eig_tridiag(build_hamiltonian(spec, DisorderRealization::none(spec)));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    benchmark::DoNotOptimize(propagator(s, t));
  }
}
BENCHMARK(BM_Propagator)->Arg(20)->Arg(64);

void BM_DesignGreedy(benchmark::State& state) {
  const auto spec = ChainSpec::uniform(20);
  for (auto _ : state)
    benchmark::DoNotOptimize(design_schedule(spec, GreedyArrival{10.0}, 20));
}
BENCHMARK(BM_DesignGreedy);

void BM_RunComposite(benchmark::State& state) {
  const auto spec = ChainSpec::uniform(20);
  const auto sched = design_schedule(spec, GreedyArrival{10.0}, 20);
  RngStream rng = RngStream::for_sample(1, 0);
  const auto real = sample_disorder({DisorderKind::UniformCoupling, 0.05}, spec, rng);
  for (auto _ : state) benchmark::DoNotOptimize(run_composite(spec, real, sched));
}
BENCHMARK(BM_RunComposite);

void BM_MonteCarlo(benchmark::State& state) {
  const auto spec = ChainSpec::uniform(20);
  const auto sched = design_schedule(spec, GreedyArrival{10.0}, 20);
  const DisorderModel model{DisorderKind::UniformCoupling, 0.05};
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo(spec, sched, model, 100, 1));
}
BENCHMARK(BM_MonteCarlo);

}  // namespace

BENCHMARK_MAIN();
