#include <benchmark/benchmark.h>

#include <bcp/estimation.hpp>
#include <bcp/inference.hpp>
#include <bcp/montecarlo.hpp>
#include <bcp/parallel.hpp>
#include <bcp/rng.hpp>

namespace {

bcp::Scenario design(std::size_t replicas) {
  bcp::Scenario sc = *bcp::preset_scenario("a");
  sc.replicas = replicas;
  sc.n = 500;
  return sc;
}

double fit_replica(const bcp::Scenario& sc, std::size_t r) {
  const auto sim = bcp::simulate(sc.truth, sc.n, sc.burn_in, std::nullopt, bcp::derive_seed(sc.seed, 1, r));
  return bcp::fit(sim.series, sc.fit).loglik;
}

void BM_ReplicaMapSerial(benchmark::State& state) {
  const auto sc = design(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = bcp::serial_map<double>(sc.replicas, [&](std::size_t r) { return fit_replica(sc, r); });
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ReplicaMapParallel(benchmark::State& state) {
  const auto sc = design(static_cast<std::size_t>(state.range(0)));
  const int threads = bcp::default_threads();
  for (auto _ : state) {
    auto out = bcp::parallel_map<double>(sc.replicas, threads, [&](std::size_t r) { return fit_replica(sc, r); });
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = threads;
}

void BM_BootstrapSerial(benchmark::State& state) {
  const auto sc = design(1);
  const auto sim = bcp::simulate(sc.truth, sc.n, sc.burn_in, std::nullopt, 11);
  const auto f = bcp::fit(sim.series, sc.fit);
  bcp::BootstrapOptions opt;
  opt.replicas = static_cast<std::size_t>(state.range(0));
  opt.seed = 3;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(bcp::se_bootstrap(f, sim.series, sc.fit, opt));
}

void BM_BootstrapParallel(benchmark::State& state) {
  const auto sc = design(1);
  const auto sim = bcp::simulate(sc.truth, sc.n, sc.burn_in, std::nullopt, 11);
  const auto f = bcp::fit(sim.series, sc.fit);
  bcp::BootstrapOptions opt;
  opt.replicas = static_cast<std::size_t>(state.range(0));
  opt.seed = 3;
  opt.threads = bcp::default_threads();
  for (auto _ : state) benchmark::DoNotOptimize(bcp::se_bootstrap(f, sim.series, sc.fit, opt));
  state.counters["threads"] = opt.threads;
}

}  // namespace

BENCHMARK(BM_ReplicaMapSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicaMapParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapSerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapParallel)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
