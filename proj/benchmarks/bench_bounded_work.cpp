#include <cbw/bounded_work.hpp>
#include <cbw/oracle.hpp>

#include <benchmark/benchmark.h>

#include <vector>

namespace {

std::vector<cbw::RandomInstance> instances(std::size_t d) {
  std::vector<cbw::RandomInstance> out;
  for (std::uint64_t s = 0; s < 64; ++s) out.push_back(cbw::random_instance(s, d, {0.1, 10.0}, {0.0, 5.0}));
  return out;
}

void BM_BoundedWork(benchmark::State& state) {
  const auto set = instances(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& r = set[i++ % set.size()];
    benchmark::DoNotOptimize(cbw::c_bounded_work(r.state, r.hamiltonian(), r.ctx, r.c).value);
  }
}
BENCHMARK(BM_BoundedWork)->Arg(2)->Arg(5)->Arg(16)->Arg(64);

void BM_BoundedFormation(benchmark::State& state) {
  const auto set = instances(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& r = set[i++ % set.size()];
    benchmark::DoNotOptimize(cbw::c_bounded_formation(r.state, r.hamiltonian(), r.ctx, r.c).value);
  }
}
BENCHMARK(BM_BoundedFormation)->Arg(2)->Arg(5)->Arg(16)->Arg(64);

void BM_OracleExtraction(benchmark::State& state) {
  const auto set = instances(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& r = set[i++ % set.size()];
    benchmark::DoNotOptimize(cbw::oracle_extraction(r.state, r.hamiltonian(), r.ctx, r.c).mean);
  }
}
BENCHMARK(BM_OracleExtraction)->Arg(5)->Arg(16);

void BM_OracleFormation(benchmark::State& state) {
  const auto set = instances(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& r = set[i++ % set.size()];
    benchmark::DoNotOptimize(cbw::oracle_formation(r.state, r.hamiltonian(), r.ctx, r.c).mean);
  }
}
BENCHMARK(BM_OracleFormation)->Arg(5)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
