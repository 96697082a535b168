#include <benchmark/benchmark.h>

#include "vpa/bench.hpp"

namespace {

// instances whose type-1 set is large enough to make enumeration dominate
std::vector<vpa::Instance> workload(int n, int count) {
  std::vector<vpa::Instance> out;
  for (std::uint64_t seed = 1; static_cast<int>(out.size()) < count && seed < 5000; ++seed) {
    vpa::Instance inst = vpa::generate_instance(n, seed, vpa::bench_ranges(n));
    int nu = vpa::run_stage0(inst).config.nu();
    if (nu >= 6 && nu <= 8) out.push_back(inst);
  }
  return out;
}

void solve_all(benchmark::State& state, bool parallel, bool dominance) {
  static const auto insts = workload(40, 4);
  vpa::SolveOptions opt;
  opt.parallel = parallel;
  opt.dominance = dominance;
  for (auto _ : state)
    for (const auto& inst : insts) benchmark::DoNotOptimize(vpa::solve(inst, opt).makespan);
  state.counters["instances"] = static_cast<double>(insts.size());
}

void BM_SolveSerial(benchmark::State& s) { solve_all(s, false, true); }
void BM_SolveParallel(benchmark::State& s) { solve_all(s, true, true); }
void BM_SolveSerialNoDominance(benchmark::State& s) { solve_all(s, false, false); }
void BM_SolveParallelNoDominance(benchmark::State& s) { solve_all(s, true, false); }

void trials(benchmark::State& state, bool parallel) {
  vpa::BenchOptions bo;
  bo.sizes = {static_cast<int>(state.range(0))};
  bo.trials = 16;
  bo.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(vpa::run_bench(bo).size());
}

void BM_TrialsSerial(benchmark::State& s) { trials(s, false); }
void BM_TrialsParallel(benchmark::State& s) { trials(s, true); }

}  // namespace

BENCHMARK(BM_SolveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolveSerialNoDominance)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveParallelNoDominance)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrialsSerial)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
