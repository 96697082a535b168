#include "vpa/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>

#include "vpa/oracle.hpp"

namespace vpa {

Ranges bench_ranges(int n) { return Ranges{15LL * n, 20, 10LL * n}; }

BenchRow bench_one(const Instance& inst, int n, std::uint64_t seed, const BenchOptions& opt) {
  using clock = std::chrono::steady_clock;
  BenchRow row;
  row.n = n;
  row.seed = seed;
  auto t0 = clock::now();
  Stage0Result st0 = run_stage0(inst);
  auto t1 = clock::now();
  row.stage0_millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
  SolveOptions so;
  so.nu_max = opt.nu_cap;
  so.max_permutations = opt.max_permutations;
  SolveReport rep = solve(inst, so);
  auto t2 = clock::now();
  row.runtime_millis = std::chrono::duration_cast<std::chrono::milliseconds>(t2 - t1).count();
  row.nu = rep.nu_stage0;
  row.permutations_examined = rep.permutations_examined;
  row.complete_schedules = rep.complete_schedules;
  row.optimal_at_stage0 = rep.optimal_at_stage0;
  row.aborted = rep.aborted;
  row.makespan = rep.makespan;
  if (n <= opt.oracle_cap) {
    row.oracle_checked = true;
    row.oracle_match = brute_force_opt(inst, opt.oracle_cap).makespan == rep.makespan;
  }
  return row;
}

std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  struct Task {
    int n;
    std::uint64_t seed;
    bool fixture;
  };
  std::vector<Task> tasks;
  for (int n : opt.sizes)
    for (int t = 0; t < opt.trials; ++t)
      tasks.push_back(Task{n, opt.seed0 + static_cast<std::uint64_t>(t), opt.inject_fixture && n == 13 && t == 0});
  std::vector<BenchRow> rows(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
  for (long long k = 0; k < static_cast<long long>(tasks.size()); ++k) {
    const Task& tk = tasks[k];
    Instance inst = tk.fixture ? fixture13()
                               : generate_instance(tk.n, tk.seed, opt.ranges.value_or(bench_ranges(tk.n)));
    rows[k] = bench_one(inst, tk.n, tk.seed, opt);
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool aggregates) {
  out << "n,seed,nu,nu_over_n,perms,schedules,millis,stage0_optimal,oracle_match\n";
  char buf[32];
  std::map<int, std::vector<double>> ratios;
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.nu_over_n());
    out << r.n << ',' << r.seed << ',' << r.nu << ',' << buf << ',' << r.permutations_examined << ','
        << r.complete_schedules << ',' << r.runtime_millis << ',' << (r.optimal_at_stage0 ? 1 : 0) << ','
        << (r.oracle_checked ? (r.oracle_match ? "1" : "0") : "na") << '\n';
    ratios[r.n].push_back(r.nu_over_n());
  }
  if (!aggregates) return;
  for (auto& [n, v] : ratios) {
    std::sort(v.begin(), v.end());
    double mean = 0;
    for (double x : v) mean += x;
    mean /= v.size();
    double med = v.size() % 2 ? v[v.size() / 2] : (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2;
    std::snprintf(buf, sizeof buf, "%.6f", mean);
    out << "# n=" << n << " mean_nu_over_n=" << buf;
    std::snprintf(buf, sizeof buf, "%.6f", med);
    out << " median_nu_over_n=" << buf << '\n';
  }
}

}  // namespace vpa
