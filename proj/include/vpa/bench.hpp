#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "vpa/enumeration.hpp"

namespace vpa {

struct BenchOptions {
  std::vector<int> sizes;
  int trials = 30;
  std::uint64_t seed0 = 1;
  // default: r_max = 15n, p_max = 20, q_max = 10n
  std::optional<Ranges> ranges;
  int nu_cap = 12;
  int oracle_cap = 10;
  long long max_permutations = 200000;
  bool parallel = true;
  // trial 0 of size 13 is the 13-job example
  bool inject_fixture = false;
};

struct BenchRow {
  int n = 0;
  std::uint64_t seed = 0;
  int nu = 0;
  long long permutations_examined = 0;
  long long complete_schedules = 0;
  long long runtime_millis = 0;
  double stage0_millis = 0;
  bool optimal_at_stage0 = false;
  bool oracle_checked = false;
  bool oracle_match = false;
  bool aborted = false;
  Time makespan = 0;

  double nu_over_n() const { return static_cast<double>(nu) / n; }
};

Ranges bench_ranges(int n);

BenchRow bench_one(const Instance& inst, int n, std::uint64_t seed, const BenchOptions& opt);

std::vector<BenchRow> run_bench(const BenchOptions& opt);

// nu_over_n is printed with six decimals
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool aggregates = true);

}  // namespace vpa
