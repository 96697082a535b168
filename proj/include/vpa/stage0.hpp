#pragma once

#include <map>
#include <ostream>
#include <vector>

#include "vpa/decomposition.hpp"

namespace vpa {

struct KernelRecord {
  int index = 0;  // creation order
  std::vector<int> jobs;  // job set when recorded, ascending
  Decomposition dec;
  std::vector<int> type13;  // ascending

  // jobs of S*[K], ascending
  std::vector<int> s_star_jobs() const;
};

struct JobPartition {
  std::vector<int> type11;
  std::map<int, std::vector<int>> type12;  // keyed by kernel index
  std::map<int, std::vector<int>> type13;
  std::map<int, std::vector<int>> type2;
  std::map<int, std::vector<int>> type3;
  std::vector<int> type4;

  int nu() const;
  std::vector<int> type1() const;
  // every id in [1..n] exactly once
  bool is_total(int n) const;
};

enum class JobType { T11, T12, T13, T2, T3, T4 };

struct JobLabel {
  JobType type = JobType::T4;
  int kernel = -1;  // position in Configuration::kernels, -1 for 1.1 and 4
};

struct Diagnostics {
  long s_star_overlaps = 0;
  long foreign_new_kernel_jobs = 0;
  long updates_over_n = 0;
  long partition_breaks = 0;
  long stage2_iteration_overruns = 0;
  long same_kernel_breaks = 0;
  long safety_valve = 0;

  long total() const;
};

struct Configuration {
  std::vector<KernelRecord> kernels;  // by S*[K] start
  std::vector<int> type11;  // ascending
  std::vector<Time> sigma_start;  // start of each job in the initial LDT schedule
  int updates = 0;
  int next_index = 0;

  JobPartition partition(int n) const;
  std::vector<JobLabel> labels(int n) const;
  std::vector<int> type1() const;
  std::vector<int> type4(int n) const;
  int nu() const { return static_cast<int>(type1().size()); }
  void sort_kernels();
};

struct InitialKernels {
  std::vector<KernelContext> kernels;
  std::vector<Schedule> schedules;  // sigma^0, sigma^1, ...
  std::vector<Floors> floors;  // floors used for each schedule
};

InitialKernels initial_kernels(const Instance& inst);

JobPartition classify(const Instance& inst, const InitialKernels& init, Configuration& config);

// Merge the S*[K] and the type-4 jobs without any repair.
Schedule compose_sigma234(const Instance& inst, const Configuration& config, Diagnostics* diag = nullptr);

enum class Phase { Stage0, Later };

struct UpdateResult {
  bool recorded = false;
  std::vector<int> new_type1;  // ascending
};

// Kernel first found in host; its job set must not be covered by any S*[K].
UpdateResult update_configuration(const Instance& inst, Configuration& config,
                                  const KernelContext& new_kernel, Phase phase,
                                  Diagnostics* diag = nullptr);

// Index into find_kernels(s) of the first kernel not inside any S*[K], or -1.
int find_new_kernel(const Instance& inst, const Configuration& config,
                    const std::vector<KernelContext>& kernels);

struct Sigma234 {
  Schedule schedule;
  std::vector<int> new_type1;
  int repairs = 0;
};

// Compose, then repair while new kernels arise.
Sigma234 build_sigma234(const Instance& inst, Configuration& config, Phase phase,
                        Diagnostics* diag = nullptr);

struct Stage0Result {
  Configuration config;
  InitialKernels init;
  Schedule sigma234;
  Diagnostics diag;
};

Stage0Result run_stage0(const Instance& inst);

void write_partition(std::ostream& out, const JobPartition& part);

}  // namespace vpa
