#pragma once

#include <optional>
#include <vector>

#include "vpa/stage0.hpp"

namespace vpa {

enum class Provenance { Root, Steady, Offspring };

struct Permutation {
  std::vector<int> order;
  Provenance provenance = Provenance::Root;
};

// What the gap-swap schedule is compared against when testing damping.
// AgainstInsertion: the schedule with the job inserted in permutation order.
// AgainstPrevious: the schedule before the job is inserted.
enum class DominanceRule { AgainstInsertion, AgainstPrevious };

struct SolveOptions {
  bool dominance = true;
  DominanceRule rule = DominanceRule::AgainstInsertion;
  bool steady = true;
  // evaluate permutations in OpenMP batches; results equal the serial run
  bool parallel = false;
  int batch = 32;
  // count the LDT schedules met during kernel discovery as candidates
  bool history_incumbent = true;
  // activate a delaying job that is not of type 1 at stage 2
  bool activate_non_type1 = false;
  // permutations examined or filtered; 0 means nu_max!
  long long max_permutations = 0;
  int nu_max = 12;
};

bool is_consistent(const std::vector<int>& pi, const Configuration& config, int n);

struct Stage1Result {
  bool dominated = false;
  int dominated_at = 0;  // 0-based position in pi
  Schedule schedule;
};

Stage1Result stage1_build(const Instance& inst, const std::vector<int>& pi, const Schedule& sigma234,
                          bool dominance, DominanceRule rule = DominanceRule::AgainstInsertion);

// LDT in which a type-1 job becomes eligible only when it is next in pi.
Schedule ldt_respecting(const Instance& inst, const std::vector<int>& pi, const Floors& floors);

std::vector<int> steady_permutation(const Instance& inst, const Schedule& sigma234,
                                    const Configuration& config);

// Orders of the new 1.2 block times orders of the new 1.3 block, spliced into pi.
std::vector<Permutation> offsprings(const std::vector<int>& pi, const std::vector<int>& new12,
                                    const std::vector<int>& new13, const Configuration& config, int n);

enum class OutcomeTag { OptimalHalt, ReturnBest, Offsprings, Continue };

struct KernelInfo {
  const KernelContext* kernel = nullptr;
  bool has_type1 = false;
  bool secondary = false;
  bool equal_set = false;
};

std::vector<KernelInfo> analyze_kernels(const std::vector<KernelContext>& kernels,
                                        const Configuration& config, int n);

// Classification of a complete schedule at stage 1.
OutcomeTag stage1_outcome(const Instance& inst, const Schedule& s, const Configuration& config);

struct PermResult {
  enum Kind { Inconsistent, Dominated, Done } kind = Done;
  int dominated_at = 0;
  OutcomeTag tag = OutcomeTag::ReturnBest;
  Schedule best;
  int schedules = 0;
  int stage2_iterations = 0;
  bool overrun = false;
  long same_kernel_breaks = 0;
  std::optional<KernelContext> new_kernel;
};

// Stage 1 and stage 2 for one permutation against a fixed configuration.
PermResult run_permutation(const Instance& inst, const std::vector<int>& pi, const Configuration& config,
                           const Schedule& sigma234, const SolveOptions& opt);

struct SolveReport {
  Schedule best;
  Time makespan = 0;
  int nu = 0;
  int nu_stage0 = 0;
  long long permutations_examined = 0;
  long long permutations_filtered_inconsistent = 0;
  long long permutations_filtered_dominated = 0;
  long long complete_schedules = 0;
  bool halted_early = false;
  bool optimal_at_stage0 = false;
  bool aborted = false;
  int stage2_max_iterations = 0;
  std::vector<int> steady;
  std::vector<std::vector<int>> examined;  // in processing order
  Configuration config;
  Schedule sigma234;
  Diagnostics diag;
};

// Smaller makespan first, then the start-time vector by job id.
bool better_schedule(const Schedule& a, const Schedule& b);

SolveReport solve(const Instance& inst, const SolveOptions& opt = {});

}  // namespace vpa
