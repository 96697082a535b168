#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "vpa/instance.hpp"

namespace vpa {

// Release floors indexed by job id; an empty vector means no floors.
using Floors = std::vector<Time>;

class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Entry {
  int job = 0;
  Time start = 0;
  Time p = 0;
  Time q = 0;
  Time completion() const { return start + p; }
  Time full() const { return start + p + q; }
};

struct Schedule {
  std::vector<Entry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  Time makespan() const;
  std::vector<int> order() const;
  std::vector<Time> starts() const;
  // -1 when absent
  int position(int job) const;
  bool operator==(const Schedule& o) const;
};

Time effective_release(const Instance& inst, const Floors& floors, int job);
Floors no_floors(const Instance& inst);

Schedule ldt_build(const Instance& inst, const Floors& floors = {});
// LDT over a subset of jobs, nothing started before t0
Schedule ldt_build_subset(const Instance& inst, const std::vector<int>& jobs,
                          const Floors& floors = {}, Time t0 = 0);

// Entries are placed in order, each at max(wanted start, previous completion).
Schedule compose(const Instance& inst, const std::vector<std::pair<int, Time>>& wanted);

bool is_feasible(const Instance& inst, const Schedule& s, const Floors& floors = {});

struct Block {
  std::size_t first = 0;
  std::size_t last = 0;
  Time start = 0;
  Time end = 0;
};

std::vector<Block> find_blocks(const Schedule& s);

struct KernelContext {
  std::vector<int> jobs;  // schedule order
  int overflow = 0;
  std::size_t first = 0;  // positions in the schedule
  std::size_t last = 0;
  std::size_t block_first = 0;
  std::size_t block_last = 0;
  std::optional<int> delaying;
  // block jobs before the kernel with q < q_o
  std::vector<int> emerging;
  // block jobs after the kernel with q < q_o
  std::vector<int> emerging_after;
  Time delta = 0;
  Time min_release = 0;
  Time max_release = 0;
};

// Earliest kernel first.
std::vector<KernelContext> find_kernels(const Instance& inst, const Schedule& s,
                                        const Floors& floors = {});

struct Conflict {
  Time t = 0;
  int running = 0;
  int released = 0;
};

std::vector<Conflict> conflict_times(const Instance& inst, const Floors& floors = {});

Floors activate(const Instance& inst, const Floors& floors, const KernelContext& kernel, int l);

// First time >= x at which the machine is idle in s.
Time earliest_idle(const Schedule& s, Time x);
// Put job at idle time x; later jobs move right as far as needed, order kept.
Schedule insert_at(const Instance& inst, const Schedule& s, int job, Time x);

void write_schedule(std::ostream& out, const Schedule& s);

}  // namespace vpa
