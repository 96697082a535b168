#pragma once

#include <stdexcept>
#include <vector>

#include "vpa/schedule.hpp"

namespace vpa {

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  Time makespan = 0;
  Schedule witness;
  long long orders_explored = 0;
};

constexpr int kExhaustiveCap = 10;
constexpr int kPrunedCap = 16;

// prune=false walks every order and needs n <= kExhaustiveCap.
OracleResult brute_force_opt(const Instance& inst, int cap = kPrunedCap, bool prune = true);

// Preemptive LDT over the given jobs, nothing before t0.
Time preemptive_lb(const Instance& inst, const std::vector<int>& jobs, Time t0 = 0);
Time preemptive_lb(const Instance& inst);

}  // namespace vpa
