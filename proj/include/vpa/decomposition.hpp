#pragma once

#include <optional>
#include <vector>

#include "vpa/schedule.hpp"

namespace vpa {

struct Decomposition {
  std::vector<int> kernel_jobs;  // input set, ascending
  Schedule s_star;
  std::vector<int> omitted;  // peeling order
  std::vector<int> final_kernel_jobs;  // ascending
  std::vector<int> prefix_jobs;  // ascending
  int overflow = 0;
  int iterations = 0;

  Time span_start() const { return s_star.entries.front().start; }
  Time span_end() const { return s_star.entries.back().completion(); }
};

// prev_overflow is the overflow job of the kernel in its host schedule.
Decomposition decompose(const Instance& inst, const std::vector<int>& kernel_jobs,
                        std::optional<int> prev_overflow = std::nullopt);

Time s_star_lower_bound(const Decomposition& d);

}  // namespace vpa
