#include "vpa/decomposition.hpp"

#include <algorithm>

namespace vpa {

Decomposition decompose(const Instance& inst, const std::vector<int>& kernel_jobs,
                        std::optional<int> prev_overflow) {
  if (kernel_jobs.empty()) throw DomainError("empty kernel");
  Decomposition d;
  d.kernel_jobs = kernel_jobs;
  std::sort(d.kernel_jobs.begin(), d.kernel_jobs.end());
  std::vector<int> rem = d.kernel_jobs;
  while (true) {
    ++d.iterations;
    Schedule s = ldt_build_subset(inst, rem);
    KernelContext k = find_kernels(inst, s).front();
    if (!k.delaying || (prev_overflow && k.overflow == *prev_overflow)) {
      d.s_star = std::move(s);
      d.overflow = k.overflow;
      d.final_kernel_jobs = k.jobs;
      std::sort(d.final_kernel_jobs.begin(), d.final_kernel_jobs.end());
      for (int j : rem)
        if (!std::binary_search(d.final_kernel_jobs.begin(), d.final_kernel_jobs.end(), j))
          d.prefix_jobs.push_back(j);
      return d;
    }
    d.omitted.push_back(*k.delaying);
    rem.erase(std::find(rem.begin(), rem.end(), *k.delaying));
    prev_overflow = k.overflow;
  }
}

Time s_star_lower_bound(const Decomposition& d) { return d.s_star.makespan(); }

}  // namespace vpa
