#pragma once

#include <algorithm>
#include <vector>

#include "vpa/instance.hpp"
#include "vpa/schedule.hpp"

namespace vpa::test {

// Plain O(n^2) LDT replay used as an independent reference.
inline std::vector<std::pair<int, Time>> naive_ldt(const Instance& inst, const std::vector<int>& jobs,
                                                   const Floors& floors = {}) {
  auto rel = [&](int j) { return floors.empty() ? inst.r(j) : std::max(inst.r(j), floors[j]); };
  std::vector<int> left = jobs;
  std::vector<std::pair<int, Time>> out;
  Time t = 0;
  while (!left.empty()) {
    int pick = -1;
    for (int j : left) {
      if (rel(j) > t) continue;
      if (pick < 0 || inst.q(j) > inst.q(pick) ||
          (inst.q(j) == inst.q(pick) && (inst.p(j) < inst.p(pick) || (inst.p(j) == inst.p(pick) && j < pick))))
        pick = j;
    }
    if (pick < 0) {
      Time next = rel(left.front());
      for (int j : left) next = std::min(next, rel(j));
      t = next;
      continue;
    }
    out.emplace_back(pick, t);
    t += inst.p(pick);
    left.erase(std::find(left.begin(), left.end(), pick));
  }
  return out;
}

inline std::vector<int> all_jobs(const Instance& inst) {
  std::vector<int> v;
  for (int j = 1; j <= inst.n(); ++j) v.push_back(j);
  return v;
}

inline std::vector<std::pair<int, Time>> pairs(const Schedule& s) {
  std::vector<std::pair<int, Time>> out;
  for (const Entry& e : s.entries) out.emplace_back(e.job, e.start);
  return out;
}

inline Time full_of(const Schedule& s, int job) {
  for (const Entry& e : s.entries)
    if (e.job == job) return e.full();
  return -1;
}

// Mixed families, tight to loose release windows.
inline std::vector<Instance> sample(int count, int n_lo, int n_hi, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Instance> out;
  for (int k = 0; k < count; ++k) {
    int n = static_cast<int>(rng.uniform(n_lo, n_hi));
    Ranges r;
    switch (rng.uniform(0, 3)) {
      case 0: r = {20, 10, 20}; break;
      case 1: r = {50, 15, 50}; break;
      case 2: r = {10LL * n, 20, 40}; break;
      default: r = {5LL * n, 10, 30}; break;
    }
    out.push_back(generate_instance(n, rng.next(), r));
  }
  return out;
}

}  // namespace vpa::test
