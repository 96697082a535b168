#include "vpa/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace vpa {

Time preemptive_lb(const Instance& inst, const std::vector<int>& jobs, Time t0) {
  std::vector<std::pair<Time, int>> rel;
  rel.reserve(jobs.size());
  for (int j : jobs) rel.emplace_back(std::max(inst.r(j), t0), j);
  std::sort(rel.begin(), rel.end());
  std::vector<Time> left(inst.n() + 1, 0);
  for (int j : jobs) left[j] = inst.p(j);
  std::priority_queue<std::pair<Time, int>> avail;  // (q, -id)
  std::size_t i = 0;
  Time t = t0, m = 0;
  while (i < rel.size() || !avail.empty()) {
    if (avail.empty()) t = std::max(t, rel[i].first);
    while (i < rel.size() && rel[i].first <= t) {
      avail.emplace(inst.q(rel[i].second), -rel[i].second);
      ++i;
    }
    int j = -avail.top().second;
    Time next = i < rel.size() ? rel[i].first : std::numeric_limits<Time>::max();
    Time run = std::min(left[j], next - t);
    t += run;
    left[j] -= run;
    if (left[j] == 0) {
      avail.pop();
      m = std::max(m, t + inst.q(j));
    }
  }
  return m;
}

Time preemptive_lb(const Instance& inst) {
  std::vector<int> all;
  for (const Job& j : inst.jobs()) all.push_back(j.id);
  return preemptive_lb(inst, all, 0);
}

namespace {

struct Search {
  const Instance& inst;
  bool prune;
  std::vector<int> rem;
  std::vector<int> order;
  std::vector<int> best_order;
  Time best = std::numeric_limits<Time>::max();
  long long leaves = 0;

  void run(Time t, Time m) {
    if (rem.empty()) {
      ++leaves;
      if (m < best) {
        best = m;
        best_order = order;
      }
      return;
    }
    if (prune && std::max(m, preemptive_lb(inst, rem, t)) >= best) return;
    // a job that could finish before j starts makes j-first redundant
    Time horizon = std::numeric_limits<Time>::max();
    if (prune)
      for (int k : rem) horizon = std::min(horizon, std::max(t, inst.r(k)) + inst.p(k));
    std::vector<int> here = rem;
    for (int j : here) {
      Time st = std::max(t, inst.r(j));
      if (prune && st >= horizon) continue;
      Time c = st + inst.p(j);
      rem.erase(std::find(rem.begin(), rem.end(), j));
      order.push_back(j);
      run(c, std::max(m, c + inst.q(j)));
      order.pop_back();
      rem.insert(std::lower_bound(rem.begin(), rem.end(), j), j);
    }
  }
};

}  // namespace

OracleResult brute_force_opt(const Instance& inst, int cap, bool prune) {
  const int n = inst.n();
  if (!prune) cap = std::min(cap, kExhaustiveCap);
  if (n > cap) throw CapacityError("instance has " + std::to_string(n) + " jobs, cap is " + std::to_string(cap));
  Search s{inst, prune, {}, {}, {}};
  for (const Job& j : inst.jobs()) s.rem.push_back(j.id);
  std::sort(s.rem.begin(), s.rem.end());
  if (prune) {
    Schedule h = ldt_build(inst);
    s.best = h.makespan() + 1;
    s.best_order = h.order();
  }
  s.run(0, 0);
  OracleResult res;
  res.orders_explored = s.leaves;
  std::vector<std::pair<int, Time>> wanted;
  for (int j : s.best_order) wanted.emplace_back(j, inst.r(j));
  res.witness = compose(inst, wanted);
  res.makespan = res.witness.makespan();
  return res;
}

}  // namespace vpa
