#include "vpa/schedule.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace vpa {

Time Schedule::makespan() const {
  Time m = 0;
  for (const Entry& e : entries) m = std::max(m, e.full());
  return m;
}

std::vector<int> Schedule::order() const {
  std::vector<int> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) out.push_back(e.job);
  return out;
}

std::vector<Time> Schedule::starts() const {
  std::vector<Time> out;
  out.reserve(entries.size());
  for (const Entry& e : entries) out.push_back(e.start);
  return out;
}

int Schedule::position(int job) const {
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (entries[k].job == job) return static_cast<int>(k);
  return -1;
}

bool Schedule::operator==(const Schedule& o) const {
  if (entries.size() != o.entries.size()) return false;
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (entries[k].job != o.entries[k].job || entries[k].start != o.entries[k].start) return false;
  return true;
}

Time effective_release(const Instance& inst, const Floors& floors, int job) {
  Time r = inst.r(job);
  if (!floors.empty()) r = std::max(r, floors[job]);
  return r;
}

Floors no_floors(const Instance& inst) { return Floors(inst.n() + 1, 0); }

namespace {

struct Pick {
  Time q, p;
  int id;
  bool operator<(const Pick& o) const {
    // max q, then min p, then min id
    return std::tie(q, o.p, o.id) < std::tie(o.q, p, id);
  }
};

}  // namespace

Schedule ldt_build_subset(const Instance& inst, const std::vector<int>& jobs, const Floors& floors,
                          Time t0) {
  std::vector<std::pair<Time, int>> rel;
  rel.reserve(jobs.size());
  for (int j : jobs) rel.emplace_back(std::max(effective_release(inst, floors, j), t0), j);
  std::sort(rel.begin(), rel.end());
  std::priority_queue<Pick> avail;
  Schedule s;
  s.entries.reserve(jobs.size());
  std::size_t i = 0;
  Time t = t0;
  while (i < rel.size() || !avail.empty()) {
    if (avail.empty()) t = std::max(t, rel[i].first);
    while (i < rel.size() && rel[i].first <= t) {
      int j = rel[i].second;
      avail.push(Pick{inst.q(j), inst.p(j), j});
      ++i;
    }
    Pick pk = avail.top();
    avail.pop();
    s.entries.push_back(Entry{pk.id, t, pk.p, pk.q});
    t += pk.p;
  }
  return s;
}

Schedule ldt_build(const Instance& inst, const Floors& floors) {
  std::vector<int> all;
  all.reserve(inst.n());
  for (const Job& j : inst.jobs()) all.push_back(j.id);
  return ldt_build_subset(inst, all, floors, 0);
}

Schedule compose(const Instance& inst, const std::vector<std::pair<int, Time>>& wanted) {
  Schedule s;
  s.entries.reserve(wanted.size());
  Time t = 0;
  for (auto [j, st] : wanted) {
    Time start = std::max(st, t);
    s.entries.push_back(Entry{j, start, inst.p(j), inst.q(j)});
    t = start + inst.p(j);
  }
  return s;
}

bool is_feasible(const Instance& inst, const Schedule& s, const Floors& floors) {
  Time t = 0;
  std::vector<char> seen(inst.n() + 1, 0);
  for (const Entry& e : s.entries) {
    if (e.job < 1 || e.job > inst.n() || seen[e.job]) return false;
    seen[e.job] = 1;
    if (e.start < effective_release(inst, floors, e.job) || e.start < t) return false;
    if (e.p != inst.p(e.job) || e.q != inst.q(e.job)) return false;
    t = e.completion();
  }
  return true;
}

std::vector<Block> find_blocks(const Schedule& s) {
  std::vector<Block> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Entry& e = s.entries[k];
    if (out.empty() || out.back().end < e.start)
      out.push_back(Block{k, k, e.start, e.completion()});
    else {
      out.back().last = k;
      out.back().end = e.completion();
    }
  }
  return out;
}

std::vector<KernelContext> find_kernels(const Instance& inst, const Schedule& s, const Floors& floors) {
  std::vector<KernelContext> out;
  const std::size_t n = s.size();
  if (n == 0) return out;
  const auto& E = s.entries;
  auto contiguous = [&](std::size_t k) { return E[k - 1].completion() == E[k].start; };
  const Time M = s.makespan();
  std::vector<std::size_t> cands;
  for (std::size_t k = 0; k < n; ++k) {
    if (E[k].full() != M) continue;
    if (k + 1 < n && contiguous(k + 1) && E[k + 1].full() == M) continue;
    cands.push_back(k);
  }
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
    std::size_t k = *it;
    if (!spans.empty() && k >= spans.back().first) continue;
    Time qo = E[k].q;
    std::size_t a = k;
    while (a > 0 && contiguous(a) && E[a - 1].q >= qo) --a;
    spans.emplace_back(a, k);
  }
  std::reverse(spans.begin(), spans.end());
  for (auto [a, k] : spans) {
    KernelContext kc;
    kc.first = a;
    kc.last = k;
    kc.overflow = E[k].job;
    Time qo = E[k].q;
    kc.min_release = effective_release(inst, floors, E[a].job);
    kc.max_release = kc.min_release;
    for (std::size_t x = a; x <= k; ++x) {
      kc.jobs.push_back(E[x].job);
      Time r = effective_release(inst, floors, E[x].job);
      kc.min_release = std::min(kc.min_release, r);
      kc.max_release = std::max(kc.max_release, r);
    }
    std::size_t b = a;
    while (b > 0 && contiguous(b)) --b;
    std::size_t c = k;
    while (c + 1 < n && contiguous(c + 1)) ++c;
    kc.block_first = b;
    kc.block_last = c;
    for (std::size_t x = b; x < a; ++x)
      if (E[x].q < qo) kc.emerging.push_back(E[x].job);
    for (std::size_t x = k + 1; x <= c; ++x)
      if (E[x].q < qo) kc.emerging_after.push_back(E[x].job);
    if (a > 0 && contiguous(a) && E[a - 1].completion() > kc.min_release) {
      kc.delaying = E[a - 1].job;
      kc.delta = E[a - 1].completion() - kc.min_release;
    }
    out.push_back(std::move(kc));
  }
  return out;
}

std::vector<Conflict> conflict_times(const Instance& inst, const Floors& floors) {
  Schedule s = ldt_build(inst, floors);
  std::vector<Conflict> out;
  std::vector<char> done(inst.n() + 1, 0);
  for (const Entry& e : s.entries) {
    done[e.job] = 1;
    int best = 0;
    for (const Job& j : inst.jobs()) {
      if (done[j.id]) continue;
      Time r = effective_release(inst, floors, j.id);
      if (r > e.start && r <= e.completion() && j.q > e.q) {
        if (best == 0 || j.q > inst.q(best) || (j.q == inst.q(best) && j.id < best)) best = j.id;
      }
    }
    if (best) out.push_back(Conflict{e.start, e.job, best});
  }
  return out;
}

Floors activate(const Instance& inst, const Floors& floors, const KernelContext& kernel, int l) {
  if (!kernel.delaying || *kernel.delaying != l)
    throw ContractError("job " + std::to_string(l) + " is not the delaying job of the kernel");
  Floors out = floors.empty() ? no_floors(inst) : floors;
  Time fl = kernel.max_release;
  out[l] = std::max(out[l], fl);
  for (int e : kernel.emerging_after) out[e] = std::max(out[e], fl);
  return out;
}

Time earliest_idle(const Schedule& s, Time x) {
  Time t = x;
  for (const Entry& e : s.entries) {
    if (e.completion() <= t) continue;
    if (e.start <= t)
      t = e.completion();
    else
      break;
  }
  return t;
}

Schedule insert_at(const Instance& inst, const Schedule& s, int job, Time x) {
  Schedule out;
  out.entries.reserve(s.size() + 1);
  bool placed = false;
  Time t = 0;
  for (const Entry& e : s.entries) {
    Entry f = e;
    if (!placed && e.start >= x) {
      out.entries.push_back(Entry{job, x, inst.p(job), inst.q(job)});
      t = x + inst.p(job);
      placed = true;
    }
    if (placed) {
      f.start = std::max(f.start, t);
      t = f.completion();
    }
    out.entries.push_back(f);
  }
  if (!placed) out.entries.push_back(Entry{job, x, inst.p(job), inst.q(job)});
  return out;
}

void write_schedule(std::ostream& out, const Schedule& s) {
  for (const Entry& e : s.entries)
    out << e.job << ' ' << e.start << ' ' << e.completion() << ' ' << e.full() << '\n';
  out << "makespan " << s.makespan() << '\n';
}

}  // namespace vpa
