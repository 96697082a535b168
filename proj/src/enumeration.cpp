#include "vpa/enumeration.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vpa {

namespace {

bool is_type1(JobType t) { return t == JobType::T11 || t == JobType::T12 || t == JobType::T13; }

long long factorial_capped(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) {
    if (f > (1LL << 62) / i) return 1LL << 62;
    f *= i;
  }
  return f;
}

}  // namespace

bool is_consistent(const std::vector<int>& pi, const Configuration& config, int n) {
  std::vector<JobLabel> lab = config.labels(n);
  const int K = static_cast<int>(config.kernels.size());
  std::vector<int> lo(K, -1), hi(K, -1), cnt(K, 0);
  for (int x = 0; x < static_cast<int>(pi.size()); ++x) {
    const JobLabel& l = lab[pi[x]];
    if (l.type != JobType::T12) continue;
    if (lo[l.kernel] < 0) lo[l.kernel] = x;
    hi[l.kernel] = x;
    ++cnt[l.kernel];
  }
  for (int k = 0; k < K; ++k)
    if (cnt[k] && hi[k] - lo[k] + 1 != cnt[k]) return false;
  int last = -1;
  for (int j : pi) {
    const JobLabel& l = lab[j];
    if (l.type != JobType::T12) continue;
    if (l.kernel < last) return false;
    last = l.kernel;
  }
  for (int x = 0; x < static_cast<int>(pi.size()); ++x) {
    const JobLabel& l = lab[pi[x]];
    if (l.type != JobType::T13) continue;
    for (int k = 0; k < K; ++k) {
      if (!cnt[k]) continue;
      if (k <= l.kernel - 2 && x < hi[k]) return false;
      if (k >= l.kernel + 1 && x > lo[k]) return false;
    }
  }
  return true;
}

Stage1Result stage1_build(const Instance& inst, const std::vector<int>& pi, const Schedule& sigma234,
                          bool dominance, DominanceRule rule) {
  Stage1Result res;
  Schedule s = sigma234;
  Time prev_end = 0, prev_start = 0;
  for (std::size_t x = 0; x < pi.size(); ++x) {
    int i = pi[x];
    Time r = inst.r(i);
    Time at = earliest_idle(s, std::max(r, prev_end));
    Schedule cand = insert_at(inst, s, i, at);
    if (dominance && x > 0) {
      // earliest gap before the previous type-1 job that can take i earlier
      Time t = 0;
      for (const Entry& e : s.entries) {
        Time a = t, b = std::min(e.start, prev_start);
        Time y = std::max(a, r);
        if (a < b && y < b) {
          Schedule swap = insert_at(inst, s, i, y);
          Time ref = rule == DominanceRule::AgainstInsertion ? cand.makespan() : s.makespan();
          if (swap.makespan() <= ref) {
            res.dominated = true;
            res.dominated_at = static_cast<int>(x);
            return res;
          }
          break;
        }
        if (e.start >= prev_start) break;
        t = std::max(t, e.completion());
      }
    }
    s = std::move(cand);
    prev_start = at;
    prev_end = at + inst.p(i);
  }
  res.schedule = std::move(s);
  return res;
}

Schedule ldt_respecting(const Instance& inst, const std::vector<int>& pi, const Floors& floors) {
  const int n = inst.n();
  std::vector<char> t1(n + 1, 0);
  for (int j : pi) t1[j] = 1;
  std::vector<std::pair<Time, int>> rel;
  for (const Job& j : inst.jobs())
    if (!t1[j.id]) rel.emplace_back(effective_release(inst, floors, j.id), j.id);
  std::sort(rel.begin(), rel.end());
  auto key = [&](int j) { return std::make_tuple(inst.q(j), -inst.p(j), -j); };
  auto cmp = [&](int a, int b) { return key(a) < key(b); };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> avail(cmp);
  std::size_t i = 0, nx = 0;
  Time t = 0;
  Schedule s;
  while (i < rel.size() || !avail.empty() || nx < pi.size()) {
    while (i < rel.size() && rel[i].first <= t) avail.push(rel[i++].second);
    int cand = 0;
    if (!avail.empty()) cand = avail.top();
    bool take_pi = false;
    if (nx < pi.size() && effective_release(inst, floors, pi[nx]) <= t)
      take_pi = cand == 0 || key(pi[nx]) > key(cand);
    if (cand == 0 && !take_pi) {
      Time nt = i < rel.size() ? rel[i].first : -1;
      if (nx < pi.size()) {
        Time rp = effective_release(inst, floors, pi[nx]);
        nt = nt < 0 ? rp : std::min(nt, rp);
      }
      t = std::max(t, nt);
      continue;
    }
    int j = take_pi ? pi[nx++] : cand;
    if (!take_pi) avail.pop();
    s.entries.push_back(Entry{j, t, inst.p(j), inst.q(j)});
    t += inst.p(j);
  }
  return s;
}

std::vector<int> steady_permutation(const Instance& inst, const Schedule& sigma234,
                                    const Configuration& config) {
  std::vector<int> rem = config.type1();
  Schedule s = sigma234;
  while (!rem.empty()) {
    Time mr = inst.r(rem.front());
    for (int j : rem) mr = std::min(mr, inst.r(j));
    Time t = earliest_idle(s, mr);
    int best = 0;
    for (int j : rem) {
      if (inst.r(j) > t) continue;
      if (best == 0 || std::make_tuple(-inst.q(j), inst.p(j), j) < std::make_tuple(-inst.q(best), inst.p(best), best))
        best = j;
    }
    s = insert_at(inst, s, best, t);
    rem.erase(std::find(rem.begin(), rem.end(), best));
  }
  std::vector<int> t1 = config.type1();
  std::vector<int> out;
  for (const Entry& e : s.entries)
    if (std::binary_search(t1.begin(), t1.end(), e.job)) out.push_back(e.job);
  return out;
}

std::vector<Permutation> offsprings(const std::vector<int>& pi, const std::vector<int>& new12,
                                    const std::vector<int>& new13, const Configuration& config, int n) {
  if (new12.empty() && new13.empty()) throw ContractError("no new type-1 jobs");
  std::vector<JobLabel> lab = config.labels(n);
  int kp = lab[!new12.empty() ? new12.front() : new13.front()].kernel;
  std::size_t at = pi.size();
  for (std::size_t x = 0; x < pi.size(); ++x) {
    const JobLabel& l = lab[pi[x]];
    if (l.type == JobType::T12 && l.kernel > kp) {
      at = x;
      break;
    }
  }
  std::vector<int> a = new12, b = new13;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Permutation> out;
  do {
    do {
      Permutation p;
      p.provenance = Provenance::Offspring;
      p.order.assign(pi.begin(), pi.begin() + at);
      p.order.insert(p.order.end(), a.begin(), a.end());
      p.order.insert(p.order.end(), b.begin(), b.end());
      p.order.insert(p.order.end(), pi.begin() + at, pi.end());
      out.push_back(std::move(p));
    } while (std::next_permutation(b.begin(), b.end()));
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

std::vector<KernelInfo> analyze_kernels(const std::vector<KernelContext>& kernels,
                                        const Configuration& config, int n) {
  std::vector<JobLabel> lab = config.labels(n);
  std::vector<std::vector<int>> covers;
  for (const KernelRecord& k : config.kernels) covers.push_back(k.s_star_jobs());
  std::vector<KernelInfo> out;
  for (const KernelContext& k : kernels) {
    KernelInfo info;
    info.kernel = &k;
    std::vector<int> js = k.jobs;
    std::sort(js.begin(), js.end());
    for (int j : js) info.has_type1 = info.has_type1 || is_type1(lab[j].type);
    for (const KernelRecord& c : config.kernels) info.equal_set = info.equal_set || c.jobs == js;
    bool sub = false;
    for (const auto& c : covers) sub = sub || std::includes(c.begin(), c.end(), js.begin(), js.end());
    info.secondary = info.equal_set || sub;
    out.push_back(info);
  }
  return out;
}

OutcomeTag stage1_outcome(const Instance& inst, const Schedule& s, const Configuration& config) {
  auto ks = find_kernels(inst, s);
  auto info = analyze_kernels(ks, config, inst.n());
  bool any_free = false, free_pure = false;
  for (const auto& x : info)
    if (!x.kernel->delaying) {
      any_free = true;
      free_pure = free_pure || !x.has_type1;
    }
  if (any_free) return free_pure ? OutcomeTag::OptimalHalt : OutcomeTag::ReturnBest;
  for (const auto& x : info)
    if (!x.secondary && x.has_type1) return OutcomeTag::ReturnBest;
  for (const auto& x : info)
    if (!x.secondary) return OutcomeTag::Offsprings;
  return OutcomeTag::Continue;
}

bool better_schedule(const Schedule& a, const Schedule& b) {
  if (b.empty()) return !a.empty();
  if (a.empty()) return false;
  Time ma = a.makespan(), mb = b.makespan();
  if (ma != mb) return ma < mb;
  auto by_id = [](const Schedule& s) {
    std::vector<std::pair<int, Time>> v;
    for (const Entry& e : s.entries) v.emplace_back(e.job, e.start);
    std::sort(v.begin(), v.end());
    return v;
  };
  return by_id(a) < by_id(b);
}

PermResult run_permutation(const Instance& inst, const std::vector<int>& pi, const Configuration& config,
                           const Schedule& sigma234, const SolveOptions& opt) {
  PermResult res;
  const int n = inst.n();
  if (!is_consistent(pi, config, n)) {
    res.kind = PermResult::Inconsistent;
    return res;
  }
  Stage1Result st = stage1_build(inst, pi, sigma234, opt.dominance, opt.rule);
  if (st.dominated) {
    res.kind = PermResult::Dominated;
    res.dominated_at = st.dominated_at;
    return res;
  }
  std::vector<JobLabel> lab = config.labels(n);
  const int nu = static_cast<int>(pi.size());
  const int bound = std::max(1, (n - nu) * nu);
  Schedule s = std::move(st.schedule);
  Floors floors = no_floors(inst);
  std::set<std::pair<std::vector<int>, int>> activated;
  int it = 0;
  while (true) {
    ++res.schedules;
    if (better_schedule(s, res.best)) res.best = s;
    auto ks = find_kernels(inst, s, floors);
    auto info = analyze_kernels(ks, config, n);
    bool any_free = false, free_pure = false;
    for (const auto& x : info)
      if (!x.kernel->delaying) {
        any_free = true;
        free_pure = free_pure || !x.has_type1;
      }
    if (any_free) {
      res.tag = it == 0 && free_pure ? OutcomeTag::OptimalHalt : OutcomeTag::ReturnBest;
      return res;
    }
    for (const auto& x : info)
      if (!x.secondary && x.has_type1) {
        res.tag = OutcomeTag::ReturnBest;
        return res;
      }
    for (const auto& x : info)
      if (!x.secondary) {
        res.tag = OutcomeTag::Offsprings;
        res.new_kernel = *x.kernel;
        return res;
      }
    for (const auto& x : info)
      if (!x.equal_set) ++res.same_kernel_breaks;
    const KernelContext& K = *info.front().kernel;
    int l = *K.delaying;
    res.tag = OutcomeTag::ReturnBest;
    if (!is_type1(lab[l].type) && !opt.activate_non_type1) return res;
    std::vector<int> js = K.jobs;
    std::sort(js.begin(), js.end());
    if (!activated.emplace(js, l).second) return res;
    floors = activate(inst, floors, K, l);
    res.stage2_iterations = ++it;
    if (it >= bound) res.overrun = true;
    if (it > n * n) return res;
    s = ldt_respecting(inst, pi, floors);
  }
}

namespace {

// Candidate stream: front items, then the lexicographic order of the type-1 set.
class Stream {
 public:
  Stream(std::vector<std::vector<int>> front, std::vector<int> type1)
      : front_(std::move(front)), cur_(std::move(type1)) {
    std::sort(cur_.begin(), cur_.end());
    for (const auto& f : front_) seen_.insert(f);
  }

  bool next(std::vector<int>& out, bool& lex) {
    if (fi_ < front_.size()) {
      out = front_[fi_++];
      lex = false;
      return true;
    }
    while (true) {
      if (started_ && !std::next_permutation(cur_.begin(), cur_.end())) return false;
      started_ = true;
      if (!seen_.count(cur_)) break;
    }
    out = cur_;
    lex = true;
    return true;
  }

  // Drop the rest of the lexicographic subtree under cur_[0..len).
  // Returns how many unseen permutations from cur_ onwards it covered.
  long long skip_subtree(int len) {
    const int m = static_cast<int>(cur_.size()) - len;
    std::vector<int> suffix(cur_.begin() + len, cur_.end());
    // permutations of the suffix at or after the current one
    long long rank = 0;
    for (int x = 0; x < m; ++x) {
      int smaller = 0;
      for (int y = x + 1; y < m; ++y) smaller += suffix[y] < suffix[x];
      rank += smaller * factorial_capped(m - 1 - x);
    }
    long long left = factorial_capped(m) - rank;
    for (const auto& sv : seen_) {
      if (!std::equal(cur_.begin(), cur_.begin() + len, sv.begin())) continue;
      if (!std::lexicographical_compare(sv.begin() + len, sv.end(), suffix.begin(), suffix.end())) --left;
    }
    std::sort(cur_.begin() + len, cur_.end(), std::greater<int>());
    return left;
  }

 private:
  std::vector<std::vector<int>> front_;
  std::size_t fi_ = 0;
  std::vector<int> cur_;
  bool started_ = false;
  std::set<std::vector<int>> seen_;
};

void merge_diag(Diagnostics& d, const Diagnostics& o) {
  d.s_star_overlaps += o.s_star_overlaps;
  d.foreign_new_kernel_jobs += o.foreign_new_kernel_jobs;
  d.updates_over_n += o.updates_over_n;
  d.partition_breaks += o.partition_breaks;
  d.stage2_iteration_overruns += o.stage2_iteration_overruns;
  d.same_kernel_breaks += o.same_kernel_breaks;
  d.safety_valve += o.safety_valve;
}

}  // namespace

SolveReport solve(const Instance& inst, const SolveOptions& opt) {
  SolveReport rep;
  const int n = inst.n();
  Stage0Result st0 = run_stage0(inst);
  rep.diag = st0.diag;
  rep.config = st0.config;
  rep.sigma234 = st0.sigma234;
  Configuration& config = rep.config;
  Schedule sigma234 = st0.sigma234;
  rep.nu = rep.nu_stage0 = config.nu();
  if (rep.nu == 0) {
    rep.best = sigma234;
    rep.makespan = sigma234.makespan();
    rep.complete_schedules = 1;
    rep.optimal_at_stage0 = true;
    return rep;
  }
  if (opt.history_incumbent)
    for (const Schedule& h : st0.init.schedules)
      if (better_schedule(h, rep.best)) rep.best = h;

  const long long cap = opt.max_permutations > 0 ? opt.max_permutations : factorial_capped(opt.nu_max);
  auto processed = [&] {
    return rep.permutations_examined + rep.permutations_filtered_inconsistent +
           rep.permutations_filtered_dominated;
  };
  std::vector<std::vector<int>> front;
  bool steady_pending = opt.steady;
  bool done = false;
  while (!done) {
    std::vector<int> t1 = config.type1();
    rep.nu = static_cast<int>(t1.size());
    if (steady_pending) {
      std::vector<int> sp = steady_permutation(inst, sigma234, config);
      if (rep.steady.empty()) rep.steady = sp;
      if (std::find(front.begin(), front.end(), sp) == front.end()) front.push_back(sp);
    }
    if (rep.nu > opt.nu_max) {
      // too many type-1 jobs for full enumeration; only the front is tried
      rep.aborted = true;
      t1.clear();
    }
    Stream stream(front, rep.nu > opt.nu_max ? std::vector<int>{} : t1);
    front.clear();
    std::map<std::vector<int>, PermResult> cache;
    bool restart = false;
    std::vector<int> pi;
    bool lex = false;
    while (!restart && stream.next(pi, lex)) {
      if (rep.nu > opt.nu_max && lex) break;
      if (processed() >= cap) {
        rep.aborted = true;
        ++rep.diag.safety_valve;
        done = true;
        break;
      }
      PermResult r;
      auto hit = cache.find(pi);
      if (hit != cache.end()) {
        r = std::move(hit->second);
        cache.erase(hit);
      } else if (opt.parallel) {
        std::vector<std::vector<int>> batch{pi};
        Stream ahead = stream;
        std::vector<int> nx;
        bool nl;
        while (static_cast<int>(batch.size()) < std::max(1, opt.batch) && ahead.next(nx, nl)) batch.push_back(nx);
        std::vector<PermResult> out(batch.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (long long b = 0; b < static_cast<long long>(batch.size()); ++b)
          out[b] = run_permutation(inst, batch[b], config, sigma234, opt);
        cache.clear();
        for (std::size_t b = 1; b < batch.size(); ++b) cache.emplace(batch[b], std::move(out[b]));
        r = std::move(out[0]);
      } else {
        r = run_permutation(inst, pi, config, sigma234, opt);
      }
      if (r.kind == PermResult::Inconsistent) {
        ++rep.permutations_filtered_inconsistent;
        continue;
      }
      if (r.kind == PermResult::Dominated) {
        if (lex)
          rep.permutations_filtered_dominated += stream.skip_subtree(r.dominated_at + 1);
        else
          ++rep.permutations_filtered_dominated;
        continue;
      }
      ++rep.permutations_examined;
      if (rep.examined.size() < 1000) rep.examined.push_back(pi);
      rep.complete_schedules += r.schedules;
      rep.stage2_max_iterations = std::max(rep.stage2_max_iterations, r.stage2_iterations);
      if (r.overrun) ++rep.diag.stage2_iteration_overruns;
      rep.diag.same_kernel_breaks += r.same_kernel_breaks;
      if (better_schedule(r.best, rep.best)) rep.best = r.best;
      if (r.tag == OutcomeTag::OptimalHalt) {
        rep.halted_early = true;
        done = true;
        break;
      }
      if (r.tag == OutcomeTag::Offsprings && r.new_kernel) {
        if (config.updates >= n) {
          ++rep.diag.safety_valve;
          continue;
        }
        std::vector<int> before = config.type1();
        Diagnostics d;
        UpdateResult u = update_configuration(inst, config, *r.new_kernel, Phase::Later, &d);
        if (!u.recorded) {
          merge_diag(rep.diag, d);
          continue;
        }
        Sigma234 rebuilt = build_sigma234(inst, config, Phase::Later, &d);
        merge_diag(rep.diag, d);
        sigma234 = rebuilt.schedule;
        std::vector<int> after = config.type1();
        std::vector<int> added;
        std::set_difference(after.begin(), after.end(), before.begin(), before.end(), std::back_inserter(added));
        std::vector<JobLabel> lab = config.labels(n);
        std::vector<int> n12, n13;
        for (int j : added) (lab[j].type == JobType::T12 ? n12 : n13).push_back(j);
        std::vector<int> keep;
        for (int j : pi)
          if (std::binary_search(after.begin(), after.end(), j)) keep.push_back(j);
        if (added.empty()) {
          front.push_back(keep);
        } else {
          // splice each new kernel's jobs separately to keep blocks intact
          std::vector<std::vector<int>> seeds{keep};
          std::map<int, std::pair<std::vector<int>, std::vector<int>>> per_kernel;
          for (int j : n12) per_kernel[lab[j].kernel].first.push_back(j);
          for (int j : n13) per_kernel[lab[j].kernel].second.push_back(j);
          for (auto& [kp, ab] : per_kernel) {
            std::vector<std::vector<int>> next;
            for (const auto& sd : seeds)
              for (auto& o : offsprings(sd, ab.first, ab.second, config, n)) next.push_back(std::move(o.order));
            seeds = std::move(next);
          }
          for (auto& sd : seeds)
            if (std::find(front.begin(), front.end(), sd) == front.end()) front.push_back(std::move(sd));
        }
        restart = true;
      }
    }
    if (!restart) done = true;
  }
  rep.makespan = rep.best.makespan();
  return rep;
}

}  // namespace vpa
