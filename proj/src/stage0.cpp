#include "vpa/stage0.hpp"

#include <algorithm>

namespace vpa {

namespace {

bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

bool subset(const std::vector<int>& a, const std::vector<int>& sorted_b) {
  for (int x : a)
    if (!contains(sorted_b, x)) return false;
  return true;
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<int> KernelRecord::s_star_jobs() const {
  std::vector<int> out = dec.final_kernel_jobs;
  out.insert(out.end(), dec.prefix_jobs.begin(), dec.prefix_jobs.end());
  std::sort(out.begin(), out.end());
  return out;
}

long Diagnostics::total() const {
  return s_star_overlaps + foreign_new_kernel_jobs + updates_over_n + partition_breaks +
         stage2_iteration_overruns + same_kernel_breaks + safety_valve;
}

int JobPartition::nu() const { return static_cast<int>(type1().size()); }

std::vector<int> JobPartition::type1() const {
  std::vector<int> out = type11;
  for (const auto& [k, v] : type12) out.insert(out.end(), v.begin(), v.end());
  for (const auto& [k, v] : type13) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool JobPartition::is_total(int n) const {
  std::vector<int> count(n + 1, 0);
  auto add = [&](const std::vector<int>& v) {
    for (int x : v) {
      if (x < 1 || x > n) return false;
      ++count[x];
    }
    return true;
  };
  bool ok = add(type11) && add(type4);
  for (const auto* m : {&type12, &type13, &type2, &type3})
    for (const auto& [k, v] : *m) ok = ok && add(v);
  for (int i = 1; i <= n; ++i) ok = ok && count[i] == 1;
  return ok;
}

JobPartition Configuration::partition(int n) const {
  JobPartition part;
  part.type11 = type11;
  for (const KernelRecord& k : kernels) {
    part.type12[k.index] = k.dec.omitted;
    std::sort(part.type12[k.index].begin(), part.type12[k.index].end());
    part.type13[k.index] = k.type13;
    part.type2[k.index] = k.dec.final_kernel_jobs;
    part.type3[k.index] = k.dec.prefix_jobs;
  }
  part.type4 = type4(n);
  return part;
}

std::vector<JobLabel> Configuration::labels(int n) const {
  std::vector<JobLabel> out(n + 1);
  for (int j : type11) out[j] = JobLabel{JobType::T11, -1};
  for (std::size_t pos = 0; pos < kernels.size(); ++pos) {
    const KernelRecord& k = kernels[pos];
    int kp = static_cast<int>(pos);
    for (int j : k.dec.omitted) out[j] = JobLabel{JobType::T12, kp};
    for (int j : k.type13) out[j] = JobLabel{JobType::T13, kp};
    for (int j : k.dec.final_kernel_jobs) out[j] = JobLabel{JobType::T2, kp};
    for (int j : k.dec.prefix_jobs) out[j] = JobLabel{JobType::T3, kp};
  }
  return out;
}

std::vector<int> Configuration::type1() const {
  std::vector<int> out = type11;
  for (const KernelRecord& k : kernels) {
    out.insert(out.end(), k.dec.omitted.begin(), k.dec.omitted.end());
    out.insert(out.end(), k.type13.begin(), k.type13.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Configuration::type4(int n) const {
  std::vector<char> used(n + 1, 0);
  for (int j : type11) used[j] = 1;
  for (const KernelRecord& k : kernels) {
    for (int j : k.dec.omitted) used[j] = 1;
    for (int j : k.type13) used[j] = 1;
    for (int j : k.dec.final_kernel_jobs) used[j] = 1;
    for (int j : k.dec.prefix_jobs) used[j] = 1;
  }
  std::vector<int> out;
  for (int j = 1; j <= n; ++j)
    if (!used[j]) out.push_back(j);
  return out;
}

void Configuration::sort_kernels() {
  std::stable_sort(kernels.begin(), kernels.end(), [](const KernelRecord& a, const KernelRecord& b) {
    return a.dec.span_start() < b.dec.span_start();
  });
}

InitialKernels initial_kernels(const Instance& inst) {
  InitialKernels out;
  Floors floors = no_floors(inst);
  Schedule s = ldt_build(inst, floors);
  out.schedules.push_back(s);
  out.floors.push_back(floors);
  std::vector<char> recorded(inst.n() + 1, 0);
  while (true) {
    KernelContext k = find_kernels(inst, s, floors).front();
    bool meets = false;
    for (int j : k.jobs) meets = meets || recorded[j];
    if (meets) break;
    for (int j : k.jobs) recorded[j] = 1;
    out.kernels.push_back(k);
    if (!k.delaying) break;
    if (static_cast<int>(out.kernels.size()) > inst.n()) break;
    floors = activate(inst, floors, k, *k.delaying);
    s = ldt_build(inst, floors);
    out.schedules.push_back(s);
    out.floors.push_back(floors);
  }
  return out;
}

JobPartition classify(const Instance& inst, const InitialKernels& init, Configuration& config) {
  config = Configuration{};
  config.sigma_start.assign(inst.n() + 1, 0);
  for (const Entry& e : init.schedules.front().entries) config.sigma_start[e.job] = e.start;
  std::vector<int> emerging;
  for (const KernelContext& k : init.kernels) {
    KernelRecord rec;
    rec.index = config.next_index++;
    rec.jobs = k.jobs;
    std::sort(rec.jobs.begin(), rec.jobs.end());
    rec.dec = decompose(inst, rec.jobs, k.overflow);
    config.kernels.push_back(std::move(rec));
    emerging.insert(emerging.end(), k.emerging.begin(), k.emerging.end());
  }
  std::vector<char> in_kernel(inst.n() + 1, 0);
  for (const KernelRecord& k : config.kernels) {
    for (int j : k.jobs) in_kernel[j] = 1;
  }
  sort_unique(emerging);
  for (int j : emerging)
    if (!in_kernel[j]) config.type11.push_back(j);
  config.sort_kernels();
  return config.partition(inst.n());
}

Schedule compose_sigma234(const Instance& inst, const Configuration& config, Diagnostics* diag) {
  const auto& ks = config.kernels;
  std::vector<std::vector<int>> groups(ks.size() + 1);
  for (int j : config.type4(inst.n())) {
    std::size_t g = 0;
    for (const KernelRecord& k : ks)
      if (k.dec.span_start() <= config.sigma_start[j]) ++g;
    groups[g].push_back(j);
  }
  std::vector<std::pair<int, Time>> wanted;
  std::vector<char> movable(inst.n() + 1, 0);
  for (std::size_t g = 0; g <= ks.size(); ++g) {
    Time t0 = g == 0 ? 0 : ks[g - 1].dec.span_end();
    if (!groups[g].empty()) {
      for (const Entry& e : ldt_build_subset(inst, groups[g], {}, t0).entries) {
        wanted.emplace_back(e.job, e.start);
        movable[e.job] = 1;
      }
    }
    if (g < ks.size())
      for (const Entry& e : ks[g].dec.s_star.entries) wanted.emplace_back(e.job, e.start);
  }
  Schedule s = compose(inst, wanted);
  if (diag)
    for (std::size_t k = 0; k < wanted.size(); ++k)
      if (!movable[wanted[k].first] && s.entries[k].start != wanted[k].second) ++diag->s_star_overlaps;
  return s;
}

int find_new_kernel(const Instance&, const Configuration& config,
                    const std::vector<KernelContext>& kernels) {
  std::vector<std::vector<int>> covers;
  for (const KernelRecord& k : config.kernels) covers.push_back(k.s_star_jobs());
  for (std::size_t x = 0; x < kernels.size(); ++x) {
    bool covered = false;
    for (const auto& c : covers) covered = covered || subset(kernels[x].jobs, c);
    if (!covered) return static_cast<int>(x);
  }
  return -1;
}

UpdateResult update_configuration(const Instance& inst, Configuration& config,
                                  const KernelContext& new_kernel, Phase phase, Diagnostics* diag) {
  UpdateResult res;
  const int n = inst.n();
  std::vector<int> t4 = config.type4(n);
  std::vector<char> is4(n + 1, 0);
  for (int j : t4) is4[j] = 1;
  std::vector<int> jobs;
  for (int j : new_kernel.jobs) {
    if (is4[j])
      jobs.push_back(j);
    else if (diag)
      ++diag->foreign_new_kernel_jobs;
  }
  if (jobs.empty()) return res;
  std::sort(jobs.begin(), jobs.end());
  KernelRecord rec;
  rec.index = config.next_index++;
  rec.jobs = jobs;
  rec.dec = decompose(inst, jobs, new_kernel.overflow);
  std::vector<int> em;
  for (int e : new_kernel.emerging)
    if (is4[e] && !contains(jobs, e)) em.push_back(e);
  if (new_kernel.delaying && is4[*new_kernel.delaying] && !contains(jobs, *new_kernel.delaying))
    em.push_back(*new_kernel.delaying);
  sort_unique(em);
  if (phase == Phase::Stage0) {
    config.type11.insert(config.type11.end(), em.begin(), em.end());
    sort_unique(config.type11);
  } else {
    rec.type13 = em;
  }
  res.recorded = true;
  res.new_type1 = rec.dec.omitted;
  res.new_type1.insert(res.new_type1.end(), em.begin(), em.end());
  sort_unique(res.new_type1);
  config.kernels.push_back(std::move(rec));
  config.sort_kernels();
  ++config.updates;
  if (diag) {
    if (config.updates > n) ++diag->updates_over_n;
    if (!config.partition(n).is_total(n)) ++diag->partition_breaks;
  }
  return res;
}

Sigma234 build_sigma234(const Instance& inst, Configuration& config, Phase phase, Diagnostics* diag) {
  Sigma234 out;
  out.schedule = compose_sigma234(inst, config, diag);
  while (true) {
    auto ks = find_kernels(inst, out.schedule);
    int x = find_new_kernel(inst, config, ks);
    if (x < 0) break;
    UpdateResult u = update_configuration(inst, config, ks[x], phase, diag);
    if (!u.recorded) break;
    out.new_type1.insert(out.new_type1.end(), u.new_type1.begin(), u.new_type1.end());
    ++out.repairs;
    out.schedule = compose_sigma234(inst, config, diag);
    if (out.repairs > inst.n()) {
      if (diag) ++diag->safety_valve;
      break;
    }
  }
  sort_unique(out.new_type1);
  return out;
}

Stage0Result run_stage0(const Instance& inst) {
  Stage0Result res;
  res.init = initial_kernels(inst);
  JobPartition part = classify(inst, res.init, res.config);
  if (!part.is_total(inst.n())) ++res.diag.partition_breaks;
  res.sigma234 = build_sigma234(inst, res.config, Phase::Stage0, &res.diag).schedule;
  return res;
}

void write_partition(std::ostream& out, const JobPartition& part) {
  auto line = [&](const std::string& label, std::vector<int> v) {
    std::sort(v.begin(), v.end());
    out << label;
    for (int x : v) out << ' ' << x;
    out << '\n';
  };
  line("type11", part.type11);
  for (const auto* m : {&part.type12, &part.type13, &part.type2, &part.type3}) {
    std::string name = m == &part.type12 ? "type12" : m == &part.type13 ? "type13" : m == &part.type2 ? "type2" : "type3";
    for (const auto& [k, v] : *m) line(name + " K" + std::to_string(k + 1), v);
  }
  line("type4", part.type4);
}

}  // namespace vpa
