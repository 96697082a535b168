#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "vpa/oracle.hpp"
#include "vpa/schedule.hpp"

using namespace vpa;

namespace {

bool non_delay(const Instance& inst, const Schedule& s, const Floors& floors) {
  Time t = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Entry& e = s.entries[k];
    if (e.start > t) {
      for (std::size_t m = k; m < s.size(); ++m)
        if (effective_release(inst, floors, s.entries[m].job) <= t) return false;
    }
    t = e.completion();
  }
  return true;
}

}  // namespace

TEST_CASE("ldt on the 13-job example") {
  Instance in = fixture13();
  Schedule s = ldt_build(in);
  CHECK(s.makespan() == 74);
  CHECK(test::full_of(s, 6) == 74);
  CHECK(s.entries[s.position(6)].completion() == 33);
  CHECK(test::pairs(s) == test::naive_ldt(in, test::all_jobs(in)));
}

TEST_CASE("single job") {
  Instance in({{1, 5, 3, 2}});
  Schedule s = ldt_build(in);
  CHECK(s.entries.front().start == 5);
  CHECK(s.makespan() == 10);
  CHECK(find_blocks(s).size() == 1);
  auto ks = find_kernels(in, s);
  REQUIRE(ks.size() == 1);
  CHECK(ks[0].overflow == 1);
  CHECK(ks[0].jobs == std::vector<int>{1});
  CHECK_FALSE(ks[0].delaying);
}

TEST_CASE("blocks") {
  Instance in = fixture13();
  // job 7 is released at 32 and job 6 completes at 33, so there is no gap
  auto blocks = find_blocks(ldt_build(in));
  auto ref = test::naive_ldt(in, test::all_jobs(in));
  std::size_t gaps = 0;
  for (std::size_t k = 1; k < ref.size(); ++k)
    if (ref[k].second > ref[k - 1].second + in.p(ref[k - 1].first)) ++gaps;
  CHECK(blocks.size() == gaps + 1);
  CHECK(blocks.size() == 1);

  Instance tight({{1, 0, 3, 0}, {2, 0, 2, 0}, {3, 0, 1, 0}});
  CHECK(find_blocks(ldt_build(tight)).size() == 1);
  Instance split({{1, 0, 3, 0}, {2, 10, 2, 0}});
  auto b = find_blocks(ldt_build(split));
  REQUIRE(b.size() == 2);
  CHECK(b[0].end == 3);
  CHECK(b[1].start == 10);
}

TEST_CASE("kernels of the 13-job example") {
  Instance in = fixture13();
  Schedule s = ldt_build(in);
  KernelContext k = find_kernels(in, s).front();
  CHECK(k.jobs == std::vector<int>{2, 3, 4, 5, 6});
  CHECK(k.overflow == 6);
  REQUIRE(k.delaying);
  CHECK(*k.delaying == 1);
  CHECK(k.delta < in.p(1));

  Floors f1 = activate(in, {}, k, 1);
  Schedule s1 = ldt_build(in, f1);
  CHECK(test::pairs(s1) == test::naive_ldt(in, test::all_jobs(in), f1));
  KernelContext k2 = find_kernels(in, s1, f1).front();
  std::vector<int> k2jobs = k2.jobs;
  std::sort(k2jobs.begin(), k2jobs.end());
  CHECK(k2jobs == std::vector<int>{8, 9, 10, 11, 12});
  CHECK(k2.overflow == 12);
  REQUIRE(k2.delaying);
  CHECK(*k2.delaying == 7);
  // the replay puts job 12 at 60, not 59
  CHECK(s1.entries[s1.position(12)].start == 60);
  CHECK(test::full_of(s1, 12) == 71);

  Floors f17 = activate(in, f1, k2, 7);
  Schedule s17 = ldt_build(in, f17);
  CHECK(test::pairs(s17) == test::naive_ldt(in, test::all_jobs(in), f17));
  CHECK(s17.position(7) > s17.position(12));
}

TEST_CASE("activation preconditions") {
  Instance in = fixture13();
  Schedule s = ldt_build(in);
  KernelContext k = find_kernels(in, s).front();
  CHECK_THROWS_AS(activate(in, {}, k, 7), ContractError);
  Instance one({{1, 0, 2, 3}});
  KernelContext k1 = find_kernels(one, ldt_build(one)).front();
  CHECK_THROWS_AS(activate(one, {}, k1, 1), ContractError);
}

TEST_CASE("conflict times") {
  auto c = conflict_times(fixture13());
  REQUIRE(c.size() == 2);
  CHECK(c[0].t == 0);
  CHECK(c[0].running == 1);
  CHECK(c[1].running == 7);
  // job 6 completes at 33, so job 7 starts there
  CHECK(c[1].t == 33);
  CHECK(conflict_times(Instance({{1, 0, 3, 1}, {2, 0, 1, 9}, {3, 0, 2, 5}})).empty());
  // unit jobs: only a release at the right endpoint can conflict
  SplitMix64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<Job> jobs;
    for (int j = 1; j <= 8; ++j) jobs.push_back({j, rng.uniform(0, 10), 1, rng.uniform(0, 20)});
    Instance in(jobs);
    for (const Conflict& x : conflict_times(in)) CHECK(in.r(x.released) == x.t + 1);
  }
  CHECK(conflict_times(Instance({{1, 0, 1, 0}, {2, 1, 1, 5}})).size() == 1);
  CHECK(conflict_times(Instance({{1, 0, 1, 0}, {2, 2, 1, 5}})).empty());
}

TEST_CASE("insertion helpers") {
  Instance in({{1, 0, 2, 0}, {2, 5, 2, 0}, {3, 0, 4, 1}});
  Schedule s = ldt_build_subset(in, {1, 2});
  CHECK(earliest_idle(s, 0) == 2);
  CHECK(earliest_idle(s, 3) == 3);
  CHECK(earliest_idle(s, 5) == 7);
  Schedule t = insert_at(in, s, 3, 2);
  CHECK(t.order() == std::vector<int>{1, 3, 2});
  CHECK(t.starts() == std::vector<Time>{0, 2, 6});
  CHECK(is_feasible(in, t));
}

TEST_CASE("ldt invariants on random instances") {
  int checked_gap = 0;
  for (const Instance& in : test::sample(400, 2, 9, 2024)) {
    Schedule s = ldt_build(in);
    CHECK(is_feasible(in, s));
    CHECK(non_delay(in, s, {}));
    CHECK(test::pairs(s) == test::naive_ldt(in, test::all_jobs(in)));
    Time opt = brute_force_opt(in).makespan;
    CHECK(s.makespan() <= 2 * opt);
    if (conflict_times(in).empty()) CHECK(s.makespan() == opt);
    for (const KernelContext& k : find_kernels(in, s)) {
      Time qo = in.q(k.overflow);
      CHECK(k.jobs.back() == k.overflow);
      CHECK(test::full_of(s, k.overflow) == s.makespan());
      for (int j : k.jobs) CHECK(in.q(j) >= qo);
      if (k.last + 1 < s.size()) {
        const Entry& nx = s.entries[k.last + 1];
        bool gap = nx.start > s.entries[k.last].completion();
        CHECK((gap || nx.full() < s.makespan()));
      }
      if (k.delaying) {
        int l = *k.delaying;
        CHECK(k.delta < in.p(l));
        CHECK(s.makespan() - opt < in.p(l));
        ++checked_gap;
        Floors f = activate(in, {}, k, l);
        Schedule a = ldt_build(in, f);
        CHECK(non_delay(in, a, f));
        CHECK(is_feasible(in, a, f));
      }
    }
  }
  CHECK(checked_gap > 50);
}
