#include <doctest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "vpa/enumeration.hpp"
#include "vpa/oracle.hpp"

using namespace vpa;

namespace {

using V = std::vector<int>;

KernelRecord record(int index, V omitted, V type13 = {}) {
  KernelRecord k;
  k.index = index;
  k.dec.omitted = std::move(omitted);
  k.type13 = std::move(type13);
  return k;
}

// Kernel A holds 1.2 jobs {1,2}, kernel B holds {3}; job 4 is 1.1.
Configuration two_kernels() {
  Configuration c;
  c.kernels = {record(0, {1, 2}), record(1, {3})};
  c.type11 = {4};
  c.next_index = 2;
  return c;
}

bool is_subsequence(const V& small, const V& big) {
  std::size_t k = 0;
  for (int x : big)
    if (k < small.size() && small[k] == x) ++k;
  return k == small.size();
}

long long fact(int k) { return k <= 1 ? 1 : k * fact(k - 1); }

}  // namespace

TEST_CASE("consistency") {
  Configuration c = two_kernels();
  CHECK(is_consistent({1, 2, 3, 4}, c, 4));
  CHECK(is_consistent({4, 2, 1, 3}, c, 4));
  CHECK_FALSE(is_consistent({1, 3, 2, 4}, c, 4));
  CHECK_FALSE(is_consistent({3, 1, 2, 4}, c, 4));
  CHECK_FALSE(is_consistent({1, 4, 2, 3}, c, 4));

  // a 1.3 job of the third kernel may not precede the 1.2 block of the first
  Configuration d;
  d.kernels = {record(0, {1}), record(1, {2}), record(2, {}, {3})};
  CHECK(is_consistent({1, 2, 3}, d, 3));
  CHECK(is_consistent({1, 3, 2}, d, 3));
  CHECK_FALSE(is_consistent({3, 1, 2}, d, 3));
  // nor follow the 1.2 block of a later kernel
  Configuration e;
  e.kernels = {record(0, {}, {3}), record(1, {1}), record(2, {2})};
  CHECK(is_consistent({3, 1, 2}, e, 3));
  CHECK_FALSE(is_consistent({1, 3, 2}, e, 3));
}

TEST_CASE("offspring counts") {
  Configuration c = two_kernels();
  c.kernels[0].dec.omitted = {1, 2, 5, 6};
  c.kernels[0].type13 = {7};
  CHECK(offsprings({4, 1, 2, 3}, {5}, {}, c, 7).size() == 1);
  auto two = offsprings({4, 1, 2, 3}, {5, 6}, {7}, c, 7);
  CHECK(two.size() == 2);
  for (const Permutation& p : two) {
    CHECK(p.provenance == Provenance::Offspring);
    CHECK(is_consistent(p.order, c, 7));
  }
  CHECK_THROWS_AS(offsprings({4, 1, 2, 3}, {}, {}, c, 7), ContractError);
}

TEST_CASE("offsprings are consistent and distinct") {
  SplitMix64 rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    int kernels = static_cast<int>(rng.uniform(1, 3));
    // the target is a freshly recorded kernel with nothing in pi yet
    int target = static_cast<int>(rng.uniform(0, kernels));
    Configuration c;
    int id = 0;
    std::vector<V> blocks(kernels + 1);
    for (int k = 0; k <= kernels; ++k) {
      V om;
      if (k != target)
        for (int x = rng.uniform(1, 2); x > 0; --x) om.push_back(++id);
      blocks[k] = om;
      c.kernels.push_back(record(k, om));
    }
    // 1.1 jobs go between whole 1.2 blocks
    std::vector<V> parts(kernels + 2);
    for (int x = rng.uniform(0, 2); x > 0; --x) {
      c.type11.push_back(++id);
      parts[rng.uniform(0, kernels + 1)].push_back(id);
    }
    V pi = parts[0];
    for (int k = 0; k <= kernels; ++k) {
      pi.insert(pi.end(), blocks[k].begin(), blocks[k].end());
      pi.insert(pi.end(), parts[k + 1].begin(), parts[k + 1].end());
    }
    int alpha = static_cast<int>(rng.uniform(0, 3)), beta = static_cast<int>(rng.uniform(alpha ? 0 : 1, 2));
    V a, b;
    for (int x = 0; x < alpha; ++x) c.kernels[target].dec.omitted.push_back(a.emplace_back(++id));
    for (int x = 0; x < beta; ++x) c.kernels[target].type13.push_back(b.emplace_back(++id));
    REQUIRE(is_consistent(pi, c, id));
    auto offs = offsprings(pi, a, b, c, id);
    CHECK(static_cast<long long>(offs.size()) == fact(alpha) * fact(beta));
    std::set<V> seen;
    for (const Permutation& p : offs) {
      CHECK(is_consistent(p.order, c, id));
      CHECK(is_subsequence(pi, p.order));
      CHECK(p.order.size() == pi.size() + a.size() + b.size());
      seen.insert(p.order);
    }
    CHECK(seen.size() == offs.size());
  }
}

TEST_CASE("stage 1 on the 13-job example") {
  Instance in = fixture13();
  Stage0Result st = run_stage0(in);
  Schedule sigma = ldt_build(in);
  InitialKernels init = initial_kernels(in);

  Stage1Result a = stage1_build(in, {1, 6, 7}, st.sigma234, true);
  CHECK_FALSE(a.dominated);
  CHECK(a.schedule == sigma);
  CHECK(stage1_outcome(in, a.schedule, st.config) == OutcomeTag::Continue);

  Stage1Result b = stage1_build(in, {6, 1, 7}, st.sigma234, true);
  CHECK_FALSE(b.dominated);
  CHECK(b.schedule == init.schedules[1]);
  CHECK(stage1_outcome(in, b.schedule, st.config) == OutcomeTag::Continue);

  for (V pi : {V{1, 7, 6}, V{7, 1, 6}, V{7, 6, 1}}) CHECK(stage1_build(in, pi, st.sigma234, true).dominated);
  CHECK_FALSE(stage1_build(in, {1, 7, 6}, st.sigma234, false).dominated);
}

TEST_CASE("stage 2 on the 13-job example") {
  Instance in = fixture13();
  Stage0Result st = run_stage0(in);
  PermResult a = run_permutation(in, {1, 6, 7}, st.config, st.sigma234, SolveOptions{});
  CHECK(a.kind == PermResult::Done);
  CHECK(a.tag == OutcomeTag::ReturnBest);
  CHECK(a.stage2_iterations == 1);
  CHECK_FALSE(a.new_kernel);
  PermResult b = run_permutation(in, {6, 1, 7}, st.config, st.sigma234, SolveOptions{});
  CHECK(b.kind == PermResult::Done);
  CHECK(b.tag == OutcomeTag::ReturnBest);
  CHECK(b.best.makespan() == brute_force_opt(in).makespan);
}

TEST_CASE("steady permutation") {
  Instance in = fixture13();
  Stage0Result st = run_stage0(in);
  CHECK(steady_permutation(in, st.sigma234, st.config) == V{1, 6, 7});

  Instance late({{1, 0, 5, 1}, {2, 10, 1, 3}, {3, 10, 1, 9}, {4, 10, 1, 6}});
  Configuration c;
  c.type11 = {2, 3, 4};
  CHECK(steady_permutation(late, ldt_build_subset(late, {1}), c) == V{3, 4, 2});
  Configuration one;
  one.type11 = {2};
  CHECK(steady_permutation(late, ldt_build_subset(late, {1, 3, 4}), one) == V{2});
}

TEST_CASE("ldt respecting a permutation") {
  Instance in({{1, 0, 2, 1}, {2, 0, 2, 9}, {3, 0, 2, 5}});
  Schedule s = ldt_respecting(in, {1, 3}, {});
  CHECK(s.order() == V{2, 1, 3});
  CHECK(ldt_respecting(in, {3, 1}, {}).order() == V{2, 3, 1});
}

TEST_CASE("solve the 13-job example") {
  Instance in = fixture13();
  SolveReport r = solve(in);
  CHECK(r.makespan == brute_force_opt(in).makespan);
  CHECK(r.makespan == 66);
  CHECK(r.nu == 3);
  CHECK(r.permutations_examined == 2);
  CHECK(r.examined == std::vector<V>{{1, 6, 7}, {6, 1, 7}});
  CHECK(r.steady == V{1, 6, 7});
  CHECK(is_feasible(in, r.best));
  CHECK(r.best.size() == 13);
}

TEST_CASE("solve without conflicts") {
  Instance in({{1, 0, 3, 9}, {2, 0, 2, 5}, {3, 1, 4, 2}});
  SolveReport r = solve(in);
  CHECK(r.optimal_at_stage0);
  CHECK(r.permutations_examined == 0);
  CHECK(r.makespan == brute_force_opt(in).makespan);
}

TEST_CASE("schedule tie order") {
  Instance in({{1, 0, 1, 0}, {2, 0, 1, 0}});
  Schedule a = compose(in, {{1, 0}, {2, 5}});
  Schedule b = compose(in, {{2, 0}, {1, 5}});
  CHECK(better_schedule(a, b));
  CHECK_FALSE(better_schedule(b, a));
  CHECK_FALSE(better_schedule(a, a));
}

TEST_CASE("parallel and serial runs agree") {
  for (const Instance& in : test::sample(150, 5, 30, 6)) {
    SolveOptions so, po;
    po.parallel = true;
    po.batch = 4;
    SolveReport s = solve(in, so), p = solve(in, po);
    CHECK(s.makespan == p.makespan);
    CHECK(s.best == p.best);
    CHECK(s.examined == p.examined);
    CHECK(s.permutations_examined == p.permutations_examined);
    CHECK(s.permutations_filtered_dominated == p.permutations_filtered_dominated);
    CHECK(s.permutations_filtered_inconsistent == p.permutations_filtered_inconsistent);
    CHECK(s.complete_schedules == p.complete_schedules);
    CHECK(s.diag.total() == p.diag.total());
  }
}

TEST_CASE("solve is exact on small instances") {
  for (const Instance& in : test::sample(200, 2, 9, 2718)) {
    SolveReport r = solve(in);
    REQUIRE(is_feasible(in, r.best));
    CHECK(r.makespan == r.best.makespan());
    CHECK(r.makespan == brute_force_opt(in).makespan);
  }
}

TEST_CASE("dominance does not change the optimum") {
  for (const Instance& in : test::sample(200, 2, 9, 1618)) {
    SolveOptions off;
    off.dominance = false;
    SolveReport a = solve(in), b = solve(in, off);
    CHECK(a.makespan == b.makespan);
    CHECK(a.permutations_examined <= b.permutations_examined);
  }
}

TEST_CASE("runtime assertions stay silent") {
  for (const Instance& in : test::sample(200, 2, 9, 1414)) {
    SolveReport r = solve(in);
    CHECK(r.diag.stage2_iteration_overruns == 0);
    CHECK(r.diag.same_kernel_breaks == 0);
    CHECK(r.diag.partition_breaks == 0);
    CHECK(r.diag.updates_over_n == 0);
  }
}
