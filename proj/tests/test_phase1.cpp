// Copyright 2026 The krsp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "krsp/phase1.hpp"

#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "krsp/oracle.hpp"

namespace krsp {
namespace {

Instance make_inst(int n, int s, int t, int k, Int bound,
                   const std::vector<std::array<int, 4>>& arcs) {
  Instance inst;
  inst.n = n;
  inst.s = s;
  inst.t = t;
  inst.k = k;
  inst.delay_bound = std::move(bound);
  for (const auto& [tail, head, cost, delay] : arcs) {
    Edge e;
    e.id = static_cast<int>(inst.edges.size());
    e.tail = tail;
    e.head = head;
    e.cost = cost;
    e.delay = delay;
    inst.edges.push_back(std::move(e));
  }
  return inst;
}

// Two routes around a cheap spine; delays force a tradeoff. Mirrors the
// fixture used in the oracle tests.
Instance detour_fixture() {
  return make_inst(5, 0, 4, 2, 2,
                   {{0, 4, 0, 0},
                    {0, 1, 0, 0},
                    {1, 2, 0, 0},
                    {2, 3, 0, 3},
                    {3, 4, 0, 0},
                    {2, 4, 3, 2},
                    {1, 4, 8, 0}});
}

// Min-delay totals via the brute oracle with cost and delay exchanged.
Int oracle_min_delay(const Instance& inst) {
  Instance swapped = inst;
  Int cost_sum = 0;
  for (Edge& e : swapped.edges) {
    std::swap(e.cost, e.delay);
    cost_sum += e.delay;
  }
  swapped.delay_bound = cost_sum;
  BruteResult r = brute_krsp(swapped);
  REQUIRE(r.feasible);
  return r.best_cost;
}

TEST_CASE("parallel edges force the obvious selections") {
  // three 0->1 edges: (cost, delay) = (2,1), (5,0), (3,4)
  Instance inst = make_inst(2, 0, 1, 2, 100,
                            {{0, 1, 2, 1}, {0, 1, 5, 0}, {0, 1, 3, 4}});
  auto cheap = min_cost_k_disjoint(inst);
  REQUIRE(cheap.has_value());
  CHECK(cheap->total_cost == 5);
  CHECK(cheap->total_delay == 5);

  auto quick = min_delay_k_disjoint(inst);
  REQUIRE(quick.has_value());
  CHECK(quick->total_delay == 1);
  CHECK(quick->total_cost == 7);

  inst.k = 3;
  auto all = min_cost_k_disjoint(inst);
  REQUIRE(all.has_value());
  CHECK(all->total_cost == 10);
  CHECK(all->paths.size() == 3);

  inst.k = 4;
  CHECK_FALSE(min_cost_k_disjoint(inst).has_value());
}

TEST_CASE("k=1 reduces to a shortest path with lexicographic ties") {
  Instance inst =
      make_inst(2, 0, 1, 1, 100, {{0, 1, 5, 9}, {0, 1, 5, 1}, {0, 1, 6, 0}});
  auto cheap = min_cost_k_disjoint(inst);
  REQUIRE(cheap.has_value());
  CHECK(cheap->paths == std::vector<std::vector<int>>{{1}});
  CHECK(cheap->total_cost == 5);
  CHECK(cheap->total_delay == 1);
}

TEST_CASE("augmentation reroutes through the shared spine") {
  // Unique zero-cost spine 0->1->2->3; the only disjoint pair must split
  // it, which the second augmentation does by cancelling 1->2.
  Instance inst = make_inst(4, 0, 3, 2, 100,
                            {{0, 1, 0, 0},
                             {1, 2, 0, 0},
                             {2, 3, 0, 0},
                             {0, 2, 3, 0},
                             {1, 3, 3, 0}});
  auto best = min_cost_k_disjoint(inst);
  REQUIRE(best.has_value());
  CHECK(best->total_cost == 6);
  CHECK(best->paths == std::vector<std::vector<int>>{{0, 4}, {3, 2}});
}

TEST_CASE("detour fixture extremes") {
  Instance inst = detour_fixture();
  auto cheap = min_cost_k_disjoint(inst);
  REQUIRE(cheap.has_value());
  CHECK(cheap->total_cost == 0);
  CHECK(cheap->total_delay == 3);

  auto quick = min_delay_k_disjoint(inst);
  REQUIRE(quick.has_value());
  CHECK(quick->total_delay == 0);
  CHECK(quick->total_cost == 8);

  CHECK(check_feasible(inst));  // bound 2 is met by the min-delay pair
  inst.delay_bound = -1;
  CHECK_FALSE(check_feasible(inst));
}

TEST_CASE("missing disjoint paths are reported, not invented") {
  Instance inst = make_inst(3, 0, 2, 2, 100, {{0, 1, 1, 1}, {1, 2, 1, 1}});
  CHECK_FALSE(min_cost_k_disjoint(inst).has_value());
  CHECK_FALSE(min_delay_k_disjoint(inst).has_value());
  CHECK_FALSE(check_feasible(inst));
  CHECK_THROWS_AS(phase1_solution(inst, Phase1Mode::kMinCost),
                  std::invalid_argument);
}

TEST_CASE("relaxation bounds the integral optimum from below") {
  Instance inst = detour_fixture();
  LpProblem lp = fractional_relaxation(inst);
  CHECK(lp.num_vars == 7);
  CHECK(lp.equalities.size() == 5);
  CHECK(lp.inequalities.size() == 1);
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  BruteResult exact = brute_krsp(inst);
  REQUIRE(exact.feasible);
  CHECK(sol.objective_value <= Rat(exact.best_cost));
  CHECK(sol.objective_value >= 0);
}

TEST_CASE("phase1 modes deliver valid starts on the detour fixture") {
  Instance inst = detour_fixture();
  PathSet cheap = phase1_solution(inst, Phase1Mode::kMinCost);
  CHECK(cheap.total_cost == 0);
  CHECK(cheap.total_delay == 3);
  CHECK(validate_path_set(inst, cheap));

  PathSet rounded = phase1_solution(inst, Phase1Mode::kLpRound);
  CHECK(validate_path_set(inst, rounded));
  BruteResult exact = brute_krsp(inst);
  CHECK(rounded.total_cost <= 2 * exact.best_cost);
  CHECK(rounded.total_delay <= 2 * inst.delay_bound);
}

TEST_CASE("random suite agrees with the oracle") {
  int feasible_seen = 0, infeasible_seen = 0, rounded_runs = 0;
  for (std::uint64_t seed = 300; seed < 380; ++seed) {
    Instance inst = gen_random_instance(5, 9, Int(4), Int(4), 2, seed);
    inst.delay_bound = Int(seed % 13);
    CAPTURE(seed);
    BruteResult exact = brute_krsp(inst);
    CHECK(check_feasible(inst) == exact.feasible);
    if (!exact.feasible) {
      ++infeasible_seen;
      continue;
    }
    ++feasible_seen;
    auto cheap = min_cost_k_disjoint(inst);
    REQUIRE(cheap.has_value());
    CHECK(cheap->total_cost <= exact.best_cost);
    CHECK(validate_path_set(inst, *cheap));

    auto quick = min_delay_k_disjoint(inst);
    REQUIRE(quick.has_value());
    CHECK(quick->total_delay == oracle_min_delay(inst));
    CHECK(validate_path_set(inst, *quick));

    LpSolution lp = solve_lp(fractional_relaxation(inst));
    REQUIRE(lp.status == LpStatus::kOptimal);
    CHECK(lp.objective_value <= Rat(exact.best_cost));

    PathSet rounded = phase1_solution(inst, Phase1Mode::kLpRound);
    ++rounded_runs;
    CHECK(validate_path_set(inst, rounded));
    CHECK(rounded.total_cost <= 2 * exact.best_cost);
    CHECK(rounded.total_delay <= 2 * inst.delay_bound);
  }
  CHECK(feasible_seen >= 15);
  CHECK(infeasible_seen >= 15);
  CHECK(rounded_runs == feasible_seen);
}

}  // namespace
}  // namespace krsp
