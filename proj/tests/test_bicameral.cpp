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

#include "krsp/bicameral.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "krsp/graph.hpp"
#include "krsp/oracle.hpp"

namespace krsp {
namespace {

// Builds a residual-shaped multigraph in place; weights may be negative.
ResidualGraph raw_graph(Instance* shell, int n,
                        std::vector<std::tuple<int, int, int, int>> arcs) {
  shell->n = n;
  shell->s = 0;
  shell->t = n - 1;
  shell->k = 1;
  shell->edges.clear();
  ResidualGraph g;
  g.base = shell;
  int id = 0;
  for (auto [tail, head, cost, delay] : arcs) {
    Edge e;
    e.id = id++;
    e.tail = tail;
    e.head = head;
    e.cost = cost;
    e.delay = delay;
    g.edges.push_back(e);
  }
  return g;
}

SearchContext ctx_of(const ResidualGraph& g, const Int& delta_d,
                     const Int& cost_estimate, const Int& delta_c,
                     long long b_max) {
  SearchContext ctx;
  ctx.residual = &g;
  ctx.delta_d = delta_d;
  ctx.cost_estimate = cost_estimate;
  ctx.delta_c = delta_c;
  ctx.b_max = b_max;
  return ctx;
}

Cycle fake_cycle(const Int& cost, const Int& delay) {
  Cycle o;
  o.cost = cost;
  o.delay = delay;
  return o;
}

std::vector<int> edge_ids(const Cycle& o) {
  std::vector<int> out;
  for (const Edge& e : o.edges) out.push_back(e.id);
  return out;
}

int count_wraps(const AuxGraph& aux) {
  int n = 0;
  for (const AuxEdge& e : aux.edges)
    if (e.residual_id < 0) ++n;
  return n;
}

TEST_CASE("build_aux copies edges once per admissible level") {
  Instance shell;

  SUBCASE("positive cost keeps the head in range") {
    ResidualGraph g = raw_graph(&shell, 2, {{0, 1, 2, 0}});
    AuxGraph aux = build_aux(g, 0, 6, AuxSign::kPlus);
    CHECK(aux.num_vertices() == 14);
    CHECK(count_wraps(aux) == 6);
    CHECK(static_cast<int>(aux.edges.size()) == 5 + 6);  // levels 0..4
    CHECK(aux.edges[0].tail == aux.vertex(0, 0));
    CHECK(aux.edges[0].head == aux.vertex(1, 2));
    CHECK(aux.edges[0].residual_id == 0);
    CHECK(aux.edges[4].tail == aux.vertex(0, 4));
    CHECK(aux.edges[4].head == aux.vertex(1, 6));
  }

  SUBCASE("negative cost keeps the tail high enough") {
    ResidualGraph g = raw_graph(&shell, 2, {{0, 1, -2, 0}});
    AuxGraph aux = build_aux(g, 0, 6, AuxSign::kPlus);
    CHECK(static_cast<int>(aux.edges.size()) == 5 + 6);  // levels 2..6
    CHECK(aux.edges[0].tail == aux.vertex(0, 2));
    CHECK(aux.edges[0].head == aux.vertex(1, 0));
  }

  SUBCASE("cost beyond the budget leaves only wraps") {
    ResidualGraph g = raw_graph(&shell, 2, {{0, 1, 7, 0}});
    AuxGraph aux = build_aux(g, 0, 6, AuxSign::kPlus);
    CHECK(static_cast<int>(aux.edges.size()) == 6);
    CHECK(count_wraps(aux) == 6);
  }

  SUBCASE("minus-sign wraps climb to the top level") {
    ResidualGraph g = raw_graph(&shell, 2, {{0, 1, 1, 0}});
    AuxGraph aux = build_aux(g, 1, 3, AuxSign::kMinus);
    REQUIRE(count_wraps(aux) == 3);
    for (int i = 0; i < 3; ++i) {
      const AuxEdge& w = aux.edges[aux.edges.size() - 3 + i];
      CHECK(w.tail == aux.vertex(1, i));
      CHECK(w.head == aux.vertex(1, 3));
    }
  }

  SUBCASE("size guard") {
    ResidualGraph g = raw_graph(&shell, 5, {{0, 1, 1, 0}});
    CHECK(build_aux(g, 0, 6, AuxSign::kPlus).num_vertices() == 35);
    CHECK_THROWS_AS(build_aux(g, 0, 0, AuxSign::kPlus), std::invalid_argument);
    CHECK_THROWS_AS(build_aux(g, 0, 1LL << 40, AuxSign::kPlus),
                    std::overflow_error);
  }
}

TEST_CASE("embed_cycle and lift_cycle invert each other") {
  Instance shell;
  ResidualGraph g =
      raw_graph(&shell, 3, {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 0, 1, 0}});
  Cycle tri = make_cycle({g.edges[0], g.edges[1], g.edges[2]});

  SUBCASE("triangle climbs to level 3 and wraps home") {
    AuxGraph aux = build_aux(g, 0, 3, AuxSign::kPlus);
    auto ids = embed_cycle(aux, tri);
    REQUIRE(ids.has_value());
    REQUIRE(ids->size() == 4);
    CHECK(aux.edges[ids->back()].residual_id == -1);
    std::vector<Cycle> back = lift_cycle(aux, *ids);
    REQUIRE(back.size() == 1);
    CHECK(edge_ids(back[0]) == edge_ids(tri));
    CHECK(back[0].cost == 3);
    CHECK(back[0].delay == -2);
  }

  SUBCASE("too small a budget refuses the walk") {
    AuxGraph aux = build_aux(g, 0, 2, AuxSign::kPlus);
    CHECK_FALSE(embed_cycle(aux, tri).has_value());
  }

  SUBCASE("anchor off the cycle refuses the walk") {
    Instance shell4;
    ResidualGraph g4 = raw_graph(
        &shell4, 4, {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 0, 1, 0}});
    Cycle tri4 = make_cycle({g4.edges[0], g4.edges[1], g4.edges[2]});
    AuxGraph aux = build_aux(g4, 3, 3, AuxSign::kPlus);
    CHECK_FALSE(embed_cycle(aux, tri4).has_value());
  }

  SUBCASE("wrap-only input lifts to nothing") {
    AuxGraph aux = build_aux(g, 0, 3, AuxSign::kPlus);
    std::vector<int> wraps;
    for (int i = 0; i < static_cast<int>(aux.edges.size()); ++i)
      if (aux.edges[i].residual_id < 0) wraps.push_back(i);
    CHECK(lift_cycle(aux, wraps).empty());
  }
}

TEST_CASE("embed-lift roundtrip over enumerated cycles") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 4,
                              {{0, 1, 1, 0},
                               {1, 2, 1, 0},
                               {2, 0, -2, 1},
                               {1, 0, 1, 2},
                               {2, 3, 0, 1},
                               {3, 1, 0, -1}});
  std::vector<Cycle> cycles = enumerate_simple_cycles(g);
  REQUIRE(!cycles.empty());
  int embedded = 0;
  for (const Cycle& o : cycles) {
    Int span = 0;
    for (const Edge& e : o.edges) span += abs(e.cost);
    long long budget = span > 0 ? span.convert_to<long long>() : 1;
    for (AuxSign sign : {AuxSign::kPlus, AuxSign::kMinus}) {
      AuxGraph aux = build_aux(g, o.edges[0].tail, budget, sign);
      auto ids = embed_cycle(aux, o);
      if (!ids) continue;
      ++embedded;
      std::vector<Cycle> back = lift_cycle(aux, *ids);
      REQUIRE(back.size() == 1);
      CHECK(edge_ids(back[0]) == edge_ids(o));
    }
  }
  CHECK(embedded >= static_cast<int>(cycles.size()));

  // All-nonnegative edge costs walk monotonically, so the plus sign always
  // has room once the budget covers the total.
  for (const Cycle& o : cycles) {
    bool nonneg = true;
    for (const Edge& e : o.edges) nonneg = nonneg && e.cost >= 0;
    if (!nonneg) continue;
    long long budget = o.cost > 0 ? o.cost.convert_to<long long>() : 1;
    AuxGraph aux = build_aux(g, o.edges[0].tail, budget, AuxSign::kPlus);
    CHECK(embed_cycle(aux, o).has_value());
  }
}

TEST_CASE("classify_cycle splits the admissible window") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 2, {{0, 1, 1, 1}, {1, 0, 1, 1}});
  SearchContext ctx = ctx_of(g, -4, 10, 2, 1);  // target ratio -2

  CHECK(classify_cycle(fake_cycle(0, -1), ctx) == CycleKind::kType0);
  CHECK(classify_cycle(fake_cycle(-1, 0), ctx) == CycleKind::kType0);
  CHECK(classify_cycle(fake_cycle(-1, -1), ctx) == CycleKind::kType0);
  CHECK(classify_cycle(fake_cycle(1, -2), ctx) == CycleKind::kType1);
  CHECK(classify_cycle(fake_cycle(1, -1), ctx) == CycleKind::kNonBicameral);
  CHECK(classify_cycle(fake_cycle(-1, 1), ctx) == CycleKind::kType2);
  CHECK(classify_cycle(fake_cycle(-1, 3), ctx) == CycleKind::kNonBicameral);
  CHECK(classify_cycle(fake_cycle(0, 0), ctx) == CycleKind::kNonBicameral);
  CHECK(classify_cycle(fake_cycle(11, -100), ctx) ==
        CycleKind::kNonBicameral);
  CHECK(classify_cycle(fake_cycle(-11, 1), ctx) == CycleKind::kNonBicameral);

  // Exhausted cost headroom turns off both ratio classes.
  SearchContext flat = ctx_of(g, -4, 10, 0, 1);
  CHECK(classify_cycle(fake_cycle(1, -5), flat) == CycleKind::kNonBicameral);
  CHECK(classify_cycle(fake_cycle(-1, 0), flat) == CycleKind::kType0);

  // classify and the independent verifier agree on the verdict.
  for (int c = -3; c <= 3; ++c) {
    for (int d = -3; d <= 3; ++d) {
      Cycle o = fake_cycle(c, d);
      CHECK(verify_bicameral(o, ctx) ==
            (classify_cycle(o, ctx) != CycleKind::kNonBicameral));
    }
  }
}

TEST_CASE("make_cycle_lp shapes") {
  Instance shell;
  ResidualGraph g =
      raw_graph(&shell, 3, {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 0, 1, 0}});
  AuxGraph aux = build_aux(g, 0, 3, AuxSign::kPlus);
  // three copies of each of three edges, plus three wraps
  REQUIRE(static_cast<int>(aux.edges.size()) == 12);

  LpProblem p = make_cycle_lp(aux, Int(-5));
  CHECK(p.num_vars == 12);
  REQUIRE(p.inequalities.size() == 1);
  CHECK(p.inequalities[0].rhs == -5);
  CHECK(make_cycle_lp(aux, Int(0)).inequalities[0].rhs == -1);

  AuxGraph minus = build_aux(g, 0, 3, AuxSign::kMinus);
  CHECK(make_cycle_lp(minus, Int(-5)).inequalities.empty());
}

TEST_CASE("cycle LP finds the budgeted circulation") {
  Instance shell;

  SUBCASE("all delays positive leaves the plus LP infeasible") {
    ResidualGraph g =
        raw_graph(&shell, 3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {2, 0, 1, 1}});
    AuxGraph aux = build_aux(g, 0, 3, AuxSign::kPlus);
    CHECK(solve_lp(make_cycle_lp(aux, Int(-1))).status ==
          LpStatus::kInfeasible);
  }

  SUBCASE("fractional optimum rides the unique negative-delay triangle") {
    ResidualGraph g =
        raw_graph(&shell, 3, {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 0, 1, 0}});
    AuxGraph aux = build_aux(g, 0, 3, AuxSign::kPlus);
    LpSolution sol = solve_lp(make_cycle_lp(aux, Int(-1)));
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.objective_value == Rat(3, 2));  // half a lap meets the budget
    std::vector<std::pair<int, int>> arcs;
    std::vector<Rat> vals;
    std::vector<int> back;
    for (int i = 0; i < static_cast<int>(aux.edges.size()); ++i) {
      if (sol.values[i] > 0) {
        arcs.emplace_back(aux.edges[i].tail, aux.edges[i].head);
        vals.push_back(sol.values[i]);
        back.push_back(i);
      }
    }
    auto loops = decompose_circulation(aux.num_vertices(), arcs, vals);
    REQUIRE(loops.size() == 1);
    std::vector<int> ids;
    for (int a : loops[0].edges) ids.push_back(back[a]);
    std::vector<Cycle> lifted = lift_cycle(aux, ids);
    REQUIRE(lifted.size() == 1);
    CHECK(lifted[0].cost == 3);
    CHECK(lifted[0].delay == -2);
  }

  SUBCASE("minus sign chases negative cost without a budget") {
    ResidualGraph g = raw_graph(&shell, 2, {{0, 1, -1, 1}, {1, 0, -1, 1}});
    AuxGraph aux = build_aux(g, 0, 2, AuxSign::kMinus);
    LpSolution sol = solve_lp(make_cycle_lp(aux, Int(-1)));
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.objective_value == -2);
  }
}

TEST_CASE("find_bicameral returns type 0 immediately") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 2, {{0, 1, -1, -1}, {1, 0, 0, 0}});
  SearchContext ctx = ctx_of(g, -1, 10, 5, 3);
  for (CycleSource source :
       {CycleSource::kLp, CycleSource::kEnumerate, CycleSource::kHybrid}) {
    SearchStats stats;
    auto hit = find_bicameral(ctx, source, &stats);
    REQUIRE(hit.has_value());
    CHECK(classify_cycle(*hit, ctx) == CycleKind::kType0);
    CHECK(hit->cost == -1);
    CHECK(hit->delay == -1);
  }
}

TEST_CASE("find_bicameral locates the unique admissible cycle") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 2, {{0, 1, 1, -1}, {1, 0, 1, -1}});
  SearchContext ctx = ctx_of(g, -2, 10, 2, 3);  // target ratio -1

  SearchStats lp_stats;
  auto via_lp = find_bicameral(ctx, CycleSource::kLp, &lp_stats);
  REQUIRE(via_lp.has_value());
  CHECK(classify_cycle(*via_lp, ctx) == CycleKind::kType1);
  CHECK_FALSE(lp_stats.enumeration_used);
  CHECK(lp_stats.lps_solved >= 1);

  SearchStats enum_stats;
  auto via_enum = find_bicameral(ctx, CycleSource::kEnumerate, &enum_stats);
  REQUIRE(via_enum.has_value());
  CHECK(enum_stats.enumeration_used);
  CHECK(edge_ids(*via_enum) == edge_ids(*via_lp));
}

TEST_CASE("budget cap hides deep cycles from the LP lane") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 2, {{0, 1, 1, -1}, {1, 0, 1, -1}});
  SearchContext ctx = ctx_of(g, -2, 10, 2, 1);  // cycle needs B = 2

  SearchStats stats;
  CHECK_FALSE(find_bicameral(ctx, CycleSource::kLp, &stats).has_value());

  auto rescued = find_bicameral(ctx, CycleSource::kHybrid, &stats);
  REQUIRE(rescued.has_value());
  CHECK(stats.enumeration_used);
  CHECK(rescued->cost == 2);

  ctx.b_max = 2;
  CHECK(find_bicameral(ctx, CycleSource::kLp, &stats).has_value());
}

TEST_CASE("find_bicameral reports nothing when nothing improves") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 2, {{0, 1, 1, 1}, {1, 0, 1, 1}});
  SearchContext ctx = ctx_of(g, -1, 10, 5, 3);
  for (CycleSource source :
       {CycleSource::kLp, CycleSource::kEnumerate, CycleSource::kHybrid}) {
    SearchStats stats;
    CHECK_FALSE(find_bicameral(ctx, source, &stats).has_value());
    if (source == CycleSource::kLp) {
      CHECK(stats.lps_solved == 0);  // sign gates cut the whole sweep
      CHECK(stats.aux_graphs == 0);
    }
  }
}

TEST_CASE("selection weighs steepest type 1 against flattest type 2") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 4,
                              {{0, 1, 2, -2},
                               {1, 0, 0, 0},
                               {2, 3, -2, 1},
                               {3, 2, 0, 0}});
  // target -1: the type-1 loop sits at ratio -1, the type-2 at -1/2;
  // the flatter magnitude wins.
  SearchContext ctx = ctx_of(g, -2, 10, 2, 4);
  for (CycleSource source : {CycleSource::kLp, CycleSource::kEnumerate}) {
    SearchStats stats;
    auto hit = find_bicameral(ctx, source, &stats);
    REQUIRE(hit.has_value());
    CHECK(classify_cycle(*hit, ctx) == CycleKind::kType2);
    CHECK(hit->cost == -2);
    CHECK(stats.candidates >= 2);
  }
}

TEST_CASE("ratio ties break toward the smaller cost magnitude") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 4,
                              {{0, 1, 1, -2},
                               {1, 0, 0, 0},
                               {2, 3, 2, -4},
                               {3, 2, 0, 0}});
  SearchContext ctx = ctx_of(g, -2, 10, 1, 4);  // both loops at ratio -2
  for (CycleSource source : {CycleSource::kLp, CycleSource::kEnumerate}) {
    SearchStats stats;
    auto hit = find_bicameral(ctx, source, &stats);
    REQUIRE(hit.has_value());
    CHECK(hit->cost == 1);
  }
}

TEST_CASE("binary budget search still lands on the cycle") {
  Instance shell;
  ResidualGraph g = raw_graph(&shell, 2, {{0, 1, 1, -1}, {1, 0, 1, -1}});
  SearchContext ctx = ctx_of(g, -2, 10, 2, 5);
  SearchOptions options;
  options.binary_search_b = true;
  SearchStats stats;
  auto hit = find_bicameral(ctx, CycleSource::kLp, &stats, options);
  REQUIRE(hit.has_value());
  CHECK(hit->cost == 2);
  CHECK(classify_cycle(*hit, ctx) == CycleKind::kType1);
}

TEST_CASE("search lanes agree on random residual graphs") {
  int enum_found = 0;
  int lp_found = 0;
  for (int seed = 500; seed < 530; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = 4 + static_cast<int>(rng() % 3);
    const int m = 6 + static_cast<int>(rng() % 5);
    std::vector<std::tuple<int, int, int, int>> arcs;
    for (int i = 0; i < m; ++i) {
      int tail = static_cast<int>(rng() % n);
      int head = static_cast<int>(rng() % (n - 1));
      if (head >= tail) ++head;
      arcs.emplace_back(tail, head, static_cast<int>(rng() % 7) - 3,
                        static_cast<int>(rng() % 7) - 3);
    }
    Instance shell;
    ResidualGraph g = raw_graph(&shell, n, arcs);
    SearchContext ctx = ctx_of(g, -1 - static_cast<int>(seed % 3), 8,
                               1 + static_cast<int>(seed % 4), 6);

    SearchStats stats;
    auto via_enum = find_bicameral(ctx, CycleSource::kEnumerate, &stats);
    auto via_lp = find_bicameral(ctx, CycleSource::kLp, &stats);
    auto via_hybrid = find_bicameral(ctx, CycleSource::kHybrid, &stats);

    CHECK(via_hybrid.has_value() == via_enum.has_value());
    if (via_lp) CHECK(via_enum.has_value());
    for (const auto& hit : {via_enum, via_lp, via_hybrid}) {
      if (hit) {
        CHECK(verify_bicameral(*hit, ctx));
        CHECK(classify_cycle(*hit, ctx) != CycleKind::kNonBicameral);
      }
    }
    enum_found += via_enum.has_value();
    lp_found += via_lp.has_value();
  }
  CHECK(enum_found >= 10);
  CHECK(lp_found >= 8);
}

}  // namespace
}  // namespace krsp
