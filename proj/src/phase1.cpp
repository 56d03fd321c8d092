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

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "krsp/residual.hpp"

namespace krsp {
namespace {

// Weights are (primary, secondary) pairs under lexicographic order, so the
// secondary criterion breaks ties among equally good flows.
using Weight = std::pair<Int, Int>;

Weight weight_of(const Edge& e, bool cost_first) {
  return cost_first ? Weight{e.cost, e.delay} : Weight{e.delay, e.cost};
}

Weight add(const Weight& a, const Weight& b) {
  return {a.first + b.first, a.second + b.second};
}

// Successive shortest paths on the unit-capacity network: k Bellman-Ford
// rounds, each augmenting one unit along a lexicographically shortest
// residual path. Returns the ids of edges carrying flow, or nothing when
// fewer than k disjoint paths exist within `usable`.
std::optional<std::vector<int>> lex_min_k_flow(const Instance& inst,
                                               bool cost_first, int k,
                                               const std::vector<char>& usable) {
  const int m = static_cast<int>(inst.edges.size());
  std::vector<char> flow(m, 0);
  for (int round = 0; round < k; ++round) {
    std::vector<std::optional<Weight>> dist(inst.n);
    std::vector<int> parent_edge(inst.n, -1);
    std::vector<int> parent_from(inst.n, -1);
    dist[inst.s] = Weight{0, 0};
    auto relax = [&](int from, int to, const Weight& w, int via) {
      if (!dist[from]) return false;
      Weight cand = add(*dist[from], w);
      if (dist[to] && !(cand < *dist[to])) return false;
      dist[to] = std::move(cand);
      parent_edge[to] = via;
      parent_from[to] = from;
      return true;
    };
    for (int pass = 0; pass < inst.n; ++pass) {
      bool any = false;
      for (int i = 0; i < m; ++i) {
        if (!usable[i]) continue;
        const Edge& e = inst.edges[i];
        const Weight w = weight_of(e, cost_first);
        if (!flow[i])
          any = relax(e.tail, e.head, w, i) || any;
        else
          any = relax(e.head, e.tail, {-w.first, -w.second}, i) || any;
      }
      if (!any) break;
    }
    if (!dist[inst.t]) return std::nullopt;
    for (int v = inst.t; v != inst.s; v = parent_from[v]) {
      const int e = parent_edge[v];
      flow[e] = inst.edges[e].head == v ? 1 : 0;
    }
  }
  std::vector<int> used;
  for (int i = 0; i < m; ++i)
    if (flow[i]) used.push_back(i);
  return used;
}

PathSet paths_from_flow(const Instance& inst, const std::vector<int>& ids) {
  std::vector<Edge> edges;
  edges.reserve(ids.size());
  for (int id : ids) edges.push_back(inst.edges[id]);
  DroppedCycles dropped;
  PathSet paths = decompose_to_paths(edges, inst, &dropped);
  // An optimal flow cannot carry a cycle of positive lexicographic weight.
  if (dropped.cost != 0 || dropped.delay != 0)
    throw std::logic_error("optimal flow shed a non-null cycle");
  return paths;
}

std::optional<PathSet> lex_min_paths(const Instance& inst, bool cost_first) {
  std::vector<char> usable(inst.edges.size(), 1);
  auto ids = lex_min_k_flow(inst, cost_first, inst.k, usable);
  if (!ids) return std::nullopt;
  return paths_from_flow(inst, *ids);
}

// Peels simple s->t paths off a fractional flow, largest-id-independent:
// DFS picks the smallest usable edge at each vertex, so the result is
// deterministic. Cycle mass in the flow is left behind untouched.
struct WeightedPath {
  std::vector<int> edges;
  Rat weight;
};

std::vector<WeightedPath> peel_fractional_paths(const Instance& inst,
                                                std::vector<Rat> rem) {
  std::vector<std::vector<int>> out_arcs(inst.n);
  for (int i = 0; i < static_cast<int>(inst.edges.size()); ++i)
    out_arcs[inst.edges[i].tail].push_back(i);

  Rat value = 0;
  for (int i : out_arcs[inst.s]) value += rem[i];
  for (int i = 0; i < static_cast<int>(inst.edges.size()); ++i)
    if (inst.edges[i].head == inst.s) value -= rem[i];

  std::vector<WeightedPath> paths;
  while (value > 0) {
    std::vector<int> trail;
    std::vector<char> visited(inst.n, 0);
    auto dfs = [&](auto&& self, int at) -> bool {
      if (at == inst.t) return true;
      visited[at] = 1;
      for (int i : out_arcs[at]) {
        if (rem[i] == 0 || visited[inst.edges[i].head]) continue;
        trail.push_back(i);
        if (self(self, inst.edges[i].head)) return true;
        trail.pop_back();
      }
      return false;
    };
    if (!dfs(dfs, inst.s))
      throw std::logic_error("fractional flow lost its value");
    Rat bottleneck = rem[trail[0]];
    for (int i : trail) bottleneck = std::min(bottleneck, rem[i]);
    for (int i : trail) rem[i] -= bottleneck;
    value -= bottleneck;
    paths.push_back({std::move(trail), bottleneck});
  }
  return paths;
}

}  // namespace

std::optional<PathSet> min_cost_k_disjoint(const Instance& inst) {
  return lex_min_paths(inst, true);
}

std::optional<PathSet> min_delay_k_disjoint(const Instance& inst) {
  return lex_min_paths(inst, false);
}

bool check_feasible(const Instance& inst) {
  auto best = min_delay_k_disjoint(inst);
  return best && best->total_delay <= inst.delay_bound;
}

LpProblem fractional_relaxation(const Instance& inst) {
  const int m = static_cast<int>(inst.edges.size());
  LpProblem p;
  p.num_vars = m;
  p.objective.reserve(m);
  p.lower.assign(m, Rat(0));
  p.upper.assign(m, Rat(1));
  for (const Edge& e : inst.edges) p.objective.push_back(Rat(e.cost));

  for (int v = 0; v < inst.n; ++v) {
    LpRow balance;
    for (int i = 0; i < m; ++i) {
      if (inst.edges[i].tail == v) balance.terms.emplace_back(i, Rat(1));
      if (inst.edges[i].head == v) balance.terms.emplace_back(i, Rat(-1));
    }
    balance.rhs = v == inst.s ? Rat(inst.k)
                : v == inst.t ? Rat(-inst.k)
                              : Rat(0);
    p.equalities.push_back(std::move(balance));
  }
  LpRow budget;
  for (int i = 0; i < m; ++i)
    budget.terms.emplace_back(i, Rat(inst.edges[i].delay));
  budget.rhs = Rat(inst.delay_bound);
  p.inequalities.push_back(std::move(budget));
  return p;
}

PathSet phase1_solution(const Instance& inst, Phase1Mode mode) {
  if (!check_feasible(inst))
    throw std::invalid_argument("instance has no solution within the bound");
  if (mode == Phase1Mode::kMinCost) return *min_cost_k_disjoint(inst);

  LpSolution sol = solve_lp(fractional_relaxation(inst));
  if (sol.status != LpStatus::kOptimal)
    throw std::logic_error("relaxation unsolvable on a feasible instance");

  auto fractional = peel_fractional_paths(inst, sol.values);
  std::stable_sort(fractional.begin(), fractional.end(),
                   [](const WeightedPath& a, const WeightedPath& b) {
                     return a.weight > b.weight;
                   });
  std::vector<char> taken(inst.edges.size(), 0);
  std::vector<std::vector<int>> chosen;
  for (const WeightedPath& p : fractional) {
    if (static_cast<int>(chosen.size()) == inst.k) break;
    bool clash = false;
    for (int i : p.edges) clash = clash || taken[i];
    if (clash) continue;
    for (int i : p.edges) taken[i] = 1;
    chosen.push_back(p.edges);
  }

  const int missing = inst.k - static_cast<int>(chosen.size());
  if (missing > 0) {
    std::vector<char> usable(inst.edges.size(), 1);
    for (std::size_t i = 0; i < taken.size(); ++i) usable[i] = !taken[i];
    auto extra = lex_min_k_flow(inst, true, missing, usable);
    if (!extra) return *min_cost_k_disjoint(inst);
    Instance part = inst;
    part.k = missing;
    PathSet completion = paths_from_flow(part, *extra);
    for (auto& path : completion.paths) chosen.push_back(std::move(path));
  }
  return make_path_set(inst, chosen);
}

}  // namespace krsp
