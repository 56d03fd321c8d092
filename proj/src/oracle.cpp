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

#include "krsp/oracle.hpp"

#include <cstdint>
#include <stdexcept>

namespace krsp {
namespace {

constexpr int kMaxBruteVertices = 10;
constexpr int kMaxBruteEdges = 16;

using Mask = std::uint32_t;

struct BruteState {
  const Instance* inst;
  std::vector<std::vector<int>> paths;
};

Mask path_mask(const std::vector<int>& path) {
  Mask m = 0;
  for (int id : path) m |= Mask{1} << id;
  return m;
}

bool extract_paths(BruteState* st, Mask avail, int need);

// Depth-first over simple paths from `at` to t inside `avail`, extending
// st->paths.back(); on each completed path, recurse into the remaining
// edges for the rest of the k paths, backtracking on failure.
bool path_dfs(BruteState* st, Mask avail, int at, Mask visited, int need) {
  if (at == st->inst->t) {
    Mask rest = avail & ~path_mask(st->paths.back());
    std::vector<int> done = st->paths.back();
    st->paths.emplace_back();
    if (extract_paths(st, rest, need - 1)) return true;
    st->paths.pop_back();
    return false;
  }
  for (const Edge& e : st->inst->edges) {
    if (!(avail & (Mask{1} << e.id)) || e.tail != at) continue;
    if (visited & (Mask{1} << e.head)) continue;
    st->paths.back().push_back(e.id);
    if (path_dfs(st, avail, e.head, visited | (Mask{1} << e.head), need))
      return true;
    st->paths.back().pop_back();
  }
  return false;
}

bool extract_paths(BruteState* st, Mask avail, int need) {
  if (need == 0) return true;
  return path_dfs(st, avail, st->inst->s, Mask{1} << st->inst->s, need);
}

}  // namespace

BruteResult brute_krsp(const Instance& inst) {
  const int m = static_cast<int>(inst.edges.size());
  if (inst.n > kMaxBruteVertices)
    throw std::invalid_argument("brute_krsp: too many vertices");
  if (m > kMaxBruteEdges)
    throw std::invalid_argument("brute_krsp: too many edges");

  // Small machine-int views for the hot degree filter.
  int tail[kMaxBruteEdges], head[kMaxBruteEdges];
  for (int i = 0; i < m; ++i) {
    tail[i] = inst.edges[i].tail;
    head[i] = inst.edges[i].head;
  }

  BruteResult result;
  BruteState st{&inst, {}};
  for (Mask mask = 0; mask < (Mask{1} << m); ++mask) {
    int deg[kMaxBruteVertices] = {};
    for (Mask bits = mask; bits;) {
      const int i = std::countr_zero(bits);
      bits &= bits - 1;
      ++deg[tail[i]];
      --deg[head[i]];
    }
    bool balanced = deg[inst.s] == inst.k && deg[inst.t] == -inst.k;
    for (int v = 0; balanced && v < inst.n; ++v)
      if (v != inst.s && v != inst.t && deg[v] != 0) balanced = false;
    if (!balanced) continue;

    // A balanced set always decomposes into k simple disjoint s-t paths
    // plus cycles; the paths alone are a candidate solution (the cycles
    // only add nonnegative cost and delay, so skipping them never hides
    // the optimum: the optimum's own edge set is one of the masks).
    st.paths.assign(1, {});
    if (!extract_paths(&st, mask, inst.k)) continue;
    st.paths.pop_back();  // the empty tail opened by the last recursion

    PathSet cand = make_path_set(inst, st.paths);
    if (cand.total_delay > inst.delay_bound) continue;
    if (!result.feasible || cand.total_cost < result.best_cost) {
      result.feasible = true;
      result.best_cost = cand.total_cost;
      result.best = std::move(cand);
    }
  }
  return result;
}

std::vector<Cycle> enumerate_simple_cycles(const ResidualGraph& g) {
  const int n = g.base->n;
  if (n > kMaxCycleVertices)
    throw std::invalid_argument("enumerate_simple_cycles: too many vertices");

  std::vector<std::vector<const Edge*>> adj(n);
  for (const Edge& e : g.edges) adj[e.tail].push_back(&e);  // id order

  std::vector<Cycle> out;
  std::vector<const Edge*> chain;
  // Each simple cycle is discovered exactly once, from its smallest edge
  // id: close a path from first->head back to first->tail using larger
  // ids only.
  auto dfs = [&](auto&& self, const Edge* first, int at,
                 std::uint32_t visited) -> void {
    for (const Edge* e : adj[at]) {
      if (e->id <= first->id) continue;
      if (e->head == first->tail) {
        std::vector<Edge> edges;
        edges.push_back(*first);
        for (const Edge* c : chain) edges.push_back(*c);
        edges.push_back(*e);
        out.push_back(make_cycle(std::move(edges)));
        continue;
      }
      if (visited & (std::uint32_t{1} << e->head)) continue;
      chain.push_back(e);
      self(self, first, e->head, visited | (std::uint32_t{1} << e->head));
      chain.pop_back();
    }
  };
  for (const Edge& first : g.edges) {
    if (first.head == first.tail) continue;
    chain.clear();
    dfs(dfs, &first, first.head, std::uint32_t{1} << first.head);
  }
  return out;
}

bool verify_bicameral(const Cycle& o, const SearchContext& ctx) {
  const Int& c = o.cost;
  const Int& d = o.delay;
  if (d < 0 && c <= 0) return true;
  if (d <= 0 && c < 0) return true;
  if (ctx.delta_c <= 0) return false;
  // Both remaining classes compare d/c against delta_d/delta_c; in each
  // the sign pattern makes the cross-multiplied test point the same way.
  const bool ratio_ok = d * ctx.delta_c <= ctx.delta_d * c;
  if (d < 0 && c > 0 && c <= ctx.cost_estimate) return ratio_ok;
  if (d >= 0 && c < 0 && -ctx.cost_estimate <= c) return ratio_ok;
  return false;
}

}  // namespace krsp
