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

#include "krsp/residual.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace krsp {
namespace {

Edge reverse_edge(const Edge& e) {
  Edge r = e;
  std::swap(r.tail, r.head);
  r.cost = -e.cost;
  r.delay = -e.delay;
  r.origin = e.id;
  return r;
}

}  // namespace

std::vector<Cycle> split_closed_walk(std::vector<Edge> pool) {
  std::sort(pool.begin(), pool.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  std::vector<bool> used(pool.size(), false);
  std::vector<Cycle> out;
  std::size_t scan = 0;
  while (true) {
    while (scan < pool.size() && used[scan]) ++scan;
    if (scan == pool.size()) break;
    used[scan] = true;
    std::vector<Edge> walk{pool[scan]};
    std::map<int, std::size_t> seen{{pool[scan].tail, 0}};
    int at = pool[scan].head;
    while (!walk.empty()) {
      auto hit = seen.find(at);
      if (hit != seen.end()) {
        // Revisit: the segment since the first visit closes at `at`.
        std::vector<Edge> loop(walk.begin() + hit->second, walk.end());
        walk.erase(walk.begin() + hit->second, walk.end());
        for (std::size_t i = 1; i < loop.size(); ++i)
          seen.erase(loop[i].tail);
        out.push_back(make_cycle(std::move(loop)));
        if (walk.empty()) break;
        // The walk resumes at `at`, which the balance condition
        // guarantees still has an unused out-edge.
      } else {
        seen[at] = walk.size();
      }
      bool advanced = false;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!used[i] && pool[i].tail == at) {
          used[i] = true;
          walk.push_back(pool[i]);
          at = pool[i].head;
          advanced = true;
          break;
        }
      }
      if (!advanced)
        throw std::invalid_argument("edge set is not degree-balanced");
    }
  }
  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    return a.edges.front().id < b.edges.front().id;
  });
  return out;
}

Cycle make_cycle(std::vector<Edge> edges) {
  Cycle o;
  o.cost = 0;
  o.delay = 0;
  for (const Edge& e : edges) {
    o.cost += e.cost;
    o.delay += e.delay;
  }
  o.edges = std::move(edges);
  return o;
}

void canonicalize_cycle(Cycle* cycle) {
  auto& es = cycle->edges;
  if (es.empty()) return;
  auto lowest = std::min_element(
      es.begin(), es.end(),
      [](const Edge& a, const Edge& b) { return a.id < b.id; });
  std::rotate(es.begin(), lowest, es.end());
}

ResidualGraph build_residual(const Instance& inst, const PathSet& sol) {
  ResidualGraph g;
  g.base = &inst;
  g.edges = inst.edges;
  for (const auto& path : sol.paths) {
    for (int id : path) {
      if (id < 0 || id >= static_cast<int>(inst.edges.size()))
        throw std::invalid_argument("solution references unknown edge");
      if (g.edges[id].reversed())
        throw std::invalid_argument("solution uses an edge twice");
      g.edges[id] = reverse_edge(inst.edges[id]);
    }
  }
  return g;
}

std::vector<Edge> path_set_edges(const Instance& inst, const PathSet& sol) {
  std::vector<Edge> out;
  for (const auto& path : sol.paths)
    for (int id : path) out.push_back(inst.edges.at(id));
  return out;
}

std::vector<Edge> symmetric_diff(const std::vector<Edge>& a,
                                 const std::vector<Edge>& b) {
  // Per original edge id: forward copies and reversing copies cancel
  // pairwise; whatever orientation survives appears once.
  std::map<int, std::pair<int, int>> net;  // id -> (forward, reversed)
  std::map<int, Edge> sample;
  auto absorb = [&](const std::vector<Edge>& set) {
    for (const Edge& e : set) {
      int id = e.reversed() ? e.origin : e.id;
      if (e.reversed())
        ++net[id].second;
      else
        ++net[id].first;
      sample.try_emplace(id, e);
    }
  };
  absorb(a);
  absorb(b);
  std::vector<Edge> out;
  for (const auto& [id, counts] : net) {
    int balance = counts.first - counts.second;
    if (balance == 0) continue;
    Edge e = sample.at(id);
    const bool want_reversed = balance < 0;
    if (e.reversed() != want_reversed) {
      e = reverse_edge(e);
      e.origin = want_reversed ? id : -1;
    }
    out.push_back(e);
  }
  return out;
}

PathSet decompose_to_paths(const std::vector<Edge>& edges,
                           const Instance& inst, DroppedCycles* dropped) {
  const int m = static_cast<int>(inst.edges.size());
  std::vector<bool> present(m, false);
  for (const Edge& e : edges) {
    if (e.reversed() || e.id < 0 || e.id >= m ||
        inst.edges[e.id].tail != e.tail || inst.edges[e.id].head != e.head)
      throw std::invalid_argument("edge set is not from the instance");
    if (present[e.id])
      throw std::invalid_argument("duplicate edge in set");
    present[e.id] = true;
  }

  std::vector<int> degree(inst.n, 0);
  for (const Edge& e : edges) {
    ++degree[e.tail];
    --degree[e.head];
  }
  for (int v = 0; v < inst.n; ++v) {
    int want = v == inst.s ? inst.k : (v == inst.t ? -inst.k : 0);
    if (degree[v] != want)
      throw std::invalid_argument("edge set is not a k-flow");
  }

  // k rounds of depth-first extraction, smallest edge id first, with
  // backtracking around dead ends. A balanced set always contains a next
  // simple s-t path, so each round succeeds.
  std::vector<bool> used(m, false);
  std::vector<std::vector<int>> paths;
  for (int round = 0; round < inst.k; ++round) {
    std::vector<int> path;
    std::vector<bool> visited(inst.n, false);
    visited[inst.s] = true;
    auto dfs = [&](auto&& self, int at) -> bool {
      if (at == inst.t) return true;
      for (int id = 0; id < m; ++id) {
        const Edge& e = inst.edges[id];
        if (!present[id] || used[id] || e.tail != at || visited[e.head])
          continue;
        used[id] = true;
        visited[e.head] = true;
        path.push_back(id);
        if (self(self, e.head)) return true;
        path.pop_back();
        visited[e.head] = false;
        used[id] = false;
      }
      return false;
    };
    if (!dfs(dfs, inst.s))
      throw std::invalid_argument("failed to extract k disjoint paths");
    paths.push_back(std::move(path));
  }

  std::vector<Edge> leftover;
  for (const Edge& e : edges)
    if (!used[e.id]) leftover.push_back(e);
  DroppedCycles log;
  log.cost = 0;
  log.delay = 0;
  for (const Cycle& o : split_closed_walk(std::move(leftover))) {
    if (o.cost < 0 || o.delay < 0)
      throw std::invalid_argument("leftover cycle would raise a total");
    log.cost += o.cost;
    log.delay += o.delay;
    ++log.count;
  }
  if (dropped) *dropped = log;
  return make_path_set(inst, std::move(paths));
}

std::vector<Cycle> diff_cycles(const PathSet& opt, const PathSet& cur,
                               const Instance& inst) {
  std::vector<Edge> reversed_cur;
  for (const Edge& e : path_set_edges(inst, cur))
    reversed_cur.push_back(reverse_edge(e));
  std::vector<Edge> mix =
      symmetric_diff(path_set_edges(inst, opt), reversed_cur);
  std::vector<Cycle> cycles = split_closed_walk(std::move(mix));
  for (Cycle& o : cycles) canonicalize_cycle(&o);
  return cycles;
}

}  // namespace krsp
