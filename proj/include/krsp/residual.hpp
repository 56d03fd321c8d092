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

#ifndef KRSP_RESIDUAL_HPP_
#define KRSP_RESIDUAL_HPP_

#include <vector>

#include "krsp/graph.hpp"

namespace krsp {

// The instance graph with the current solution's edges reversed and their
// cost/delay negated. Every original edge appears exactly once, under its
// original id; reversed copies carry origin = that id. May be a multigraph
// with genuine parallel edges either way.
struct ResidualGraph {
  const Instance* base = nullptr;
  std::vector<Edge> edges;  // index == id
};

// Closed chain of residual edges (head of each equals tail of the next,
// last head equals first tail), distinct edges, with summed cost/delay.
struct Cycle {
  std::vector<Edge> edges;
  Int cost;
  Int delay;
};

Cycle make_cycle(std::vector<Edge> edges);

// Rotates the edge sequence so the smallest edge id comes first.
void canonicalize_cycle(Cycle* cycle);

ResidualGraph build_residual(const Instance& inst, const PathSet& sol);

// Edges of the instance used by the path set, in original orientation.
std::vector<Edge> path_set_edges(const Instance& inst, const PathSet& sol);

// Union minus cancelling pairs. A reversed edge cancels exactly the forward
// edge whose id its origin names; two forward copies of the same id collapse
// to one. Genuine opposite-direction parallel edges of the instance do not
// cancel (matching is by origin, not by endpoints).
std::vector<Edge> symmetric_diff(const std::vector<Edge>& a,
                                 const std::vector<Edge>& b);

// Splits a degree-balanced edge multiset into vertex-simple cycles by
// walking from the smallest unused edge id and excising a loop whenever
// the walk revisits a vertex. Entries may repeat an id. Output sorted by
// smallest member edge id. Throws when the multiset is not balanced.
std::vector<Cycle> split_closed_walk(std::vector<Edge> pool);

struct DroppedCycles {
  Int cost;
  Int delay;
  int count = 0;
};

// Extracts k edge-disjoint s-t paths from an edge set (a subset of the
// instance edges) satisfying the k-flow degree condition. Leftover edges
// form cycles; a leftover cycle is dropped iff dropping does not raise
// either total, which instance edges (nonnegative weights) always satisfy.
// Dropped sums are reported through `dropped`. Throws when the degree
// condition fails or a leftover cycle would raise a total.
PathSet decompose_to_paths(const std::vector<Edge>& edges,
                           const Instance& inst,
                           DroppedCycles* dropped = nullptr);

// Cycles composing {opt} (+) {reverse(cur)}: edge-disjoint residual cycles
// whose cost/delay sums telescope to the cost/delay differences.
std::vector<Cycle> diff_cycles(const PathSet& opt, const PathSet& cur,
                               const Instance& inst);

}  // namespace krsp

#endif  // KRSP_RESIDUAL_HPP_
