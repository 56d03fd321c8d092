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

#ifndef KRSP_BICAMERAL_HPP_
#define KRSP_BICAMERAL_HPP_

#include <optional>
#include <vector>

#include "krsp/lp.hpp"
#include "krsp/residual.hpp"
#include "krsp/search_context.hpp"

namespace krsp {

// Layered search graphs: one copy of each residual vertex per cost level
// 0..B. A residual edge of cost c becomes a level-shift edge at every level
// where both endpoints stay inside [0, B]; cycles of the layered graph
// therefore track running cost. Wrap edges at the anchor close the level
// dimension so cycles through the anchor with bounded total cost appear.

enum class AuxSign { kPlus, kMinus };

struct AuxEdge {
  int tail = 0;  // aux vertex ids: base_vertex * (B + 1) + level
  int head = 0;
  int residual_id = -1;  // -1 marks a wrap edge (zero cost, zero delay)
};

struct AuxGraph {
  AuxSign sign = AuxSign::kPlus;
  int anchor = 0;
  long long budget = 1;  // B
  const ResidualGraph* residual = nullptr;
  int base_n = 0;
  std::vector<AuxEdge> edges;

  int num_vertices() const {
    return static_cast<int>(base_n * (budget + 1));
  }
  int vertex(int base, long long level) const {
    return static_cast<int>(base * (budget + 1) + level);
  }
};

// Levels 0..B for every residual vertex; for each residual edge with
// |cost| <= B, one copy per level keeping both ends in range; wrap edges
// at the anchor (kPlus: level i -> 0 for i in 1..B; kMinus: i -> B for
// i in 0..B-1). Edge order: residual id ascending, level ascending, wraps
// last. Throws std::overflow_error when the layered graph would not fit
// native indices (defensive; sizes here are expected to be desk scale).
AuxGraph build_aux(const ResidualGraph& residual, int anchor, long long budget,
                   AuxSign sign);

// Drops wrap edges, maps the rest to residual edges, and splits the closed
// walk into vertex-simple residual cycles (canonicalized). All-wrap input
// yields the empty set.
std::vector<Cycle> lift_cycle(const AuxGraph& aux,
                              const std::vector<int>& aux_edge_ids);

// The converse embedding: rotates a residual cycle through aux.anchor and
// walks it level by level from the anchor's entry level (0 for kPlus, B for
// kMinus), closing with a wrap edge when the net cost is nonzero. Returns
// the aux edge ids, or nothing when a prefix cost leaves [0, B] (possible
// for mixed-sign cycles even when the total fits).
std::optional<std::vector<int>> embed_cycle(const AuxGraph& aux,
                                            const Cycle& cycle);

// Min-cost circulation LP over the aux edges: one variable per edge with
// bounds [0, 1], conservation at every touched vertex, cost of the residual
// back-reference as the objective (wraps cost zero). kPlus graphs get the
// delay-budget row sum(d x) <= min(delta_d, -1); kMinus graphs get no
// budget row and rely on the objective to surface negative-cost cycles.
LpProblem make_cycle_lp(const AuxGraph& aux, const Int& delta_d);

// Exact classification against the search context. Type 0 improves one
// criterion without hurting the other; type 1 buys delay with cost at a
// ratio no worse than delta_d/delta_c; type 2 buys cost with delay at a
// ratio no better. Ratio classes require delta_c > 0 and |cost| within the
// estimate; the null cycle is never bicameral.
CycleKind classify_cycle(const Cycle& cycle, const SearchContext& ctx);

enum class CycleSource { kLp, kEnumerate, kHybrid };

struct SearchStats {
  int aux_graphs = 0;     // layered graphs constructed
  int lps_solved = 0;     // circulation LPs actually run
  int prechecks_cut = 0;  // (anchor, B) pairs skipped by cycle prechecks
  int candidates = 0;     // distinct admissible cycles pooled
  bool enumeration_used = false;
};

struct SearchOptions {
  // Replace the level sweep B = 1..Bmax by a binary search for the smallest
  // feasible B per (anchor, sign), evaluating only that level. Experimental;
  // narrows the candidate pool.
  bool binary_search_b = false;
};

// The cycle search. kLp sweeps B = 1..ctx.b_max over every anchor and both
// signs, solves each circulation LP, lifts the support, returns the first
// type-0 cycle immediately, and otherwise selects among admissible
// candidates: the steepest type-1 ratio versus the flattest type-2 ratio,
// smaller |ratio| winning, ties toward smaller |cost| then lexicographic
// edge ids. kEnumerate classifies every simple residual cycle instead
// (exhaustive; graph must be small enough for the enumeration cap).
// kHybrid runs the LP lane and falls back to enumeration when it finds
// nothing; on enumeration-sized graphs it first checks existence
// exhaustively so hopeless searches skip the LP sweep. Any returned cycle
// classifies as type 0, 1 or 2 under ctx.
std::optional<Cycle> find_bicameral(const SearchContext& ctx,
                                    CycleSource source,
                                    SearchStats* stats = nullptr,
                                    const SearchOptions& options = {});

}  // namespace krsp

#endif  // KRSP_BICAMERAL_HPP_
