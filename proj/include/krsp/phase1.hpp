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

#ifndef KRSP_PHASE1_HPP_
#define KRSP_PHASE1_HPP_

#include <optional>

#include "krsp/graph.hpp"
#include "krsp/lp.hpp"

namespace krsp {

// Starting solutions for the cancellation loop: k edge-disjoint s->t paths
// optimized for one criterion, ignoring the other.

// Minimum total cost over all sets of k edge-disjoint s->t paths, delay
// unconstrained; ties broken toward smaller delay. Empty when fewer than k
// disjoint paths exist.
std::optional<PathSet> min_cost_k_disjoint(const Instance& inst);

// Same with the roles of delay and cost swapped.
std::optional<PathSet> min_delay_k_disjoint(const Instance& inst);

// True iff some k edge-disjoint path set meets the delay bound. Exact.
bool check_feasible(const Instance& inst);

enum class Phase1Mode { kMinCost, kLpRound };

// The fractional relaxation: min-cost flow of value k with unit capacities
// and the delay budget as a side constraint. One variable per edge.
LpProblem fractional_relaxation(const Instance& inst);

// Initial k disjoint paths for a feasible instance. kMinCost returns the
// exact cost minimizer (its cost is a lower bound on the constrained
// optimum). kLpRound solves the fractional relaxation, decomposes the flow
// into weighted paths, keeps edge-disjoint ones greedily by weight, and
// completes the set with min-cost paths on the untouched edges.
// Throws std::invalid_argument when the instance is infeasible.
PathSet phase1_solution(const Instance& inst, Phase1Mode mode);

}  // namespace krsp

#endif  // KRSP_PHASE1_HPP_
