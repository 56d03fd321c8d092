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

#ifndef KRSP_ORACLE_HPP_
#define KRSP_ORACLE_HPP_

#include <vector>

#include "krsp/graph.hpp"
#include "krsp/residual.hpp"
#include "krsp/search_context.hpp"

namespace krsp {

// Ground-truth brute force for desk-scale verification. Shares only the
// plain data types with the solver; all search and classification logic
// here is written independently of the solver modules.

struct BruteResult {
  bool feasible = false;
  Int best_cost;
  PathSet best;
};

// Exact optimum by enumerating every edge subset that satisfies the k-flow
// degree condition and extracting from each all ways to pick k edge-disjoint
// simple s-t paths. Hard caps: n <= 10, m <= 16.
BruteResult brute_krsp(const Instance& inst);

// Largest vertex count enumerate_simple_cycles accepts.
inline constexpr int kMaxCycleVertices = 12;

// Every simple directed cycle of the residual multigraph, each exactly once,
// rotated so its smallest edge id comes first. Hard cap: kMaxCycleVertices.
std::vector<Cycle> enumerate_simple_cycles(const ResidualGraph& g);

// Re-derives the cycle classification from raw sums using integer
// cross-multiplication only (the solver's classifier divides rationals);
// true iff the cycle is type 0, 1 or 2 under ctx.
bool verify_bicameral(const Cycle& o, const SearchContext& ctx);

}  // namespace krsp

#endif  // KRSP_ORACLE_HPP_
