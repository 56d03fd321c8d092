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

#ifndef KRSP_GRAPH_HPP_
#define KRSP_GRAPH_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "krsp/numeric.hpp"

namespace krsp {

// Directed edge of a (multi)graph. In an input instance cost and delay are
// nonnegative and origin is -1. Residual graphs reuse the same struct: a
// reversed edge keeps the id of the forward edge it reverses and records it
// in origin, with cost and delay negated.
struct Edge {
  int id = 0;
  int tail = 0;
  int head = 0;
  Int cost;
  Int delay;
  int origin = -1;

  bool reversed() const { return origin >= 0; }
};

struct Instance {
  int n = 0;
  std::vector<Edge> edges;
  int s = 0;
  int t = 0;
  int k = 1;
  Int delay_bound;
};

// k edge-disjoint s-t paths, each a sequence of edge ids of the instance.
struct PathSet {
  std::vector<std::vector<int>> paths;
  Int total_cost;
  Int total_delay;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// File format, one record per line:
//   n m k D [s t]
//   tail head cost delay   (m times)
// s defaults to 0 and t to n-1.
Instance parse_instance(const std::string& text);
std::string render_instance(const Instance& inst);

// Deterministic for a fixed seed. Does not set the delay bound.
Instance gen_random_instance(int n, int m, const Int& max_cost,
                             const Int& max_delay, int k, std::uint64_t seed);

// Like gen_random_instance, but the first n - 2 + k edges form k
// vertex-disjoint s-t chains over the intermediates, so k edge-disjoint
// paths always exist. Requires m >= n - 2 + k and n >= 2. Weights are
// uniform on [0, max] for every edge, chained and random alike.
Instance gen_routable_instance(int n, int m, const Int& max_cost,
                               const Int& max_delay, int k,
                               std::uint64_t seed);

// Recomputes totals from the instance and checks the PathSet invariants:
// every path is an edge-chain from s to t with distinct vertices, and no
// edge id appears twice across the set.
bool validate_path_set(const Instance& inst, const PathSet& sol,
                       std::string* why = nullptr);

PathSet make_path_set(const Instance& inst,
                      std::vector<std::vector<int>> paths);

}  // namespace krsp

#endif  // KRSP_GRAPH_HPP_
