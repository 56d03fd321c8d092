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

#ifndef KRSP_TOOLS_BENCH_SUITE_HPP_
#define KRSP_TOOLS_BENCH_SUITE_HPP_

#include <cstdint>
#include <random>

#include "krsp/graph.hpp"
#include "krsp/phase1.hpp"

namespace krsp {

// One instance of the standard benchmark suite: n in [4,8], m in [n,2n],
// k = 2, weights uniform in [0,5]. Three out of four instances route a
// k-chain backbone first so disjoint paths exist; every fourth is fully
// uniform and often infeasible. The delay bound is the ceiling midpoint
// of the min-delay total and the min-cost total, the window where
// cancellation actually has work to do; instances with no k disjoint
// paths keep the default bound of zero.
inline Instance bench_suite_instance(std::uint64_t base_seed, int index) {
  std::uint64_t seed = base_seed + static_cast<std::uint64_t>(index);
  std::mt19937_64 rng(seed);
  int n = 4 + static_cast<int>(rng() % 5);
  int m = n + static_cast<int>(rng() % (n + 1));
  Instance inst =
      index % 4 == 3
          ? gen_random_instance(n, m, Int(5), Int(5), 2, seed * 7 + 1)
          : gen_routable_instance(n, m, Int(5), Int(5), 2, seed * 7 + 1);
  auto dmin = min_delay_k_disjoint(inst);
  auto cmin = min_cost_k_disjoint(inst);
  if (dmin && cmin)
    inst.delay_bound = (dmin->total_delay + cmin->total_delay + 1) / 2;
  return inst;
}

}  // namespace krsp

#endif  // KRSP_TOOLS_BENCH_SUITE_HPP_
