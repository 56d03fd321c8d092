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

#ifndef KRSP_LP_HPP_
#define KRSP_LP_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "krsp/numeric.hpp"

namespace krsp {

// Sparse constraint row: sum of coef*var compared against rhs.
struct LpRow {
  std::vector<std::pair<int, Rat>> terms;
  Rat rhs;
};

// Minimization problem over exact rationals. A missing bound means that
// side is unbounded.
struct LpProblem {
  int num_vars = 0;
  std::vector<Rat> objective;
  std::vector<LpRow> equalities;
  std::vector<LpRow> inequalities;  // sum <= rhs
  std::vector<std::optional<Rat>> lower;
  std::vector<std::optional<Rat>> upper;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rat> values;
  Rat objective_value;
};

// Two-phase primal simplex on the bounded-variable tableau, Bland's rule,
// all arithmetic exact. Optimal solutions are basic and verified against
// every constraint before being returned; statuses carry no tolerance.
LpSolution solve_lp(const LpProblem& p);

// A simple cycle of a circulation's support, as indices into the arc list,
// carried with its flow weight.
struct IndexCycle {
  std::vector<int> edges;
  Rat weight;
};

// Peels a nonnegative circulation into weighted simple cycles whose
// weighted incidence sum reproduces the input exactly. Throws when the
// values violate flow conservation or are negative.
std::vector<IndexCycle> decompose_circulation(
    int num_vertices, const std::vector<std::pair<int, int>>& arcs,
    const std::vector<Rat>& values);

}  // namespace krsp

#endif  // KRSP_LP_HPP_
