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

#ifndef KRSP_SOLVER_HPP_
#define KRSP_SOLVER_HPP_

#include <optional>
#include <vector>

#include "krsp/bicameral.hpp"
#include "krsp/graph.hpp"
#include "krsp/numeric.hpp"
#include "krsp/phase1.hpp"
#include "krsp/residual.hpp"

namespace krsp {

enum class SolveMode { kExact, kScaled };

struct SolverOptions {
  SolveMode mode = SolveMode::kExact;
  Rat epsilon1 = Rat(1, 2);  // delay slack factor, scaled mode
  Rat epsilon2 = Rat(1, 2);  // cost slack factor, scaled mode
  Phase1Mode phase1_mode = Phase1Mode::kMinCost;
  CycleSource cycle_source = CycleSource::kHybrid;
  std::optional<long long> b_max_override;  // level budget cap; default Ĉ
  bool binary_search_b = false;
  bool trace_enabled = false;  // emission only; traces are always recorded
};

// One cancellation step. The totals and slacks describe the solution
// BEFORE the cycle is applied; the ratio is slack_delay / slack_cost,
// undefined at slack_cost = 0. Re-decomposition may shed null cycles;
// their weight is recorded so totals telescope exactly:
// delay_after = total_delay + cycle.delay - dropped_delay.
struct IterationRecord {
  int index = 0;
  Int total_delay;
  Int total_cost;
  Int slack_delay;
  Int slack_cost;
  std::optional<Rat> ratio;
  Cycle cycle;
  CycleKind kind = CycleKind::kNonBicameral;
  Int dropped_cost;
  Int dropped_delay;
};

enum class SolveStatus { kSolved, kInfeasible };

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  PathSet paths;
  std::vector<IterationRecord> trace;  // from the accepted estimate's run
  Int cost_estimate_used;
  bool scaled_fallback = false;  // scaled mode returned the exact champion
};

// Cancellation run at one fixed cost estimate: phase-1 paths, then apply
// bicameral cycles until the delay bound holds. accepted means the bound
// was reached AND total cost <= 2 * estimate; stalled means the search
// found no admissible cycle at this estimate (normal below the optimum).
struct EstimateRun {
  bool accepted = false;
  bool stalled = false;
  PathSet paths;
  std::vector<IterationRecord> trace;
};

// Runs the loop at a pinned estimate. The phase-1 solution may be passed
// in to avoid recomputation across ladder rungs.
EstimateRun run_at_estimate(const Instance& inst, const Int& cost_estimate,
                            const SolverOptions& opts,
                            const PathSet* phase1 = nullptr);

// Geometric estimate ladder: min-cost-solution cost, then factor-1.5
// steps (at least +1), capped by the sum of all edge costs.
std::vector<Int> estimate_ladder(const Instance& inst);

// Rounds weights down into coarser units: d'(e) = floor(d(e)*n/(eps1*D)),
// c'(e) = floor(c(e)*n/(eps2*estimate)), D' = floor(n/eps1). A zero delay
// bound skips the delay transform (degenerate; delays kept exact).
Instance scale_instance(const Instance& inst, const Rat& eps1,
                        const Rat& eps2, const Int& cost_estimate);

// Full solve. Exact mode: ascend the ladder to the first accepted
// estimate, then bisect down to the smallest accepted one; the result
// meets totalDelay <= D and totalCost <= 2 * estimate. Scaled mode:
// solve rounded instances per ladder rung, accept against the relaxed
// bounds (1+eps1)*D / (2+eps2)*estimate, and fall back to an exact-mode
// champion when no rung certifies.
Solution solve(const Instance& inst, const SolverOptions& opts = {});

}  // namespace krsp

#endif  // KRSP_SOLVER_HPP_
