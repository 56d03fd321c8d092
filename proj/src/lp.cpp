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

#include "krsp/lp.hpp"

#include <stdexcept>

namespace krsp {
namespace {

enum class VarState { kBasic, kAtLower, kAtUpper, kFree, kFixed };

// Dense-tableau simplex over exact rationals with explicit variable bounds.
// Columns: structural variables, then one slack per inequality, then one
// artificial per row. Rows keep an identity in the basic columns; beta_
// carries the basic variables' current values, nonbasic values live in
// cur_. Bland's rule picks the entering column, ties on leaving rows break
// toward the smallest basic variable index, and a strict bound-to-bound
// flip is preferred when it is shorter than every row ratio; together these
// rule out cycling.
class Simplex {
 public:
  explicit Simplex(const LpProblem& p) : p_(p) {}

  LpSolution run() {
    if (!setup()) return finish(LpStatus::kInfeasible);
    // Phase 1: drive the artificials to zero.
    cost_.assign(ncol_, Rat(0));
    for (int a = art0_; a < ncol_; ++a) cost_[a] = 1;
    if (optimize() == StepResult::kUnbounded)
      throw std::logic_error("phase 1 cannot be unbounded");
    Rat infeasibility = 0;
    for (int r = 0; r < nrow_; ++r)
      if (!dead_[r] && basis_[r] >= art0_) infeasibility += beta_[r];
    if (infeasibility != 0) return finish(LpStatus::kInfeasible);
    retire_artificials();

    cost_.assign(ncol_, Rat(0));
    for (int j = 0; j < p_.num_vars; ++j) cost_[j] = p_.objective[j];
    if (optimize() == StepResult::kUnbounded)
      return finish(LpStatus::kUnbounded);
    return finish(LpStatus::kOptimal);
  }

 private:
  enum class StepResult { kPivoted, kOptimal, kUnbounded };

  bool setup() {
    const int ns = p_.num_vars;
    const int ni = static_cast<int>(p_.inequalities.size());
    nrow_ = static_cast<int>(p_.equalities.size()) + ni;
    slack0_ = ns;
    art0_ = ns + ni;
    ncol_ = art0_ + nrow_;

    lo_.assign(ncol_, Rat(0));
    up_.assign(ncol_, Rat(0));
    has_lo_.assign(ncol_, true);
    has_up_.assign(ncol_, false);
    for (int j = 0; j < ns; ++j) {
      has_lo_[j] = p_.lower[j].has_value();
      has_up_[j] = p_.upper[j].has_value();
      if (has_lo_[j]) lo_[j] = *p_.lower[j];
      if (has_up_[j]) up_[j] = *p_.upper[j];
      if (has_lo_[j] && has_up_[j] && lo_[j] > up_[j]) return false;
    }
    // Slacks and artificials are nonnegative and unbounded above.

    state_.assign(ncol_, VarState::kAtLower);
    cur_.assign(ncol_, Rat(0));
    for (int j = 0; j < ncol_; ++j) {
      if (j < ns && !has_lo_[j]) {
        state_[j] = has_up_[j] ? VarState::kAtUpper : VarState::kFree;
        cur_[j] = has_up_[j] ? up_[j] : Rat(0);
      } else {
        cur_[j] = lo_[j];
      }
      if (has_lo_[j] && has_up_[j] && lo_[j] == up_[j])
        state_[j] = VarState::kFixed;
    }

    m_.assign(nrow_, std::vector<Rat>(ncol_, Rat(0)));
    basis_.assign(nrow_, -1);
    row_of_.assign(ncol_, -1);
    beta_.assign(nrow_, Rat(0));
    dead_.assign(nrow_, false);
    int r = 0;
    auto load_row = [&](const LpRow& row, bool with_slack, int slack) {
      for (const auto& [var, coef] : row.terms) m_[r][var] += coef;
      if (with_slack) m_[r][slack] = 1;
      Rat residual = row.rhs;
      for (int j = 0; j < art0_; ++j)
        if (m_[r][j] != 0) residual -= m_[r][j] * cur_[j];
      if (residual < 0) {
        // Flip the row so the basic artificial keeps a +1 coefficient.
        for (int j = 0; j < art0_; ++j) m_[r][j] = -m_[r][j];
        residual = -residual;
      }
      const int art = art0_ + r;
      m_[r][art] = 1;
      basis_[r] = art;
      row_of_[art] = r;
      state_[art] = VarState::kBasic;
      beta_[r] = residual;
      ++r;
    };
    for (const LpRow& row : p_.equalities) load_row(row, false, 0);
    for (int i = 0; i < ni; ++i)
      load_row(p_.inequalities[i], true, slack0_ + i);
    return true;
  }

  StepResult optimize() {
    while (true) {
      StepResult s = step();
      if (s != StepResult::kPivoted) return s;
    }
  }

  // One simplex step: find the entering column (Bland), run the bounded
  // ratio test, then either flip a bound or pivot.
  StepResult step() {
    int enter = -1, dir = 0;
    for (int j = 0; j < ncol_; ++j) {
      if (state_[j] == VarState::kBasic || state_[j] == VarState::kFixed)
        continue;
      Rat d = cost_[j];
      for (int i = 0; i < nrow_; ++i) {
        if (dead_[i] || cost_[basis_[i]] == 0 || m_[i][j] == 0) continue;
        d -= cost_[basis_[i]] * m_[i][j];
      }
      if ((state_[j] == VarState::kAtLower || state_[j] == VarState::kFree) &&
          d < 0) {
        enter = j;
        dir = 1;
        break;
      }
      if ((state_[j] == VarState::kAtUpper || state_[j] == VarState::kFree) &&
          d > 0) {
        enter = j;
        dir = -1;
        break;
      }
    }
    if (enter < 0) return StepResult::kOptimal;

    bool has_limit = false;
    Rat limit;
    int leave_row = -1;
    bool leave_to_upper = false;
    for (int i = 0; i < nrow_; ++i) {
      if (dead_[i] || m_[i][enter] == 0) continue;
      const Rat rate = -m_[i][enter] * dir;  // d(beta_i)/d(step)
      Rat cand;
      bool to_upper;
      if (rate > 0) {
        const int v = basis_[i];
        if (!has_up_[v]) continue;
        cand = (up_[v] - beta_[i]) / rate;
        to_upper = true;
      } else {
        const int v = basis_[i];
        if (!has_lo_[v]) continue;
        cand = (beta_[i] - lo_[v]) / -rate;
        to_upper = false;
      }
      if (!has_limit || cand < limit ||
          (cand == limit && basis_[i] < basis_[leave_row])) {
        has_limit = true;
        limit = cand;
        leave_row = i;
        leave_to_upper = to_upper;
      }
    }
    // The entering variable may stop at its own opposite bound first.
    bool span_finite = has_lo_[enter] && has_up_[enter];
    if (span_finite) {
      Rat span = up_[enter] - lo_[enter];
      if (!has_limit || span < limit) {
        const Rat delta = dir > 0 ? span : -span;
        for (int i = 0; i < nrow_; ++i) {
          if (!dead_[i] && m_[i][enter] != 0)
            beta_[i] -= m_[i][enter] * delta;
        }
        cur_[enter] += delta;
        state_[enter] =
            dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
        return StepResult::kPivoted;
      }
    }
    if (!has_limit) return StepResult::kUnbounded;

    pivot(leave_row, enter, dir > 0 ? limit : -limit, leave_to_upper);
    return StepResult::kPivoted;
  }

  void pivot(int r, int enter, const Rat& delta, bool leave_to_upper) {
    for (int i = 0; i < nrow_; ++i) {
      if (!dead_[i] && i != r && m_[i][enter] != 0)
        beta_[i] -= m_[i][enter] * delta;
    }
    const Rat entering_value = cur_[enter] + delta;
    const int leaving = basis_[r];
    state_[leaving] = leave_to_upper ? VarState::kAtUpper : VarState::kAtLower;
    cur_[leaving] = leave_to_upper ? up_[leaving] : lo_[leaving];
    row_of_[leaving] = -1;

    // Eliminate the entering column everywhere else; touch only the pivot
    // row's nonzero columns.
    std::vector<int> nz;
    const Rat piv = m_[r][enter];
    for (int j = 0; j < ncol_; ++j) {
      if (m_[r][j] == 0) continue;
      if (piv != 1) m_[r][j] /= piv;
      nz.push_back(j);
    }
    for (int i = 0; i < nrow_; ++i) {
      if (dead_[i] || i == r || m_[i][enter] == 0) continue;
      const Rat factor = m_[i][enter];
      for (int j : nz) m_[i][j] -= factor * m_[r][j];
    }
    basis_[r] = enter;
    row_of_[enter] = r;
    state_[enter] = VarState::kBasic;
    beta_[r] = entering_value;
  }

  // After phase 1, remove zero-valued artificials from the basis with
  // degenerate pivots; rows that admit none are redundant and retire with
  // their artificial. All artificial columns then freeze at zero.
  void retire_artificials() {
    for (int r = 0; r < nrow_; ++r) {
      if (dead_[r] || basis_[r] < art0_) continue;
      int target = -1;
      for (int j = 0; j < art0_; ++j) {
        if (state_[j] != VarState::kBasic && state_[j] != VarState::kFixed &&
            m_[r][j] != 0) {
          target = j;
          break;
        }
      }
      if (target < 0) {
        dead_[r] = true;
        continue;
      }
      pivot(r, target, Rat(0), false);
    }
    for (int a = art0_; a < ncol_; ++a) {
      if (state_[a] != VarState::kBasic) {
        state_[a] = VarState::kFixed;
        cur_[a] = 0;
      }
    }
  }

  LpSolution finish(LpStatus status) {
    LpSolution out;
    out.status = status;
    out.objective_value = 0;
    if (status != LpStatus::kOptimal) return out;
    out.values.assign(p_.num_vars, Rat(0));
    for (int j = 0; j < p_.num_vars; ++j) {
      out.values[j] = row_of_[j] >= 0 ? beta_[row_of_[j]] : cur_[j];
      out.objective_value += p_.objective[j] * out.values[j];
    }
    verify(out);
    return out;
  }

  // Exactness gate: a returned optimum satisfies every original row and
  // bound. A violation here is a solver bug, not an input condition.
  void verify(const LpSolution& sol) const {
    auto value_of = [&](const LpRow& row) {
      Rat v = 0;
      for (const auto& [var, coef] : row.terms) v += coef * sol.values[var];
      return v;
    };
    for (const LpRow& row : p_.equalities)
      if (value_of(row) != row.rhs)
        throw std::logic_error("simplex: equality violated");
    for (const LpRow& row : p_.inequalities)
      if (value_of(row) > row.rhs)
        throw std::logic_error("simplex: inequality violated");
    for (int j = 0; j < p_.num_vars; ++j) {
      if (p_.lower[j] && sol.values[j] < *p_.lower[j])
        throw std::logic_error("simplex: lower bound violated");
      if (p_.upper[j] && sol.values[j] > *p_.upper[j])
        throw std::logic_error("simplex: upper bound violated");
    }
  }

  const LpProblem& p_;
  int nrow_ = 0, ncol_ = 0, slack0_ = 0, art0_ = 0;
  std::vector<std::vector<Rat>> m_;
  std::vector<Rat> beta_, cur_, cost_, lo_, up_;
  std::vector<bool> has_lo_, has_up_;
  std::vector<int> basis_, row_of_;
  std::vector<VarState> state_;
  std::vector<bool> dead_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  if (static_cast<int>(p.objective.size()) != p.num_vars ||
      static_cast<int>(p.lower.size()) != p.num_vars ||
      static_cast<int>(p.upper.size()) != p.num_vars)
    throw std::invalid_argument("malformed LP");
  return Simplex(p).run();
}

std::vector<IndexCycle> decompose_circulation(
    int num_vertices, const std::vector<std::pair<int, int>>& arcs,
    const std::vector<Rat>& values) {
  if (arcs.size() != values.size())
    throw std::invalid_argument("arc/value size mismatch");
  std::vector<Rat> net(num_vertices, Rat(0));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (values[i] < 0) throw std::invalid_argument("negative flow value");
    net[arcs[i].first] += values[i];
    net[arcs[i].second] -= values[i];
  }
  for (const Rat& v : net)
    if (v != 0) throw std::invalid_argument("not a circulation");

  std::vector<Rat> rem = values;
  std::vector<std::vector<int>> out_arcs(num_vertices);
  for (std::size_t i = 0; i < arcs.size(); ++i)
    out_arcs[arcs[i].first].push_back(static_cast<int>(i));

  std::vector<IndexCycle> cycles;
  for (std::size_t start = 0; start < arcs.size(); ++start) {
    while (rem[start] > 0) {
      // Walk positive arcs from `start` until a vertex repeats, then peel
      // the loop by its bottleneck.
      std::vector<int> walk{static_cast<int>(start)};
      std::vector<int> pos_of(num_vertices, -1);
      pos_of[arcs[start].first] = 0;
      int at = arcs[start].second;
      while (pos_of[at] < 0) {
        pos_of[at] = static_cast<int>(walk.size());
        int next = -1;
        for (int cand : out_arcs[at]) {
          if (rem[cand] > 0) {
            next = cand;
            break;
          }
        }
        if (next < 0)
          throw std::logic_error("circulation walk stranded");
        walk.push_back(next);
        at = arcs[next].second;
      }
      IndexCycle cycle;
      cycle.edges.assign(walk.begin() + pos_of[at], walk.end());
      cycle.weight = rem[cycle.edges[0]];
      for (int e : cycle.edges)
        if (rem[e] < cycle.weight) cycle.weight = rem[e];
      for (int e : cycle.edges) rem[e] -= cycle.weight;
      cycles.push_back(std::move(cycle));
    }
  }
  return cycles;
}

}  // namespace krsp
