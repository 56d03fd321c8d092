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

#include "krsp/bicameral.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "krsp/oracle.hpp"

namespace krsp {
namespace {

// Cycle prechecks run in native integers; weights beyond this magnitude
// disable them (the LPs still run, exactly).
constexpr long long kNativeWeightCap = 1LL << 40;

std::optional<long long> to_native(const Int& v) {
  if (v > kNativeWeightCap || v < -kNativeWeightCap) return std::nullopt;
  return v.convert_to<long long>();
}

struct Arc {
  int tail;
  int head;
  long long weight;
};

// Distances in the negative-cycle test stay within num_vertices * max |w|;
// callers must skip the test when that product nears the long long range.
bool bellman_ford_safe(int num_vertices, const std::vector<Arc>& arcs) {
  long long peak = 0;
  for (const Arc& a : arcs) peak = std::max(peak, std::abs(a.weight));
  return peak == 0 ||
         num_vertices <= (1LL << 62) / (peak * 2);
}

// Negative-cycle test: Bellman-Ford from a virtual source (all distances
// zero); an improvement in every one of num_vertices passes exposes a
// cycle.
bool has_negative_cycle(int num_vertices, const std::vector<Arc>& arcs) {
  std::vector<long long> dist(num_vertices, 0);
  for (int pass = 0; pass < num_vertices; ++pass) {
    bool changed = false;
    for (const Arc& a : arcs) {
      if (dist[a.tail] + a.weight < dist[a.head]) {
        dist[a.head] = dist[a.tail] + a.weight;
        changed = true;
      }
    }
    if (!changed) return false;
  }
  return true;
}

std::vector<int> scc_ids(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (const Edge& e : edges) {
    fwd[e.tail].push_back(e.head);
    rev[e.head].push_back(e.tail);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> order;
  auto sweep = [&](auto&& self, int u) -> void {
    seen[u] = 1;
    for (int w : fwd[u])
      if (!seen[w]) self(self, w);
    order.push_back(u);
  };
  for (int u = 0; u < n; ++u)
    if (!seen[u]) sweep(sweep, u);
  std::vector<int> id(n, -1);
  int comp = 0;
  auto gather = [&](auto&& self, int u) -> void {
    id[u] = comp;
    for (int w : rev[u])
      if (id[w] < 0) self(self, w);
  };
  for (int i = n - 1; i >= 0; --i) {
    if (id[order[i]] < 0) {
      gather(gather, order[i]);
      ++comp;
    }
  }
  return id;
}

// Rotation-independent identity of a residual cycle: the lexicographically
// smallest rotation of its (id, orientation) sequence.
std::vector<int> cycle_key(const Cycle& o) {
  const std::size_t len = o.edges.size();
  std::vector<int> seq(len);
  for (std::size_t i = 0; i < len; ++i)
    seq[i] = o.edges[i].id * 2 + (o.edges[i].reversed() ? 1 : 0);
  std::vector<int> best = seq;
  for (std::size_t r = 1; r < len; ++r) {
    std::rotate(seq.begin(), seq.begin() + 1, seq.end());
    if (seq < best) best = seq;
  }
  return best;
}

struct Candidate {
  Cycle cycle;
  Rat ratio;  // delay / cost, strictly negative in both pools
  Int cost_magnitude;
  std::vector<int> key;
};

struct Pool {
  std::set<std::vector<int>> seen;
  std::vector<Candidate> type1;
  std::vector<Candidate> type2;
};

void pool_candidate(Pool* pool, const Cycle& o, CycleKind kind,
                    SearchStats* stats) {
  std::vector<int> key = cycle_key(o);
  if (!pool->seen.insert(key).second) return;
  Candidate c{o, Rat(o.delay) / Rat(o.cost), abs(o.cost), std::move(key)};
  (kind == CycleKind::kType1 ? pool->type1 : pool->type2)
      .push_back(std::move(c));
  ++stats->candidates;
}

// Steepest wants the most negative ratio; flattest the ratio closest to
// zero. Ties break toward smaller |cost|, then the smaller key.
const Candidate* best_of(const std::vector<Candidate>& v, bool steepest) {
  const Candidate* out = nullptr;
  for (const Candidate& c : v) {
    if (!out) {
      out = &c;
      continue;
    }
    const Rat a = steepest ? c.ratio : Rat(-c.ratio);
    const Rat b = steepest ? out->ratio : Rat(-out->ratio);
    if (a < b ||
        (a == b && (c.cost_magnitude < out->cost_magnitude ||
                    (c.cost_magnitude == out->cost_magnitude &&
                     c.key < out->key))))
      out = &c;
  }
  return out;
}

std::optional<Cycle> select_candidate(const Pool& pool) {
  const Candidate* o1 = best_of(pool.type1, true);
  const Candidate* o2 = best_of(pool.type2, false);
  if (!o1 && !o2) return std::nullopt;
  if (o1 && !o2) return o1->cycle;
  if (!o1) return o2->cycle;
  // |r1| <= |r2| reads r1 >= r2 on negative ratios.
  return o1->ratio >= o2->ratio ? o1->cycle : o2->cycle;
}

// Level-shift copies of the given residual edges for budget B, in the
// build_aux edge order.
std::vector<AuxEdge> level_copies(const ResidualGraph& rg,
                                  const std::vector<char>& keep,
                                  long long budget) {
  const long long levels = budget + 1;
  std::vector<AuxEdge> out;
  for (const Edge& e : rg.edges) {
    if (!keep.empty() && !keep[e.id]) continue;
    if (e.cost > budget || e.cost < -budget) continue;
    const long long c = e.cost.convert_to<long long>();
    const long long lo = c >= 0 ? 0 : -c;
    const long long hi = c >= 0 ? budget - c : budget;
    for (long long i = lo; i <= hi; ++i) {
      out.push_back({static_cast<int>(e.tail * levels + i),
                     static_cast<int>(e.head * levels + i + c), e.id});
    }
  }
  return out;
}

void append_wraps(AuxGraph* aux) {
  if (aux->sign == AuxSign::kPlus) {
    for (long long i = 1; i <= aux->budget; ++i)
      aux->edges.push_back({aux->vertex(aux->anchor, i),
                            aux->vertex(aux->anchor, 0), -1});
  } else {
    for (long long i = 0; i < aux->budget; ++i)
      aux->edges.push_back({aux->vertex(aux->anchor, i),
                            aux->vertex(aux->anchor, aux->budget), -1});
  }
}

void check_aux_size(int n, long long budget) {
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  if (static_cast<long long>(n) * (budget + 1) >
      std::numeric_limits<int>::max() / 2)
    throw std::overflow_error("auxiliary graph too large");
}

// State shared by one LP-lane sweep.
struct LpLane {
  const SearchContext& ctx;
  SearchStats* stats;
  const ResidualGraph& rg;
  int n;
  long long bmax;
  bool native = true;                // prechecks available
  std::vector<long long> cost_ll, delay_ll;
  std::vector<char> usable;          // residual edge inside one SCC
  std::vector<char> anchored;        // vertex lies on some residual cycle
  bool want_plus = true, want_minus = true;
  Pool pool;

  explicit LpLane(const SearchContext& c, SearchStats* s)
      : ctx(c), stats(s), rg(*c.residual), n(rg.base->n),
        bmax(std::max(1LL, c.b_max)) {
    const std::size_t m = rg.edges.size();
    cost_ll.resize(m);
    delay_ll.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      auto cc = to_native(rg.edges[i].cost);
      auto dd = to_native(rg.edges[i].delay);
      if (!cc || !dd) {
        native = false;
        break;
      }
      cost_ll[i] = *cc;
      delay_ll[i] = *dd;
    }
    std::vector<int> scc = scc_ids(n, rg.edges);
    usable.assign(m, 0);
    anchored.assign(n, 0);
    for (const Edge& e : rg.edges) {
      if (scc[e.tail] == scc[e.head]) {
        usable[e.id] = 1;
        anchored[e.tail] = 1;
        anchored[e.head] = 1;
      }
    }
    if (native) {
      // A lane with no improving cycle in its criterion yields no
      // candidates anywhere: every kPlus LP is budget-infeasible, and
      // every kMinus LP bottoms out at the zero circulation.
      std::vector<Arc> by_delay, by_cost;
      for (const Edge& e : rg.edges) {
        if (!usable[e.id]) continue;
        by_delay.push_back({e.tail, e.head, delay_ll[e.id]});
        by_cost.push_back({e.tail, e.head, cost_ll[e.id]});
      }
      if (bellman_ford_safe(n, by_delay) && bellman_ford_safe(n, by_cost)) {
        want_plus = has_negative_cycle(n, by_delay);
        want_minus = has_negative_cycle(n, by_cost);
      } else {
        native = false;
      }
    }
  }

  bool precheck_passes(const AuxGraph& aux) const {
    if (!native) return true;
    std::vector<Arc> arcs;
    arcs.reserve(aux.edges.size());
    for (const AuxEdge& ae : aux.edges) {
      long long w = 0;
      if (ae.residual_id >= 0)
        w = aux.sign == AuxSign::kPlus ? delay_ll[ae.residual_id]
                                       : cost_ll[ae.residual_id];
      arcs.push_back({ae.tail, ae.head, w});
    }
    if (!bellman_ford_safe(aux.num_vertices(), arcs)) return true;
    return has_negative_cycle(aux.num_vertices(), arcs);
  }

  // Builds the (anchor, B, sign) graph on the cycle-bearing edges only.
  // Anchors off every cycle cannot use their wrap edges, so they all
  // reduce to the same wrap-free graph; the caller runs that one once.
  AuxGraph assemble(int anchor, long long budget, AuxSign sign,
                    const std::vector<AuxEdge>& base) const {
    AuxGraph aux;
    aux.sign = sign;
    aux.anchor = anchor;
    aux.budget = budget;
    aux.residual = &rg;
    aux.base_n = n;
    aux.edges = base;
    if (anchored[anchor]) append_wraps(&aux);
    ++stats->aux_graphs;
    return aux;
  }

  // Solve one layered LP, lift its support, classify. A type-0 cycle is
  // returned immediately; other admissible cycles land in the pool.
  std::optional<Cycle> process(const AuxGraph& aux) {
    if (!precheck_passes(aux)) {
      ++stats->prechecks_cut;
      return std::nullopt;
    }
    LpProblem lp = make_cycle_lp(aux, ctx.delta_d);
    ++stats->lps_solved;
    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::kUnbounded)
      throw std::logic_error("boxed circulation LP cannot be unbounded");
    if (sol.status == LpStatus::kInfeasible) return std::nullopt;
    // At objective zero the zero circulation is optimal too; take it as
    // the canonical optimum so the lane reports nothing improving.
    if (aux.sign == AuxSign::kMinus && sol.objective_value == 0)
      return std::nullopt;
    std::vector<std::pair<int, int>> arcs;
    std::vector<Rat> vals;
    std::vector<int> back;
    for (int i = 0; i < static_cast<int>(aux.edges.size()); ++i) {
      if (sol.values[i] > 0) {
        arcs.emplace_back(aux.edges[i].tail, aux.edges[i].head);
        vals.push_back(sol.values[i]);
        back.push_back(i);
      }
    }
    for (const IndexCycle& ic :
         decompose_circulation(aux.num_vertices(), arcs, vals)) {
      std::vector<int> ids;
      ids.reserve(ic.edges.size());
      for (int a : ic.edges) ids.push_back(back[a]);
      for (const Cycle& o : lift_cycle(aux, ids)) {
        CycleKind kind = classify_cycle(o, ctx);
        if (kind == CycleKind::kType0) return o;
        if (kind != CycleKind::kNonBicameral)
          pool_candidate(&pool, o, kind, stats);
      }
    }
    return std::nullopt;
  }

  std::optional<Cycle> sweep() {
    for (long long budget = 1; budget <= bmax; ++budget) {
      check_aux_size(n, budget);
      const std::vector<AuxEdge> base = level_copies(rg, usable, budget);
      bool floating_done_plus = false, floating_done_minus = false;
      for (int v = 0; v < n; ++v) {
        for (AuxSign sign : {AuxSign::kPlus, AuxSign::kMinus}) {
          if (sign == AuxSign::kPlus && !want_plus) continue;
          if (sign == AuxSign::kMinus && !want_minus) continue;
          bool& floating_done = sign == AuxSign::kPlus ? floating_done_plus
                                                       : floating_done_minus;
          if (!anchored[v]) {
            if (floating_done) continue;
            floating_done = true;
          }
          if (auto hit = process(assemble(v, budget, sign, base))) return hit;
        }
      }
    }
    return select_candidate(pool);
  }

  // Experimental narrow sweep: per (anchor, sign), binary search the
  // smallest budget whose graph holds an improving cycle (monotone in B:
  // cycles persist under level shifts) and evaluate only that budget.
  std::optional<Cycle> sweep_smallest_budget() {
    std::map<long long, std::vector<AuxEdge>> base_cache;
    auto base_for = [&](long long budget) -> const std::vector<AuxEdge>& {
      auto it = base_cache.find(budget);
      if (it == base_cache.end()) {
        check_aux_size(n, budget);
        it = base_cache.emplace(budget, level_copies(rg, usable, budget))
                 .first;
      }
      return it->second;
    };
    bool floating_done_plus = false, floating_done_minus = false;
    for (int v = 0; v < n; ++v) {
      for (AuxSign sign : {AuxSign::kPlus, AuxSign::kMinus}) {
        if (sign == AuxSign::kPlus && !want_plus) continue;
        if (sign == AuxSign::kMinus && !want_minus) continue;
        bool& floating_done =
            sign == AuxSign::kPlus ? floating_done_plus : floating_done_minus;
        if (!anchored[v]) {
          if (floating_done) continue;
          floating_done = true;
        }
        long long chosen = bmax;
        if (native) {
          if (!precheck_passes(assemble(v, bmax, sign, base_for(bmax)))) {
            ++stats->prechecks_cut;
            continue;
          }
          long long lo = 1, hi = bmax;
          while (lo < hi) {
            long long mid = lo + (hi - lo) / 2;
            if (precheck_passes(assemble(v, mid, sign, base_for(mid))))
              hi = mid;
            else
              lo = mid + 1;
          }
          chosen = hi;
        }
        if (auto hit = process(assemble(v, chosen, sign, base_for(chosen))))
          return hit;
      }
    }
    return select_candidate(pool);
  }
};

std::optional<Cycle> enumerate_lane(const SearchContext& ctx,
                                    SearchStats* stats,
                                    const std::vector<Cycle>* precomputed) {
  stats->enumeration_used = true;
  std::vector<Cycle> local;
  if (!precomputed) {
    local = enumerate_simple_cycles(*ctx.residual);
    precomputed = &local;
  }
  Pool pool;
  for (const Cycle& o : *precomputed) {
    CycleKind kind = classify_cycle(o, ctx);
    if (kind == CycleKind::kType0) return o;
    if (kind != CycleKind::kNonBicameral)
      pool_candidate(&pool, o, kind, stats);
  }
  return select_candidate(pool);
}

std::optional<Cycle> lp_lane(const SearchContext& ctx, SearchStats* stats,
                             const SearchOptions& options) {
  LpLane lane(ctx, stats);
  if (!lane.want_plus && !lane.want_minus) return std::nullopt;
  return options.binary_search_b ? lane.sweep_smallest_budget()
                                 : lane.sweep();
}

}  // namespace

AuxGraph build_aux(const ResidualGraph& residual, int anchor, long long budget,
                   AuxSign sign) {
  check_aux_size(residual.base->n, budget);
  AuxGraph aux;
  aux.sign = sign;
  aux.anchor = anchor;
  aux.budget = budget;
  aux.residual = &residual;
  aux.base_n = residual.base->n;
  aux.edges = level_copies(residual, {}, budget);
  append_wraps(&aux);
  return aux;
}

std::vector<Cycle> lift_cycle(const AuxGraph& aux,
                              const std::vector<int>& aux_edge_ids) {
  std::vector<Edge> pool;
  for (int idx : aux_edge_ids) {
    const AuxEdge& ae = aux.edges.at(idx);
    if (ae.residual_id >= 0)
      pool.push_back(aux.residual->edges.at(ae.residual_id));
  }
  std::vector<Cycle> cycles = split_closed_walk(std::move(pool));
  for (Cycle& o : cycles) canonicalize_cycle(&o);
  return cycles;
}

std::optional<std::vector<int>> embed_cycle(const AuxGraph& aux,
                                            const Cycle& cycle) {
  const auto& es = cycle.edges;
  int start = -1;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i].tail == aux.anchor) {
      start = static_cast<int>(i);
      break;
    }
  }
  if (start < 0) return std::nullopt;
  std::map<std::pair<int, int>, int> copy_at;  // (residual id, aux tail)
  for (int i = 0; i < static_cast<int>(aux.edges.size()); ++i) {
    const AuxEdge& ae = aux.edges[i];
    if (ae.residual_id >= 0) copy_at[{ae.residual_id, ae.tail}] = i;
  }
  const long long entry = aux.sign == AuxSign::kPlus ? 0 : aux.budget;
  long long level = entry;
  std::vector<int> out;
  for (std::size_t step = 0; step < es.size(); ++step) {
    const Edge& e = es[(start + step) % es.size()];
    if (e.cost > aux.budget || e.cost < -aux.budget) return std::nullopt;
    auto it = copy_at.find({e.id, aux.vertex(e.tail, level)});
    if (it == copy_at.end()) return std::nullopt;  // walk left [0, B]
    out.push_back(it->second);
    level += e.cost.convert_to<long long>();
  }
  if (level != entry) {
    const int from = aux.vertex(aux.anchor, level);
    const int to = aux.vertex(aux.anchor, entry);
    int wrap = -1;
    for (int i = 0; i < static_cast<int>(aux.edges.size()); ++i) {
      const AuxEdge& ae = aux.edges[i];
      if (ae.residual_id < 0 && ae.tail == from && ae.head == to) {
        wrap = i;
        break;
      }
    }
    if (wrap < 0) return std::nullopt;
    out.push_back(wrap);
  }
  return out;
}

LpProblem make_cycle_lp(const AuxGraph& aux, const Int& delta_d) {
  const int m = static_cast<int>(aux.edges.size());
  LpProblem p;
  p.num_vars = m;
  p.objective.assign(m, Rat(0));
  p.lower.assign(m, Rat(0));
  p.upper.assign(m, Rat(1));
  std::map<int, LpRow> balance;  // touched vertices, ascending
  for (int i = 0; i < m; ++i) {
    const AuxEdge& ae = aux.edges[i];
    if (ae.residual_id >= 0) {
      const Int& c = aux.residual->edges[ae.residual_id].cost;
      if (c != 0) p.objective[i] = Rat(c);
    }
    balance[ae.tail].terms.emplace_back(i, Rat(1));
    balance[ae.head].terms.emplace_back(i, Rat(-1));
  }
  for (auto& [v, row] : balance) {
    row.rhs = 0;
    p.equalities.push_back(std::move(row));
  }
  if (aux.sign == AuxSign::kPlus) {
    LpRow budget;
    for (int i = 0; i < m; ++i) {
      const AuxEdge& ae = aux.edges[i];
      if (ae.residual_id < 0) continue;
      const Int& d = aux.residual->edges[ae.residual_id].delay;
      if (d != 0) budget.terms.emplace_back(i, Rat(d));
    }
    budget.rhs = delta_d < -1 ? Rat(delta_d) : Rat(-1);
    p.inequalities.push_back(std::move(budget));
  }
  return p;
}

CycleKind classify_cycle(const Cycle& cycle, const SearchContext& ctx) {
  const Int& c = cycle.cost;
  const Int& d = cycle.delay;
  if ((d < 0 && c <= 0) || (d <= 0 && c < 0)) return CycleKind::kType0;
  if (ctx.delta_c <= 0 || c == 0) return CycleKind::kNonBicameral;
  const Rat target = Rat(ctx.delta_d) / Rat(ctx.delta_c);
  const Rat ratio = Rat(d) / Rat(c);
  if (d < 0 && c > 0 && c <= ctx.cost_estimate && ratio <= target)
    return CycleKind::kType1;
  if (d >= 0 && c < 0 && -c <= ctx.cost_estimate && ratio >= target)
    return CycleKind::kType2;
  return CycleKind::kNonBicameral;
}

std::optional<Cycle> find_bicameral(const SearchContext& ctx,
                                    CycleSource source, SearchStats* stats,
                                    const SearchOptions& options) {
  SearchStats scratch;
  if (!stats) stats = &scratch;
  *stats = SearchStats{};
  if (source == CycleSource::kEnumerate)
    return enumerate_lane(ctx, stats, nullptr);
  if (source == CycleSource::kLp) return lp_lane(ctx, stats, options);

  std::optional<std::vector<Cycle>> all;
  if (ctx.residual->base->n <= kMaxCycleVertices) {
    all = enumerate_simple_cycles(*ctx.residual);
    bool any = false;
    for (const Cycle& o : *all) {
      if (classify_cycle(o, ctx) != CycleKind::kNonBicameral) {
        any = true;
        break;
      }
    }
    if (!any) return std::nullopt;  // the sweep cannot find what isn't there
  }
  if (auto hit = lp_lane(ctx, stats, options)) return hit;
  if (all) return enumerate_lane(ctx, stats, &*all);
  return std::nullopt;
}

}  // namespace krsp
