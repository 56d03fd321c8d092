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

#include "krsp/graph.hpp"

#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace krsp {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool parse_int_token(const std::string& tok, Int* out) {
  if (tok.empty()) return false;
  std::size_t i = (tok[0] == '-') ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') return false;
  }
  // Strip leading zeros: the mpz string constructor reads "025" as octal.
  std::size_t nz = tok.find_first_not_of('0', tok[0] == '-' ? 1 : 0);
  if (nz == std::string::npos) {
    *out = 0;
    return true;
  }
  *out = Int(tok.substr(nz));
  if (tok[0] == '-') *out = -*out;
  return true;
}

bool parse_small_int(const std::string& tok, int* out) {
  Int v;
  if (!parse_int_token(tok, &v)) return false;
  if (v < -1000000000 || v > 1000000000) return false;
  *out = static_cast<int>(v);
  return true;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, std::string>> lines;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (split_ws(line).empty()) continue;
    lines.emplace_back(line_no, line);
  }
  if (lines.empty()) throw ParseError("empty instance file");

  Instance inst;
  {
    const auto& [no, hdr] = lines.front();
    auto toks = split_ws(hdr);
    if (toks.size() != 4 && toks.size() != 6)
      fail(no, "header must be \"n m k D\" or \"n m k D s t\"");
    int m = 0;
    if (!parse_small_int(toks[0], &inst.n) || inst.n < 2)
      fail(no, "bad vertex count");
    if (!parse_small_int(toks[1], &m) || m < 0) fail(no, "bad edge count");
    if (!parse_small_int(toks[2], &inst.k) || inst.k < 1)
      fail(no, "bad path count k");
    if (!parse_int_token(toks[3], &inst.delay_bound) || inst.delay_bound < 0)
      fail(no, "bad delay bound");
    inst.s = 0;
    inst.t = inst.n - 1;
    if (toks.size() == 6) {
      if (!parse_small_int(toks[4], &inst.s) ||
          !parse_small_int(toks[5], &inst.t))
        fail(no, "bad s/t");
    }
    if (inst.s < 0 || inst.s >= inst.n || inst.t < 0 || inst.t >= inst.n)
      fail(no, "s/t out of range");
    if (inst.s == inst.t) fail(no, "s equals t");
    if (static_cast<int>(lines.size()) - 1 != m)
      throw ParseError("expected " + std::to_string(m) + " edge lines, got " +
                       std::to_string(lines.size() - 1));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, body] = lines[i];
    auto toks = split_ws(body);
    if (toks.size() != 4) fail(no, "edge line must be \"tail head cost delay\"");
    Edge e;
    e.id = static_cast<int>(i) - 1;
    if (!parse_small_int(toks[0], &e.tail) || e.tail < 0 || e.tail >= inst.n)
      fail(no, "bad tail vertex");
    if (!parse_small_int(toks[1], &e.head) || e.head < 0 || e.head >= inst.n)
      fail(no, "bad head vertex");
    if (e.tail == e.head) fail(no, "self-loop rejected");
    if (!parse_int_token(toks[2], &e.cost) || e.cost < 0)
      fail(no, "negative cost");
    if (!parse_int_token(toks[3], &e.delay) || e.delay < 0)
      fail(no, "negative delay");
    inst.edges.push_back(std::move(e));
  }
  return inst;
}

std::string render_instance(const Instance& inst) {
  std::ostringstream out;
  out << inst.n << ' ' << inst.edges.size() << ' ' << inst.k << ' '
      << inst.delay_bound << ' ' << inst.s << ' ' << inst.t << '\n';
  for (const Edge& e : inst.edges) {
    out << e.tail << ' ' << e.head << ' ' << e.cost << ' ' << e.delay << '\n';
  }
  return out.str();
}

Instance gen_random_instance(int n, int m, const Int& max_cost,
                             const Int& max_delay, int k, std::uint64_t seed) {
  // mt19937_64's output sequence is fixed by the standard, so instances
  // generated here are portable fixtures. Raw modulo keeps it that way
  // (uniform_int_distribution is implementation-defined).
  std::mt19937_64 rng(seed);
  const auto maxc = max_cost.convert_to<std::uint64_t>();
  const auto maxd = max_delay.convert_to<std::uint64_t>();
  Instance inst;
  inst.n = n;
  inst.s = 0;
  inst.t = n - 1;
  inst.k = k;
  inst.delay_bound = 0;
  for (int i = 0; i < m; ++i) {
    Edge e;
    e.id = i;
    e.tail = static_cast<int>(rng() % n);
    e.head = static_cast<int>(rng() % (n - 1));
    if (e.head >= e.tail) ++e.head;
    e.cost = Int(rng() % (maxc + 1));
    e.delay = Int(rng() % (maxd + 1));
    inst.edges.push_back(std::move(e));
  }
  return inst;
}

Instance gen_routable_instance(int n, int m, const Int& max_cost,
                               const Int& max_delay, int k,
                               std::uint64_t seed) {
  if (n < 2 || m < n - 2 + k)
    throw std::invalid_argument("backbone does not fit the edge budget");
  std::mt19937_64 rng(seed);
  const auto maxc = max_cost.convert_to<std::uint64_t>();
  const auto maxd = max_delay.convert_to<std::uint64_t>();
  Instance inst;
  inst.n = n;
  inst.s = 0;
  inst.t = n - 1;
  inst.k = k;
  inst.delay_bound = 0;
  auto add = [&](int tail, int head) {
    Edge e;
    e.id = static_cast<int>(inst.edges.size());
    e.tail = tail;
    e.head = head;
    e.cost = Int(rng() % (maxc + 1));
    e.delay = Int(rng() % (maxd + 1));
    inst.edges.push_back(std::move(e));
  };
  std::vector<std::vector<int>> chains(k);
  for (int v = 1; v <= n - 2; ++v) chains[(v - 1) % k].push_back(v);
  for (const auto& chain : chains) {
    int at = 0;
    for (int v : chain) {
      add(at, v);
      at = v;
    }
    add(at, n - 1);
  }
  while (static_cast<int>(inst.edges.size()) < m) {
    int tail = static_cast<int>(rng() % n);
    int head = static_cast<int>(rng() % (n - 1));
    if (head >= tail) ++head;
    add(tail, head);
  }
  return inst;
}

PathSet make_path_set(const Instance& inst,
                      std::vector<std::vector<int>> paths) {
  PathSet sol;
  sol.paths = std::move(paths);
  sol.total_cost = 0;
  sol.total_delay = 0;
  for (const auto& p : sol.paths) {
    for (int id : p) {
      sol.total_cost += inst.edges.at(id).cost;
      sol.total_delay += inst.edges.at(id).delay;
    }
  }
  return sol;
}

bool validate_path_set(const Instance& inst, const PathSet& sol,
                       std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(sol.paths.size()) != inst.k)
    return reject("path count differs from k");
  std::set<int> used;
  Int cost = 0, delay = 0;
  for (const auto& p : sol.paths) {
    if (p.empty()) return reject("empty path");
    int at = inst.s;
    std::set<int> visited{at};
    for (int id : p) {
      if (id < 0 || id >= static_cast<int>(inst.edges.size()))
        return reject("unknown edge id");
      if (!used.insert(id).second) return reject("edge reused");
      const Edge& e = inst.edges[id];
      if (e.tail != at) return reject("broken chain");
      if (!visited.insert(e.head).second) return reject("vertex revisited");
      at = e.head;
      cost += e.cost;
      delay += e.delay;
    }
    if (at != inst.t) return reject("path does not end at t");
  }
  if (cost != sol.total_cost || delay != sol.total_delay)
    return reject("totals do not match edge sums");
  return true;
}

}  // namespace krsp
