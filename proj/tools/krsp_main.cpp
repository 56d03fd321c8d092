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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bench_suite.hpp"
#include "json.hpp"
#include "krsp/graph.hpp"
#include "krsp/oracle.hpp"
#include "krsp/solver.hpp"

namespace krsp {
namespace {

using nlohmann::json;

Int parse_int(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw std::invalid_argument("bad integer: " + text);
  Int v = 0;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("bad integer: " + text);
    v = v * 10 + (text[i] - '0');
  }
  return neg ? Int(-v) : v;
}

// Accepts "3/4", "0.75", and plain integers.
Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(parse_int(text.substr(0, slash)), den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(parse_int(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  Int den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  return Rat(parse_int(digits), den);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  return out;
}

json json_int(const Int& v) {
  static const Int lo(std::numeric_limits<std::int64_t>::min());
  static const Int hi(std::numeric_limits<std::int64_t>::max());
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return v.str();
}

const char* kind_name(CycleKind kind) {
  switch (kind) {
    case CycleKind::kType0:
      return "type0";
    case CycleKind::kType1:
      return "type1";
    case CycleKind::kType2:
      return "type2";
    default:
      return "none";
  }
}

json trace_json(const std::vector<IterationRecord>& trace) {
  json out = json::array();
  for (const IterationRecord& rec : trace) {
    json edges = json::array();
    for (const Edge& e : rec.cycle.edges)
      edges.push_back({{"edge", e.id}, {"reversed", e.reversed()}});
    json row{{"index", rec.index},
             {"totalDelay", json_int(rec.total_delay)},
             {"totalCost", json_int(rec.total_cost)},
             {"slackDelay", json_int(rec.slack_delay)},
             {"slackCost", json_int(rec.slack_cost)},
             {"kind", kind_name(rec.kind)},
             {"cycleCost", json_int(rec.cycle.cost)},
             {"cycleDelay", json_int(rec.cycle.delay)},
             {"cycleEdges", std::move(edges)},
             {"droppedCost", json_int(rec.dropped_cost)},
             {"droppedDelay", json_int(rec.dropped_delay)}};
    row["ratio"] = rec.ratio ? json(rec.ratio->str()) : json(nullptr);
    out.push_back(std::move(row));
  }
  return out;
}

struct Cli {
  std::string input;
  std::string gen;
  std::string bench;
  std::string delay_bound;
  std::string mode = "exact";
  std::string phase1 = "mincost";
  std::string cycles = "hybrid";
  std::string eps1, eps2, eps;
  std::optional<long long> bmax;
  bool binary_search_b = false;
  bool trace = false;
  bool as_json = false;
};

SolverOptions solver_options(const Cli& cli) {
  SolverOptions opts;
  if (cli.mode == "scaled")
    opts.mode = SolveMode::kScaled;
  else if (cli.mode != "exact")
    throw std::invalid_argument("unknown mode: " + cli.mode);
  if (cli.phase1 == "lp-round")
    opts.phase1_mode = Phase1Mode::kLpRound;
  else if (cli.phase1 != "mincost")
    throw std::invalid_argument("unknown phase1: " + cli.phase1);
  if (cli.cycles == "lp")
    opts.cycle_source = CycleSource::kLp;
  else if (cli.cycles == "enumerate")
    opts.cycle_source = CycleSource::kEnumerate;
  else if (cli.cycles != "hybrid")
    throw std::invalid_argument("unknown cycles: " + cli.cycles);
  if (!cli.eps.empty()) opts.epsilon1 = opts.epsilon2 = parse_rat(cli.eps);
  if (!cli.eps1.empty()) opts.epsilon1 = parse_rat(cli.eps1);
  if (!cli.eps2.empty()) opts.epsilon2 = parse_rat(cli.eps2);
  if (cli.bmax) opts.b_max_override = *cli.bmax;
  opts.binary_search_b = cli.binary_search_b;
  opts.trace_enabled = cli.trace;
  return opts;
}

Instance load_instance(const Cli& cli) {
  Instance inst;
  if (!cli.input.empty()) {
    std::ifstream in(cli.input);
    if (!in) throw std::runtime_error("cannot open " + cli.input);
    std::stringstream buf;
    buf << in.rdbuf();
    inst = parse_instance(buf.str());
  } else {
    std::vector<std::string> parts = split_commas(cli.gen);
    if (parts.size() != 6)
      throw std::invalid_argument("--gen wants n,m,maxc,maxd,k,seed");
    inst = gen_random_instance(
        std::stoi(parts[0]), std::stoi(parts[1]), parse_int(parts[2]),
        parse_int(parts[3]), std::stoi(parts[4]),
        static_cast<std::uint64_t>(std::stoull(parts[5])));
    if (cli.delay_bound.empty())
      throw std::invalid_argument("--gen needs --delay-bound");
  }
  if (!cli.delay_bound.empty()) inst.delay_bound = parse_int(cli.delay_bound);
  return inst;
}

int run_solve(const Cli& cli) {
  Instance inst = load_instance(cli);
  SolverOptions opts = solver_options(cli);
  auto t0 = std::chrono::steady_clock::now();
  Solution sol = solve(inst, opts);
  std::chrono::duration<double, std::milli> wall =
      std::chrono::steady_clock::now() - t0;

  json out{{"status",
            sol.status == SolveStatus::kSolved ? "solved" : "infeasible"},
           {"totalCost", json_int(sol.paths.total_cost)},
           {"totalDelay", json_int(sol.paths.total_delay)},
           {"costEstimateUsed", json_int(sol.cost_estimate_used)},
           {"scaledFallback", sol.scaled_fallback},
           {"wallTimeMs", wall.count()}};
  json paths = json::array();
  for (const auto& path : sol.paths.paths) paths.push_back(path);
  out["paths"] = std::move(paths);
  if (cli.trace) out["iterations"] = trace_json(sol.trace);
  std::cout << out.dump(2) << "\n";
  return sol.status == SolveStatus::kSolved ? 0 : 2;
}

struct BenchRow {
  std::string name;
  bool solved = false;
  Int cost_opt;
  Int cost_solver;
  Int delay_slack;
  double ratio = 1.0;
  int iterations = 0;
  double wall_ms = 0.0;
};

std::vector<std::pair<std::string, Instance>> bench_inputs(
    const std::string& spec) {
  std::vector<std::pair<std::string, Instance>> inputs;
  if (std::filesystem::is_directory(spec)) {
    for (const auto& entry : std::filesystem::directory_iterator(spec)) {
      if (entry.path().extension() != ".krsp") continue;
      std::ifstream in(entry.path());
      std::stringstream buf;
      buf << in.rdbuf();
      inputs.emplace_back(entry.path().stem().string(),
                          parse_instance(buf.str()));
    }
  } else {
    std::vector<std::string> parts = split_commas(spec);
    if (parts.size() != 2)
      throw std::invalid_argument("--bench wants a directory or count,seed");
    int count = std::stoi(parts[0]);
    std::uint64_t seed = std::stoull(parts[1]);
    for (int i = 0; i < count; ++i)
      inputs.emplace_back("gen-" + std::to_string(seed + i),
                          bench_suite_instance(seed, i));
  }
  std::sort(inputs.begin(), inputs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return inputs;
}

int run_bench(const Cli& cli) {
  SolverOptions opts = solver_options(cli);
  std::vector<BenchRow> rows;
  int skipped = 0;
  for (auto& [name, inst] : bench_inputs(cli.bench)) {
    if (inst.n > 10 || static_cast<int>(inst.edges.size()) > 16) {
      std::cerr << "warning: " << name << " exceeds the oracle cap, skipped\n";
      ++skipped;
      continue;
    }
    BruteResult oracle = brute_krsp(inst);
    auto t0 = std::chrono::steady_clock::now();
    Solution sol = solve(inst, opts);
    std::chrono::duration<double, std::milli> wall =
        std::chrono::steady_clock::now() - t0;
    if ((sol.status == SolveStatus::kSolved) != oracle.feasible)
      throw std::logic_error("solver and oracle disagree on " + name);
    BenchRow row;
    row.name = name;
    row.solved = oracle.feasible;
    row.iterations = static_cast<int>(sol.trace.size());
    row.wall_ms = wall.count();
    if (row.solved) {
      row.cost_opt = oracle.best_cost;
      row.cost_solver = sol.paths.total_cost;
      row.delay_slack = inst.delay_bound - sol.paths.total_delay;
      row.ratio = oracle.best_cost == 0
                      ? 1.0
                      : Rat(Rat(sol.paths.total_cost) / Rat(oracle.best_cost))
                            .convert_to<double>();
    }
    rows.push_back(std::move(row));
  }

  double max_ratio = 0.0, sum_ratio = 0.0;
  int solved = 0;
  for (const BenchRow& row : rows) {
    if (!row.solved) continue;
    ++solved;
    sum_ratio += row.ratio;
    max_ratio = std::max(max_ratio, row.ratio);
  }
  double mean_ratio = solved ? sum_ratio / solved : 0.0;

  if (cli.as_json) {
    json instances = json::array();
    for (const BenchRow& row : rows) {
      json r{{"name", row.name},
             {"status", row.solved ? "solved" : "infeasible"},
             {"iterations", row.iterations}};
      if (row.solved) {
        r["costOpt"] = json_int(row.cost_opt);
        r["costSolver"] = json_int(row.cost_solver);
        r["costRatio"] = row.ratio;
        r["delaySlack"] = json_int(row.delay_slack);
      } else {
        r["costOpt"] = nullptr;
        r["costSolver"] = nullptr;
        r["costRatio"] = nullptr;
        r["delaySlack"] = nullptr;
      }
      instances.push_back(std::move(r));
    }
    json out{{"aggregate",
              {{"solved", solved},
               {"infeasible", static_cast<int>(rows.size()) - solved},
               {"skipped", skipped},
               {"maxCostRatio", max_ratio},
               {"meanCostRatio", mean_ratio}}},
             {"instances", std::move(instances)}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::printf("%-12s %-10s %6s %6s %7s %6s %5s %9s\n", "instance", "status",
              "copt", "cost", "ratio", "slack", "iter", "ms");
  for (const BenchRow& row : rows) {
    if (row.solved)
      std::printf("%-12s %-10s %6s %6s %7.3f %6s %5d %9.2f\n",
                  row.name.c_str(), "solved", row.cost_opt.str().c_str(),
                  row.cost_solver.str().c_str(), row.ratio,
                  row.delay_slack.str().c_str(), row.iterations, row.wall_ms);
    else
      std::printf("%-12s %-10s %6s %6s %7s %6s %5d %9.2f\n", row.name.c_str(),
                  "infeasible", "-", "-", "-", "-", row.iterations,
                  row.wall_ms);
  }
  std::printf("solved %d, infeasible %d, skipped %d\n", solved,
              static_cast<int>(rows.size()) - solved, skipped);
  std::printf("max cost ratio %.4f, mean %.4f\n", max_ratio, mean_ratio);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"k edge-disjoint restricted shortest paths"};
  Cli cli;
  auto* input = app.add_option("--input", cli.input, "instance file");
  auto* gen =
      app.add_option("--gen", cli.gen, "generate instance: n,m,maxc,maxd,k,seed");
  auto* bench = app.add_option(
      "--bench", cli.bench, "benchmark a directory of .krsp files or count,seed");
  app.add_option("--delay-bound", cli.delay_bound, "total delay bound D");
  app.add_option("--mode", cli.mode, "exact|scaled");
  app.add_option("--eps1", cli.eps1, "delay relaxation (scaled mode)");
  app.add_option("--eps2", cli.eps2, "cost relaxation (scaled mode)");
  app.add_option("--eps", cli.eps, "sets both eps1 and eps2");
  app.add_option("--phase1", cli.phase1, "mincost|lp-round");
  app.add_option("--cycles", cli.cycles, "lp|enumerate|hybrid");
  app.add_option("--bmax", cli.bmax, "aux level budget cap");
  app.add_flag("--binary-search-b", cli.binary_search_b,
               "probe one budget per vertex and sign");
  app.add_flag("--trace", cli.trace, "emit per-iteration records");
  app.add_flag("--json", cli.as_json, "benchmark output as JSON");
  input->excludes(gen)->excludes(bench);
  gen->excludes(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (!cli.bench.empty()) return run_bench(cli);
  if (cli.input.empty() && cli.gen.empty())
    throw std::invalid_argument("need --input, --gen, or --bench");
  return run_solve(cli);
}

}  // namespace
}  // namespace krsp

int main(int argc, char** argv) {
  try {
    return krsp::run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
