// SPDX-License-Identifier: MIT
// JSON and aligned-text serialization of detection results and solutions.
#pragma once

#include <string>
#include <vector>

#include "fpmfp/clients.h"
#include "fpmfp/mips.h"
#include "fpmfp/solve.h"
#include "json.hpp"

namespace fpmfp {

constexpr int kSchemaVersion = 1;

// Display name of a MIPS: a 1-based label such as "µ1".
std::string mips_label(int id);
nlohmann::json mips_json(const Program& prog, const MipsUniverse& u);
std::string mips_table(const Program& prog, const MipsUniverse& u);

// Per-edge DOT annotations such as "start(µ1), inner(µ2)".
std::map<int, std::string> mips_annotations(const Program& prog, const MipsUniverse& u);

nlohmann::json def_use_json(const Program& prog, const std::vector<DefUse>& pairs);
nlohmann::json alarms_json(const Program& prog, const std::vector<Alarm>& alarms);

// Writes text to path through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text);

// Renders rows as left-aligned columns separated by two spaces.
std::string format_table(const std::vector<std::vector<std::string>>& rows);

template <class A>
nlohmann::json solution_json(const Program& prog, const ProgramSolution<A>& sol,
                             bool with_pairs) {
  const A& a = sol.analysis;
  nlohmann::json procs = nlohmann::json::array();
  for (const auto& p : prog.procs) {
    if (p.is_extern) continue;
    nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
    for (int n : p.nodes)
      nodes.push_back({{"node", n},
                       {"stmt", describe(prog, prog.nodes[n])},
                       {"in", a.to_json(p.id, sol.flow.in[n])},
                       {"out", a.to_json(p.id, sol.flow.out[n])}});
    for (int e : p.edges) {
      nlohmann::json ej = {{"edge", e}, {"value", a.to_json(p.id, sol.flow.edge[e])}};
      if (with_pairs && sol.lifted) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [m, d] : sol.lifted->edge[e])
          pairs.push_back({{"mips", m}, {"value", a.to_json(p.id, d)}});
        ej["pairs"] = pairs;
      }
      edges.push_back(ej);
    }
    procs.push_back({{"proc", p.name},
                     {"boundary", a.to_json(p.id, sol.boundary[p.id])},
                     {"nodes", nodes},
                     {"edges", edges}});
  }
  nlohmann::json out = {{"schema", kSchemaVersion}, {"mode", to_string(sol.mode)}, {"procs", procs}};
  if (sol.mode == Mode::Fpmfp) {
    size_t mx = 0;
    for (size_t m : sol.pairs.max_pairs) mx = std::max(mx, m);
    out["pair_stats"] = {{"max_live_pairs", mx},
                         {"avg_live_pairs", sol.pairs.average()},
                         {"edge_evaluations", sol.pairs.evaluations}};
  }
  return out;
}

template <class A>
std::string solution_table(const Program& prog, const ProgramSolution<A>& sol) {
  std::vector<std::vector<std::string>> rows = {{"proc", "node", "stmt", "in"}};
  for (const auto& p : prog.procs) {
    if (p.is_extern) continue;
    for (int n : p.nodes)
      rows.push_back({p.name, "n" + std::to_string(n), describe(prog, prog.nodes[n]),
                      sol.analysis.to_json(p.id, sol.flow.in[n]).dump()});
  }
  return format_table(rows);
}

}  // namespace fpmfp
