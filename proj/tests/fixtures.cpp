// SPDX-License-Identifier: MIT
#include "fixtures.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fixtures {

using namespace fpmfp;

std::string path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".mir"; }

std::string read_text(const std::string& file) {
  std::ifstream f(file, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + file);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::string> all_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(FIXTURE_DIR))
    if (e.path().extension() == ".mir") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

Loaded load_source(const std::string& source) {
  Loaded l;
  l.prog = parse_program(source);
  l.cg = build_call_graph(l.prog);
  l.u = detect_mips(l.prog, l.cg);
  return l;
}

Loaded load(const std::string& name) { return load_source(read_text(path(name))); }

namespace {

// Figure label k -> our edge id. Our CFGs add a Start node and split
// multi-statement boxes, so only fig2 lines up one to one.
const std::map<std::string, std::map<int, int>>& edge_maps() {
  static const std::map<std::string, std::map<int, int>> maps = {
      {"fig2", {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}}},
      {"fig3", {{0, 1}, {1, 3}, {2, 2}, {3, 4}, {4, 5}, {5, 6}}},
      {"fig4", {{1, 3}, {2, 4}, {3, 6}, {4, 7}, {5, 8}, {6, 11}, {7, 10}, {8, 9}, {9, 12}}},
      {"fig7",
       {{0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 6}, {5, 7}, {6, 8}, {7, 9}, {8, 10}, {9, 11}}},
      {"balanced",
       {{0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 6}, {5, 7}, {6, 8}, {7, 9}, {8, 10}, {9, 11}}},
      {"fig8", {{1, 4}, {2, 5}, {3, 7}, {4, 6}, {5, 9}, {6, 11}, {7, 12}, {8, 13}, {9, 14}}},
      {"fig10",
       {{0, 4}, {1, 5}, {2, 6}, {3, 7}, {4, 9}, {5, 10}, {6, 11}, {7, 13}, {8, 12}, {9, 14},
        {10, 15}}},
      {"fig11", {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 8}, {7, 7}}},
      {"fig12",
       {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11}}},
  };
  return maps;
}

}  // namespace

int fig_edge(const std::string& fixture, int k) {
  const auto& m = edge_maps().at(fixture);
  auto it = m.find(k);
  if (it == m.end()) throw std::out_of_range(fixture + ": no edge e" + std::to_string(k));
  return it->second;
}

int mips_with_edges(const MipsUniverse& u, const std::vector<int>& edges) {
  for (const auto& m : u.all())
    if (m.edges == edges) return m.id;
  return -1;
}

int fig_mips(const std::string& fixture, const Loaded& l, const std::vector<int>& labels) {
  std::vector<int> edges;
  for (int k : labels) edges.push_back(fig_edge(fixture, k));
  return mips_with_edges(l.u, edges);
}

int var(const Program& prog, const std::string& proc, const std::string& name) {
  int p = prog.find_proc(proc);
  if (p < 0) throw std::out_of_range("no proc " + proc);
  int v = prog.find_var(p, name);
  if (v < 0) throw std::out_of_range("no var " + name);
  return v;
}

int node_of(const Program& prog, const std::string& proc, const std::string& stmt) {
  int p = prog.find_proc(proc);
  for (int n : prog.procs.at(p).nodes)
    if (describe(prog, prog.nodes[n]) == stmt) return n;
  throw std::out_of_range("no node '" + stmt + "' in " + proc);
}

Interval iv(long lo, long hi) { return {Bound(lo), Bound(hi)}; }
Interval iv_lo(long lo) { return {Bound(lo), Bound::pos_inf()}; }
Interval iv_hi(long hi) { return {Bound::neg_inf(), Bound(hi)}; }

Interval at(const IntervalEnv& env, int v) {
  if (env.top) return Interval::empty();
  return env.v.at(v);
}

std::vector<std::string> facts(const BitVectorAnalysis& a, const BitValue& v) {
  std::vector<std::string> out;
  if (v.top) return {"<top>"};
  for (size_t i = 0; i < v.bits.size(); ++i)
    if (v.bits[i]) out.push_back(a.fact_name(i));
  return out;
}

}  // namespace fixtures
