// SPDX-License-Identifier: MIT
// Reference semantics for testing: bounded path enumeration with path meets,
// and a concrete executor over a small input box.
#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpmfp/mips.h"

namespace fpmfp {

class Explosion : public std::runtime_error {
 public:
  explicit Explosion(size_t limit)
      : std::runtime_error("enumeration exceeded " + std::to_string(limit) + " items") {}
};

struct PathBounds {
  size_t max_len = 0;    // edges per path; 0 means 2 x |edges of the procedure|
  int back_budget = 2;   // traversals of any single back edge
  size_t max_paths = 1000000;
};

// Tracks which MIPS prefixes are suffixes of the current path.
class MipsMatcher {
 public:
  explicit MipsMatcher(const MipsUniverse& u) : u_(u) {}
  struct State {
    std::vector<std::pair<int, int>> active;  // (mips, index of last matched edge)
    bool contains = false;                    // some MIPS occurred completely
  };
  State step(const State& s, int edge) const;
  // cpo key of the path at its last edge: MIPS whose prefix ends the path.
  static MipsSet key(const State& s);

 private:
  const MipsUniverse& u_;
};

template <class V>
struct PathMeets {
  std::vector<V> all_in, free_in;  // per node: meet over all / MIPS-free paths
  std::vector<V> free_edge;        // per edge, value after the edge
  std::map<std::pair<int, MipsSet>, V> free_edge_key;
  size_t paths = 0;
  bool exhaustive = true;  // no path was cut by the bounds
};

// Meets over the bounded paths of one procedure from its Start with input bi.
template <class A>
PathMeets<typename A::Value> path_meets(const Program& prog, int proc, const A& a,
                                        const typename A::Value& bi, const MipsUniverse& u,
                                        PathBounds bounds = {}) {
  using V = typename A::Value;
  const Procedure& p = prog.procs[proc];
  PathMeets<V> r;
  r.all_in.assign(prog.nodes.size(), a.top());
  r.free_in.assign(prog.nodes.size(), a.top());
  r.free_edge.assign(prog.edges.size(), a.top());
  if (bi == a.top()) return r;
  size_t max_len = bounds.max_len ? bounds.max_len : 2 * p.edges.size();
  MipsMatcher matcher(u);
  std::map<int, int> back_used;

  struct Frame {
    int node;
    V in;
    MipsMatcher::State st;
    size_t len;
  };
  // Depth-first with explicit recursion on a lambda; paths are prefixes.
  auto visit = [&](auto&& self, const Frame& f) -> void {
    if (++r.paths > bounds.max_paths) throw Explosion(bounds.max_paths);
    r.all_in[f.node] = a.meet(r.all_in[f.node], f.in);
    if (!f.st.contains) r.free_in[f.node] = a.meet(r.free_in[f.node], f.in);
    V out = a.transfer(f.node, f.in);
    if (out == a.top()) return;
    for (int e : prog.nodes[f.node].out) {
      const Edge& ed = prog.edges[e];
      if (f.len + 1 > max_len) {
        r.exhaustive = false;
        continue;
      }
      if (ed.back && back_used[e] >= bounds.back_budget) {
        r.exhaustive = false;
        continue;
      }
      V ev = a.edge(e, out);
      if (ev == a.top()) continue;
      MipsMatcher::State st = matcher.step(f.st, e);
      if (!st.contains) {
        r.free_edge[e] = a.meet(r.free_edge[e], ev);
        auto key = std::make_pair(e, MipsMatcher::key(st));
        auto it = r.free_edge_key.find(key);
        if (it == r.free_edge_key.end())
          r.free_edge_key.emplace(key, ev);
        else
          it->second = a.meet(it->second, ev);
      }
      if (ed.back) ++back_used[e];
      self(self, Frame{ed.dst, ev, std::move(st), f.len + 1});
      if (ed.back) --back_used[e];
    }
  };
  visit(visit, Frame{p.start, bi, {}, 0});
  return r;
}

struct ExecBox {
  int lo = -3, hi = 3;  // params, globals and every read
  int loop_cap = 64;    // back-edge traversals per run
  int depth_cap = 64;   // call depth
  size_t max_runs = 1000000;
  size_t max_steps = 0;  // statements over all runs; 0 is unbounded
};

struct ExecResult {
  std::set<std::vector<int>> traces;  // edges of the procedure's own frame
  size_t runs = 0;
  size_t truncated = 0;  // runs stopped by assert, loop or depth cap
};

// Runs proc over every combination of inputs in the box. Throws Explosion.
ExecResult concrete_traces(const Program& prog, int proc, const ExecBox& box = {});

bool contains_segment(const std::vector<int>& trace, const std::vector<int>& seg);

}  // namespace fpmfp
