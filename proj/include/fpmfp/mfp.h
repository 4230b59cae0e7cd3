// SPDX-License-Identifier: MIT
// Intraprocedural worklist solver shared by the plain and the lifted analyses.
//
// An analysis A provides: Value, top(), meet(a, b), leq(a, b), transfer(node, v),
// edge(e, v), widen(prev, next). Values are compared with ==. An analysis with
// widen_at(node, prev, next) gets the loop head passed along.
#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpmfp/ir.h"

namespace fpmfp {

class NonTermination : public std::runtime_error {
 public:
  explicit NonTermination(size_t limit)
      : std::runtime_error("fixpoint iteration exceeded " + std::to_string(limit) + " steps"),
        limit_(limit) {}
  size_t limit() const { return limit_; }

 private:
  size_t limit_;
};

// A loop head took a value it had already held. Monotone (or widened)
// iteration never does this; analyses that set kCheckCycles may not be monotone.
class Oscillation : public std::runtime_error {
 public:
  explicit Oscillation(int node)
      : std::runtime_error("iteration revisited a value at n" + std::to_string(node)) {}
};

// Program-wide storage; a procedure solve touches only its own nodes and edges.
template <class V>
struct FlowArrays {
  std::vector<V> in, out;  // per node
  std::vector<V> edge;     // per edge, value after g_e

  FlowArrays() = default;
  FlowArrays(const Program& prog, const V& top)
      : in(prog.nodes.size(), top), out(prog.nodes.size(), top), edge(prog.edges.size(), top) {}
};

struct SolveStats {
  size_t steps = 0;
  bool monotone = true;  // every node update descended
  size_t fallbacks = 0;  // fpmfp procedure solves re-run without opt1/opt2
};

struct SolveLimits {
  size_t step_limit = 0;  // 0: derived from the procedure size
  int widen_after = 4;    // changes at a loop head before widening
};

// Reverse post-order of the procedure's nodes from Start.
std::vector<int> reverse_post_order(const Program& prog, int proc);

template <class A>
void solve_mfp(const Program& prog, int proc, const A& a, const typename A::Value& bi,
               FlowArrays<typename A::Value>& arr, SolveStats& stats, const SolveLimits& lim,
               size_t height) {
  using V = typename A::Value;
  const Procedure& p = prog.procs[proc];
  const V top = a.top();
  for (int n : p.nodes) arr.in[n] = arr.out[n] = top;
  for (int e : p.edges) arr.edge[e] = top;

  std::vector<int> rpo = reverse_post_order(prog, proc);
  std::map<int, int> rank;
  for (size_t i = 0; i < rpo.size(); ++i) rank[rpo[i]] = static_cast<int>(i);
  std::map<int, bool> loop_head;
  for (int e : p.edges)
    if (prog.edges[e].back) loop_head[prog.edges[e].dst] = true;

  size_t limit = lim.step_limit;
  if (limit == 0) limit = (p.nodes.size() + p.edges.size() + 1) * (height + 2) * 8 + 10000;

  std::set<std::pair<int, int>> work;
  std::set<int> visited;
  std::map<int, int> changes;
  std::map<int, std::vector<V>> history;  // loop-head values, when kCheckCycles
  work.insert({rank[p.start], p.start});
  size_t steps = 0;
  while (!work.empty()) {
    int n = work.begin()->second;
    work.erase(work.begin());
    if (++steps > limit) throw NonTermination(limit);
    V in_new = top;
    if (n == p.start) {
      in_new = bi;
    } else {
      for (int e : prog.nodes[n].in) in_new = a.meet(in_new, arr.edge[e]);
    }
    bool seen = visited.count(n) > 0;
    if (seen && in_new == arr.in[n]) continue;
    if (seen && loop_head.count(n) && ++changes[n] >= lim.widen_after) {
      if constexpr (requires { a.widen_at(n, in_new, in_new); })
        in_new = a.widen_at(n, arr.in[n], in_new);
      else
        in_new = a.widen(arr.in[n], in_new);
      if (in_new == arr.in[n]) continue;
    }
    if (seen && !a.leq(in_new, arr.in[n])) stats.monotone = false;
    if constexpr (requires { A::kCheckCycles; }) {
      if (seen && loop_head.count(n)) {
        auto& h = history[n];
        for (const V& old : h)
          if (old == in_new) throw Oscillation(n);
        h.push_back(arr.in[n]);
      }
    }
    visited.insert(n);
    arr.in[n] = in_new;
    V out_new = a.transfer(n, in_new);
    if (out_new == arr.out[n]) continue;
    arr.out[n] = std::move(out_new);
    for (int e : prog.nodes[n].out) {
      V ev = a.edge(e, arr.out[n]);
      if (ev == arr.edge[e]) continue;
      arr.edge[e] = std::move(ev);
      int d = prog.edges[e].dst;
      work.insert({rank[d], d});
    }
  }
  stats.steps += steps;
}

}  // namespace fpmfp
