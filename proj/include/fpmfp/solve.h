// SPDX-License-Identifier: MIT
// Interprocedural driver. Phase 1 installs call summaries bottom-up over the
// call graph; phase 2 propagates boundary values top-down, re-solving a
// procedure whenever the meet over its call sites changes.
#pragma once

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "fpmfp/analyses.h"
#include "fpmfp/callgraph.h"
#include "fpmfp/lifted.h"
#include "fpmfp/mfp.h"
#include "fpmfp/mips.h"

namespace fpmfp {

enum class Mode { Mfp, Fpmfp };
inline const char* to_string(Mode m) { return m == Mode::Mfp ? "mfp" : "fpmfp"; }

template <class A>
struct ProgramSolution {
  using V = typename A::Value;
  Mode mode = Mode::Mfp;
  A analysis;             // with the call summaries used by this solution
  FlowArrays<V> flow;     // folded values in fpmfp mode
  std::optional<FlowArrays<LiftedValue<V>>> lifted;
  std::vector<V> boundary;  // per procedure; top when never entered
  PairStats pairs;
  SolveStats stats;

  explicit ProgramSolution(const A& a) : analysis(a) {}
};

inline size_t analysis_height(const BitVectorAnalysis& a) { return a.size() + 2; }
inline size_t analysis_height(const IntervalAnalysis& a) {
  return a.program().vars.size() * 12 + 2;
}

namespace detail {

// Solves one procedure in the requested mode, returning values in `out`
// (folded in fpmfp mode) and the lifted values in `lifted` when given.
template <class A>
void solve_proc(const Program& prog, int proc, const A& a, const typename A::Value& bi, Mode mode,
                const MipsUniverse& u, const OptConfig& opts, FlowArrays<typename A::Value>& out,
                FlowArrays<LiftedValue<typename A::Value>>* lifted, PairStats* pairs,
                SolveStats& stats, const SolveLimits& lim,
                const std::vector<typename A::Value>* limits = nullptr) {
  using V = typename A::Value;
  size_t h = analysis_height(a);
  if (mode == Mode::Mfp) {
    solve_mfp(prog, proc, a, bi, out, stats, lim, h);
    return;
  }
  Lifted<A> la(a, u, opts, pairs);
  la.set_limits(limits);
  FlowArrays<LiftedValue<V>> local;
  FlowArrays<LiftedValue<V>>& arr = lifted ? *lifted : local;
  if (!lifted) arr = FlowArrays<LiftedValue<V>>(prog, {});
  size_t scale = u.of_proc(proc).size() + 1;
  try {
    solve_mfp(prog, proc, la, la.lift(bi), arr, stats, lim, h * scale);
  } catch (const Oscillation&) {
    // Without the merging normalizations the lifted functions are monotone.
    ++stats.fallbacks;
    Lifted<A> plain(a, u, {false, false, opts.opt3}, pairs);
    plain.set_limits(limits);
    solve_mfp(prog, proc, plain, plain.lift(bi), arr, stats, lim, h * scale);
  }
  const Procedure& p = prog.procs[proc];
  for (int n : p.nodes) {
    out.in[n] = la.fold(arr.in[n]);
    out.out[n] = la.fold(arr.out[n]);
  }
  for (int e : p.edges) out.edge[e] = la.fold(arr.edge[e]);
}

template <class A>
typename A::Value exit_value(const Program& prog, int proc, const A& a,
                             const typename A::Value& bi, Mode mode, const MipsUniverse& u,
                             const OptConfig& opts, SolveStats& stats, const SolveLimits& lim,
                             const std::vector<typename A::Value>* limits = nullptr) {
  FlowArrays<typename A::Value> arr(prog, a.top());
  solve_proc(prog, proc, a, bi, mode, u, opts, arr, nullptr, nullptr, stats, lim, limits);
  return arr.in[prog.procs[proc].exit];
}

inline void install_summaries(const Program& prog, const CallGraph& cg, BitVectorAnalysis& a,
                              Mode mode, const MipsUniverse& u, const OptConfig& opts,
                              SolveStats& stats, const SolveLimits& lim) {
  BitVectorAnalysis kp = a.kill_problem();
  BitVectorAnalysis gp = a.gen_problem();
  const Bits mask = a.summary_mask();
  auto publish = [&](int p, const CallEffect& e) {
    a.set_effect(p, e);
    kp.set_effect(p, {e.unreachable, Bits(a.size()), e.kill});
    gp.set_effect(p, e);
  };
  for (const auto& scc : cg.sccs) {
    bool rec = cg.recursive[scc.front()];
    for (int p : scc)
      if (rec && !prog.procs[p].is_extern)
        publish(p, {true, Bits(a.size()), Bits(a.size())});
    // Recursive components descend from "never returns" to a fixpoint.
    for (size_t round = 0; round < 4 * a.size() + 8; ++round) {
      bool changed = false;
      for (int p : scc) {
        if (prog.procs[p].is_extern) continue;
        BitValue k = exit_value(prog, p, kp, kp.make(kp.empty_bits()), mode, u, opts, stats, lim);
        BitValue g = exit_value(prog, p, gp, gp.make(gp.empty_bits()), mode, u, opts, stats, lim);
        CallEffect e;
        e.unreachable = k.top || g.top;
        e.kill = e.unreachable ? Bits(a.size()) : (k.bits & mask);
        e.gen = e.unreachable ? Bits(a.size()) : (g.bits & mask);
        const CallEffect& old = a.effect(p);
        bool differs = old.unreachable != e.unreachable || old.kill != e.kill || old.gen != e.gen;
        if (differs || !rec) publish(p, e);
        changed = changed || differs;
      }
      if (!rec || !changed) break;
    }
  }
}

// In fpmfp mode each summary solve is widened within the MFP summary solve of
// the same procedure, so FPMFP exits stay below MFP exits.
inline void install_summaries(const Program& prog, const CallGraph& cg, IntervalAnalysis& a,
                              Mode mode, const MipsUniverse& u, const OptConfig& opts,
                              SolveStats& stats, const SolveLimits& lim) {
  IntervalAnalysis ref = a;
  for (const auto& scc : cg.sccs) {
    for (int p : scc) {
      if (prog.procs[p].is_extern) continue;
      if (cg.recursive[p]) {
        a.set_havoc(p);
        ref.set_havoc(p);
        continue;
      }
      if (mode == Mode::Mfp) {
        a.set_exit(p, exit_value(prog, p, a, a.unknown(), mode, u, opts, stats, lim));
        continue;
      }
      FlowArrays<IntervalEnv> r(prog, ref.top());
      SolveStats ignored;
      solve_proc(prog, p, ref, ref.unknown(), Mode::Mfp, u, opts, r, nullptr, nullptr, ignored, lim);
      ref.set_exit(p, r.in[prog.procs[p].exit]);
      a.set_exit(p, exit_value(prog, p, a, a.unknown(), mode, u, opts, stats, lim, &r.in));
    }
  }
}

}  // namespace detail

template <class A>
ProgramSolution<A> solve_program(const Program& prog, const CallGraph& cg, const A& analysis,
                                 Mode mode, const MipsUniverse& u, OptConfig opts = {},
                                 SolveLimits lim = {}) {
  using V = typename A::Value;
  ProgramSolution<A> sol(analysis);
  sol.mode = mode;
  // Widening is not monotone, so an FPMFP run that widens on its own can end
  // above MFP. Widening within the MFP solution keeps MFP below FPMFP.
  std::optional<ProgramSolution<A>> ref;
  if (mode == Mode::Fpmfp && A::kWidens)
    ref.emplace(solve_program(prog, cg, analysis, Mode::Mfp, u, opts, lim));
  const std::vector<V>* limits = ref ? &ref->flow.in : nullptr;
  A& a = sol.analysis;
  detail::install_summaries(prog, cg, a, mode, u, opts, sol.stats, lim);

  sol.flow = FlowArrays<V>(prog, a.top());
  if (mode == Mode::Fpmfp) sol.lifted.emplace(prog, LiftedValue<V>{});
  sol.boundary.assign(prog.procs.size(), a.top());

  std::vector<std::vector<int>> call_sites(prog.procs.size());
  for (const auto& n : prog.nodes)
    if (n.stmt.kind == Statement::Kind::Call && !prog.procs[n.stmt.callee].is_extern)
      call_sites[n.stmt.callee].push_back(n.id);

  auto base_bi = [&](int p) {
    if (p == prog.entry || call_sites[p].empty()) return a.boundary(p);
    return a.top();
  };
  std::map<int, V> contribution;  // call node -> callee entry value
  std::vector<int> bi_changes(prog.procs.size(), 0);
  std::deque<int> queue;
  std::vector<bool> queued(prog.procs.size(), false);
  for (int p : cg.top_down()) {
    if (prog.procs[p].is_extern) continue;
    sol.boundary[p] = base_bi(p);
    queue.push_back(p);
    queued[p] = true;
  }
  size_t rounds = 0;
  const size_t round_limit = 64 * (prog.procs.size() + 1) * (analysis_height(a) + 1);
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    queued[p] = false;
    if (++rounds > round_limit) throw NonTermination(round_limit);
    detail::solve_proc(prog, p, a, sol.boundary[p], mode, u, opts, sol.flow,
                       sol.lifted ? &*sol.lifted : nullptr, &sol.pairs, sol.stats, lim, limits);
    std::vector<int> touched;
    for (int n : prog.procs[p].nodes) {
      const Statement& s = prog.nodes[n].stmt;
      if (s.kind != Statement::Kind::Call || prog.procs[s.callee].is_extern) continue;
      contribution[n] = a.call_entry(s.callee, sol.flow.in[n]);
      touched.push_back(s.callee);
    }
    for (int q : touched) {
      V nb = base_bi(q);
      for (int site : call_sites[q]) {
        auto it = contribution.find(site);
        if (it != contribution.end()) nb = a.meet(nb, it->second);
      }
      if (nb == sol.boundary[q]) continue;
      if (++bi_changes[q] >= lim.widen_after)
        nb = a.widen(sol.boundary[q], nb, ref ? &ref->boundary[q] : nullptr);
      sol.boundary[q] = nb;
      if (!queued[q]) {
        queue.push_back(q);
        queued[q] = true;
      }
    }
  }
  return sol;
}

}  // namespace fpmfp
