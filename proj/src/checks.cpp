// SPDX-License-Identifier: MIT
#include "fpmfp/checks.h"

#include <map>

#include "fpmfp/analyses.h"
#include "fpmfp/callgraph.h"
#include "fpmfp/solve.h"

namespace fpmfp {

bool is_acyclic(const Program& prog) {
  for (const auto& e : prog.edges)
    if (e.back) return false;
  return true;
}

namespace {

struct Context {
  const Program& prog;
  const CallGraph& cg;
  const MipsUniverse& u;
  const CheckOptions& opts;
  std::map<int, ExecResult> traces;  // per procedure, when available
  CheckReport& r;

  void fail(const std::string& prop, const std::string& analysis, const std::string& where,
            const std::string& detail = "") {
    r.violations.push_back({prop, analysis, where, detail});
  }
};

std::string node_loc(const Program& prog, int n) {
  return prog.procs[prog.nodes[n].proc].name + ":n" + std::to_string(n);
}

template <class A>
std::string show(const A& a, const Program& prog, int n, const typename A::Value& v) {
  return a.to_json(prog.nodes[n].proc, v).dump();
}

template <class A>
void check_analysis(Context& cx, const A& base, const std::string& name, bool distributive) {
  const Program& prog = cx.prog;
  auto mfp = solve_program(prog, cx.cg, base, Mode::Mfp, cx.u);
  auto fp = solve_program(prog, cx.cg, base, Mode::Fpmfp, cx.u, OptConfig::all());
  auto fp0 = solve_program(prog, cx.cg, base, Mode::Fpmfp, cx.u, OptConfig::none());
  const A& a = fp.analysis;

  if (!mfp.stats.monotone) cx.fail("monotone_iteration", name, "program");

  for (const auto& n : prog.nodes) {
    ++cx.r.nodes_checked;
    if (!a.leq(mfp.flow.in[n.id], fp.flow.in[n.id]))
      cx.fail("mfp_below_fpmfp", name, node_loc(prog, n.id),
              show(a, prog, n.id, mfp.flow.in[n.id]) + " vs " + show(a, prog, n.id, fp.flow.in[n.id]));
    if (!(fp.flow.in[n.id] == fp0.flow.in[n.id]) || !(fp.flow.out[n.id] == fp0.flow.out[n.id]))
      cx.fail("opt_neutrality", name, node_loc(prog, n.id),
              show(a, prog, n.id, fp.flow.in[n.id]) + " vs " + show(a, prog, n.id, fp0.flow.in[n.id]));
  }
  for (const auto* s : {&fp, &fp0}) {
    for (size_t e = 0; e < s->pairs.max_pairs.size(); ++e) {
      size_t bound = cx.u.of_proc(prog.nodes[prog.edges[e].src].proc).size() + 1;
      cx.r.max_pairs = std::max(cx.r.max_pairs, s->pairs.max_pairs[e]);
      if (s->pairs.max_pairs[e] > bound)
        cx.fail("pair_bound", name, "e" + std::to_string(e),
                std::to_string(s->pairs.max_pairs[e]) + " > " + std::to_string(bound));
    }
  }

  for (const auto& p : prog.procs) {
    if (p.is_extern) continue;
    PathMeets<typename A::Value> pm;
    try {
      pm = path_meets(prog, p.id, a, fp.boundary[p.id], cx.u, cx.opts.bounds);
    } catch (const Explosion&) {
      ++cx.r.skipped_oracle;
      continue;
    }
    for (int n : p.nodes) {
      if (!a.leq(fp.flow.in[n], pm.free_in[n]))
        cx.fail("fpmfp_below_oracle", name, node_loc(prog, n),
                show(a, prog, n, fp.flow.in[n]) + " vs " + show(a, prog, n, pm.free_in[n]));
      if (distributive && cx.r.acyclic && pm.exhaustive) {
        ++cx.r.distributive_checked;
        if (!(fp.flow.in[n] == pm.free_in[n]))
          cx.fail("distributive_equality", name, node_loc(prog, n),
                  show(a, prog, n, fp.flow.in[n]) + " vs " + show(a, prog, n, pm.free_in[n]));
      }
    }
    for (int e : p.edges) {
      for (const auto& [m, d] : fp0.lifted->edge[e]) {
        auto it = pm.free_edge_key.find({e, m});
        if (it != pm.free_edge_key.end() && !fp0.analysis.leq(d, it->second))
          cx.fail("pair_value_below_oracle", name, "e" + std::to_string(e) + " " + to_string(m));
      }
    }
    // Concrete traces within the enumeration bounds are MIPS-free paths.
    auto tr = cx.traces.find(p.id);
    if (tr == cx.traces.end()) continue;
    size_t max_len = cx.opts.bounds.max_len ? cx.opts.bounds.max_len : 2 * p.edges.size();
    std::vector<typename A::Value> conc(prog.nodes.size(), a.top());
    for (const auto& t : tr->second.traces) {
      if (t.size() > max_len) continue;
      std::map<int, int> back;
      bool within = true;
      for (int e : t)
        if (prog.edges[e].back && ++back[e] > cx.opts.bounds.back_budget) within = false;
      if (!within) continue;
      auto v = fp.boundary[p.id];
      int n = p.start;
      conc[n] = a.meet(conc[n], v);
      for (int e : t) {
        v = a.edge(e, a.transfer(n, v));
        n = prog.edges[e].dst;
        conc[n] = a.meet(conc[n], v);
      }
    }
    for (int n : p.nodes)
      if (!a.leq(pm.free_in[n], conc[n]))
        cx.fail("oracle_below_concrete", name, node_loc(prog, n));
  }
}

void check_mips(Context& cx) {
  const Program& prog = cx.prog;
  const MipsUniverse& u = cx.u;
  for (const auto& m : u.all()) {
    std::string loc = "u" + std::to_string(m.id);
    for (const auto& o : u.all()) {
      if (o.id == m.id || o.edges.size() >= m.edges.size()) continue;
      if (contains_segment(m.edges, o.edges))
        cx.fail("mips_minimality", "", loc, "contains u" + std::to_string(o.id));
    }
    for (size_t i = 0; i < m.edges.size(); ++i) {
      int e = m.edges[i];
      if (prog.nodes[prog.edges[e].src].proc != m.proc) cx.fail("balanced_only", "", loc);
      MipsSet cs = u.cso(e, m.id);
      if (!std::binary_search(cs.begin(), cs.end(), m.id)) cx.fail("cso_reflexive", "", loc);
      if (i + 1 < m.edges.size()) {
        int e2 = m.edges[i + 1];
        if (u.ext(e2, u.cpo(e, m.id)) != u.cpo(e2, m.id))
          cx.fail("ext_cpo_coherence", "", loc, "at e" + std::to_string(e2));
      }
      if (i > 0) {
        const Statement& s = prog.nodes[prog.edges[e].src].stmt;
        if (s.kind == Statement::Kind::Call &&
            (cx.cg.may_modify(s.callee, m.end_condition.x) ||
             (m.end_condition.y >= 0 && cx.cg.may_modify(s.callee, m.end_condition.y))))
          cx.fail("balanced_only", "", loc, "call modifies the end condition");
      }
    }
    if (!cx.opts.concrete) continue;
    auto tr = cx.traces.find(m.proc);
    if (tr == cx.traces.end()) continue;
    ++cx.r.witness_checked;
    for (const auto& t : tr->second.traces) {
      if (contains_segment(t, m.edges)) {
        cx.fail("mips_infeasible", "", loc, "executed by a concrete run");
        break;
      }
    }
  }
}

}  // namespace

CheckReport check_program(const Program& prog, const std::string& name, const CheckOptions& opts) {
  CheckReport r;
  r.name = name;
  r.acyclic = is_acyclic(prog);
  CallGraph cg = build_call_graph(prog);
  MipsUniverse u = detect_mips(prog, cg);
  r.universe = u.size();
  Context cx{prog, cg, u, opts, {}, r};
  if (opts.concrete) {
    for (const auto& p : prog.procs) {
      if (p.is_extern) continue;
      try {
        cx.traces.emplace(p.id, concrete_traces(prog, p.id, opts.box));
      } catch (const Explosion&) {
        ++r.skipped_concrete;
      }
    }
  }
  check_mips(cx);
  for (const auto& a : opts.analyses) {
    if (a == "rd")
      check_analysis(cx, BitVectorAnalysis::reaching_definitions(prog), a, true);
    else if (a == "uninit")
      check_analysis(cx, BitVectorAnalysis::must_defined(prog), a, true);
    else if (a == "interval")
      check_analysis(cx, IntervalAnalysis(prog, cg), a, false);
  }
  return r;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : r.violations)
    v.push_back({{"property", x.property}, {"analysis", x.analysis}, {"location", x.location},
                 {"detail", x.detail}});
  return {{"name", r.name},
          {"ok", r.ok()},
          {"acyclic", r.acyclic},
          {"mips", r.universe},
          {"nodes_checked", r.nodes_checked},
          {"distributive_checked", r.distributive_checked},
          {"witness_checked", r.witness_checked},
          {"skipped_oracle", r.skipped_oracle},
          {"skipped_concrete", r.skipped_concrete},
          {"max_pairs", r.max_pairs},
          {"violations", v}};
}

}  // namespace fpmfp
