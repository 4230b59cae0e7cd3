// SPDX-License-Identifier: MIT
#include "fpmfp/callgraph.h"

#include <algorithm>
#include <functional>

namespace fpmfp {

CallGraph build_call_graph(const Program& prog) {
  const int n = static_cast<int>(prog.procs.size());
  CallGraph cg;
  cg.callees.assign(n, {});
  cg.callers.assign(n, {});
  for (const auto& node : prog.nodes) {
    if (node.stmt.kind == Statement::Kind::Call) {
      cg.callees[node.proc].push_back(node.stmt.callee);
      cg.callers[node.stmt.callee].push_back(node.proc);
    }
  }
  for (auto* lists : {&cg.callees, &cg.callers}) {
    for (auto& l : *lists) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  }

  // Tarjan emits components in reverse topological order of the condensation,
  // which is callee-first.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0;
  cg.scc_of.assign(n, -1);
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : cg.callees[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        cg.scc_of[w] = static_cast<int>(cg.sccs.size());
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      cg.sccs.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);

  cg.recursive.assign(n, false);
  for (const auto& comp : cg.sccs) {
    bool rec = comp.size() > 1 ||
               std::binary_search(cg.callees[comp[0]].begin(), cg.callees[comp[0]].end(), comp[0]);
    for (int p : comp) cg.recursive[p] = rec;
  }

  const size_t nv = prog.vars.size();
  cg.modifies.assign(n, std::vector<bool>(nv, false));
  for (const auto& node : prog.nodes) {
    int v = defined_var(node);
    if (v >= 0 && prog.is_global(v)) cg.modifies[node.proc][v] = true;
  }
  // Components arrive callee-first; iterate each to saturation for recursion.
  for (const auto& comp : cg.sccs) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int p : comp) {
        for (int q : cg.callees[p]) {
          for (size_t v = 0; v < nv; ++v) {
            if (cg.modifies[q][v] && !cg.modifies[p][v]) {
              cg.modifies[p][v] = true;
              changed = true;
            }
          }
        }
      }
    }
  }
  return cg;
}

std::vector<int> CallGraph::bottom_up() const {
  std::vector<int> out;
  for (const auto& comp : sccs) out.insert(out.end(), comp.begin(), comp.end());
  return out;
}

std::vector<int> CallGraph::top_down() const {
  std::vector<int> out = bottom_up();
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace fpmfp
