// SPDX-License-Identifier: MIT
#include "fpmfp/oracle.h"

#include <algorithm>

namespace fpmfp {

MipsMatcher::State MipsMatcher::step(const State& s, int edge) const {
  State out;
  out.contains = s.contains;
  auto advance = [&](int mu, int idx) {
    const Mips& m = u_.get(mu);
    if (m.edges[idx] != edge) return;
    if (static_cast<size_t>(idx) + 1 == m.edges.size())
      out.contains = true;
    else
      out.active.emplace_back(mu, idx);
  };
  for (const auto& [mu, i] : s.active)
    if (static_cast<size_t>(i) + 1 < u_.get(mu).edges.size()) advance(mu, i + 1);
  for (int mu : u_.starting_at(edge)) advance(mu, 0);
  std::sort(out.active.begin(), out.active.end());
  out.active.erase(std::unique(out.active.begin(), out.active.end()), out.active.end());
  return out;
}

MipsSet MipsMatcher::key(const State& s) {
  MipsSet k;
  for (const auto& [mu, i] : s.active) k.push_back(mu);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

bool contains_segment(const std::vector<int>& trace, const std::vector<int>& seg) {
  return std::search(trace.begin(), trace.end(), seg.begin(), seg.end()) != trace.end();
}

namespace {

struct Truncate {};

// One concrete run driven by a choice sequence; choices past the recorded
// prefix default to 0 and their arity is logged for odometer enumeration.
class Run {
 public:
  Run(const Program& prog, const ExecBox& box, const std::vector<int>& prefix, size_t& steps)
      : prog_(prog), box_(box), prefix_(prefix), mem_(prog.vars.size(), Int(0)), steps_(steps) {}

  void start(int proc) {
    for (int g : prog_.globals) mem_[g] = input();
    for (int v : prog_.procs[proc].params) mem_[v] = input();
    try {
      call(proc, 0);
    } catch (const Truncate&) {
      truncated = true;
    }
  }

  std::vector<int> choices, arity;
  std::vector<int> trace;
  bool truncated = false;

 private:
  int choose(int n) {
    size_t i = choices.size();
    int c = i < prefix_.size() ? prefix_[i] : 0;
    choices.push_back(c);
    arity.push_back(n);
    return c;
  }
  Int input() { return Int(box_.lo + choose(box_.hi - box_.lo + 1)); }

  bool eval_cond(const Cond& c) {
    switch (c.kind) {
      case Cond::Kind::Nondet: return choose(2) == 1;
      case Cond::Kind::Truthy: return mem_[c.lhs] != 0;
      case Cond::Kind::Compare:
        return evaluate(c.op, mem_[c.lhs], c.rhs_is_var ? mem_[c.rhs_var] : c.rhs_const);
      case Cond::Kind::Opaque: return eval_bool(*c.opaque);
    }
    return false;
  }
  bool eval_bool(const BoolExpr& b) {
    switch (b.kind) {
      case BoolExpr::Kind::Atom: return eval_cond(b.atom);
      case BoolExpr::Kind::Not: return !eval_bool(b.args[0]);
      case BoolExpr::Kind::And:
        for (const auto& a : b.args)
          if (!eval_bool(a)) return false;
        return true;
      case BoolExpr::Kind::Or:
        for (const auto& a : b.args)
          if (eval_bool(a)) return true;
        return false;
    }
    return false;
  }

  void call(int proc, int depth) {
    if (depth > box_.depth_cap) throw Truncate{};
    const Procedure& p = prog_.procs[proc];
    std::vector<Int> saved;
    if (depth > 0) {
      for (int v : p.locals) saved.push_back(mem_[v]);
      for (int v : p.locals) mem_[v] = 0;
    }
    int n = p.start;
    while (n != p.exit) {
      if (++steps_ > box_.max_steps && box_.max_steps) throw Explosion(box_.max_steps);
      const Node& node = prog_.nodes[n];
      const Statement& s = node.stmt;
      int taken = -1;
      switch (s.kind) {
        case Statement::Kind::Assign: mem_[s.var] = evaluate(s.expr, mem_); break;
        case Statement::Kind::Read: mem_[s.var] = input(); break;
        case Statement::Kind::Assert:
          if (!eval_bool(s.assertion)) throw Truncate{};
          break;
        case Statement::Kind::Call:
          if (!prog_.procs[s.callee].is_extern) call(s.callee, depth + 1);
          break;
        case Statement::Kind::Branch: {
          EdgeLabel want = eval_cond(s.cond) ? EdgeLabel::True : EdgeLabel::False;
          for (int e : node.out)
            if (prog_.edges[e].label == want) taken = e;
          break;
        }
        case Statement::Kind::Switch: {
          for (int e : node.out)
            if (prog_.edges[e].label == EdgeLabel::Case && prog_.edges[e].case_value == mem_[s.var])
              taken = e;
          if (taken < 0)
            for (int e : node.out)
              if (prog_.edges[e].label == EdgeLabel::Default) taken = e;
          break;
        }
        default: break;
      }
      if (taken < 0) taken = node.out.front();
      if (depth == 0) trace.push_back(taken);
      if (prog_.edges[taken].back && ++back_edges_ > box_.loop_cap) throw Truncate{};
      n = prog_.edges[taken].dst;
    }
    if (depth > 0)
      for (size_t i = 0; i < p.locals.size(); ++i) mem_[p.locals[i]] = saved[i];
  }

  const Program& prog_;
  const ExecBox& box_;
  const std::vector<int>& prefix_;
  std::vector<Int> mem_;
  int back_edges_ = 0;
  size_t& steps_;
};

}  // namespace

ExecResult concrete_traces(const Program& prog, int proc, const ExecBox& box) {
  ExecResult r;
  std::vector<int> prefix;
  size_t steps = 0;
  while (true) {
    if (++r.runs > box.max_runs) throw Explosion(box.max_runs);
    Run run(prog, box, prefix, steps);
    run.start(proc);
    if (run.truncated) ++r.truncated;
    r.traces.insert(std::move(run.trace));
    // Odometer over the choice sequence of this run.
    int i = static_cast<int>(run.choices.size()) - 1;
    while (i >= 0 && run.choices[i] + 1 >= run.arity[i]) --i;
    if (i < 0) break;
    prefix.assign(run.choices.begin(), run.choices.begin() + i);
    prefix.push_back(run.choices[i] + 1);
  }
  return r;
}

}  // namespace fpmfp
