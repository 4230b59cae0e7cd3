// SPDX-License-Identifier: MIT
#include "fpmfp/mips.h"

#include <algorithm>
#include <deque>
#include <sstream>

#include <spdlog/spdlog.h>

namespace fpmfp {

unsigned Constraint::rel_mask(RelOp op) {
  switch (op) {
    case RelOp::Lt: return kLt;
    case RelOp::Le: return kLt | kEq;
    case RelOp::Gt: return kGt;
    case RelOp::Ge: return kGt | kEq;
    case RelOp::Eq: return kEq;
    case RelOp::Ne: return kLt | kGt;
  }
  return 0;
}

namespace {

unsigned swap_rel(unsigned r) {
  return (r & Constraint::kEq) | ((r & Constraint::kLt) ? Constraint::kGt : 0) |
         ((r & Constraint::kGt) ? Constraint::kLt : 0);
}

}  // namespace

std::string Constraint::str(const Program& prog) const {
  if (y < 0) return prog.vars[x].name + " in " + set.str();
  static const char* names[] = {"false", "<", "==", "<=", ">", "!=", ">=", "true"};
  return prog.vars[x].name + " " + names[rel] + " " + prog.vars[y].name;
}

std::optional<Constraint> edge_constraint(const Program& prog, const Edge& e) {
  const Statement& s = prog.nodes[e.src].stmt;
  Constraint c;
  if (s.kind == Statement::Kind::Branch &&
      (e.label == EdgeLabel::True || e.label == EdgeLabel::False)) {
    bool pos = e.label == EdgeLabel::True;
    if (s.cond.kind == Cond::Kind::Truthy) {
      c.x = s.cond.lhs;
      c.set = IntervalSet::from_relop(pos ? RelOp::Ne : RelOp::Eq, 0);
      return c;
    }
    if (s.cond.kind == Cond::Kind::Compare) {
      RelOp op = pos ? s.cond.op : negate(s.cond.op);
      c.x = s.cond.lhs;
      if (s.cond.rhs_is_var) {
        if (s.cond.rhs_var == s.cond.lhs) return std::nullopt;
        c.y = s.cond.rhs_var;
        c.rel = Constraint::rel_mask(op);
      } else {
        c.set = IntervalSet::from_relop(op, s.cond.rhs_const);
      }
      return c;
    }
    return std::nullopt;
  }
  if (s.kind == Statement::Kind::Switch) {
    c.x = s.var;
    if (e.label == EdgeLabel::Case) {
      c.set = IntervalSet(Interval::point(e.case_value));
    } else {
      c.set = IntervalSet::all();
      for (const auto& k : s.cases)
        c.set = c.set.intersect(IntervalSet::from_relop(RelOp::Ne, k));
    }
    return c;
  }
  return std::nullopt;
}

const char* to_string(Answer a) {
  switch (a) {
    case Answer::True: return "TRUE";
    case Answer::False: return "FALSE";
    case Answer::Undef: return "UNDEF";
    case Answer::Unresolved: return "UNRESOLVED";
  }
  return "";
}

Answer resolve(const Program& prog, const CallGraph& cg, int edge, const Query& q) {
  const Edge& e = prog.edges[edge];
  const Node& n = prog.nodes[e.src];
  const Constraint& c = q.constraint;
  const Statement& s = n.stmt;
  switch (s.kind) {
    case Statement::Kind::Start:
      return Answer::Undef;
    case Statement::Kind::Assign:
      if (!c.mentions(s.var)) return Answer::Unresolved;
      if (c.y < 0 && s.expr.is_constant())
        return c.set.contains(evaluate(s.expr, {})) ? Answer::True : Answer::False;
      return Answer::Undef;
    case Statement::Kind::Read:
      return c.mentions(s.var) ? Answer::Undef : Answer::Unresolved;
    case Statement::Kind::Call: {
      const Procedure& callee = prog.procs[s.callee];
      if (callee.is_extern) return Answer::Unresolved;
      bool mod = cg.may_modify(s.callee, c.x) || (c.y >= 0 && cg.may_modify(s.callee, c.y));
      return mod ? Answer::Undef : Answer::Unresolved;
    }
    case Statement::Kind::Branch:
    case Statement::Kind::Switch: {
      auto ec = edge_constraint(prog, e);
      if (!ec) return Answer::Unresolved;
      if (ec->y < 0 && c.y < 0 && ec->x == c.x) {
        if (ec->set.subset_of(c.set)) return Answer::True;
        if (ec->set.intersect(c.set).is_empty()) return Answer::False;
        return Answer::Unresolved;
      }
      if (ec->y >= 0 && c.y >= 0) {
        unsigned r;
        if (ec->x == c.x && ec->y == c.y)
          r = ec->rel;
        else if (ec->x == c.y && ec->y == c.x)
          r = swap_rel(ec->rel);
        else
          return Answer::Unresolved;
        if ((r & ~c.rel) == 0) return Answer::True;
        if ((r & c.rel) == 0) return Answer::False;
      }
      return Answer::Unresolved;
    }
    default:
      return Answer::Unresolved;
  }
}

Answer Step1Result::answer(int edge, int query) const {
  auto it = A.find({edge, query});
  return it == A.end() ? Answer::Unresolved : it->second;
}

int Mips::position(int edge) const {
  auto it = std::find(edges.begin(), edges.end(), edge);
  return it == edges.end() ? -1 : static_cast<int>(it - edges.begin());
}

Step1Result detect_step1(const Program& prog, const CallGraph& cg) {
  Step1Result r;
  std::deque<std::pair<int, int>> work;
  auto raise = [&](int e, int q) {
    if (r.Q[e].insert(q).second) work.emplace_back(e, q);
  };
  for (const auto& ex : prog.edges) {
    auto c = edge_constraint(prog, ex);
    if (!c) continue;
    r.queries[ex.id] = Query{ex.id, *c};
    for (int p : prog.pred_edges(ex.id)) raise(p, ex.id);
  }
  while (!work.empty()) {
    auto [e, q] = work.front();
    work.pop_front();
    Answer a = resolve(prog, cg, e, r.queries.at(q));
    if (a != Answer::Unresolved) {
      r.A[{e, q}] = a;
      continue;
    }
    for (int p : prog.pred_edges(e)) raise(p, q);
  }
  return r;
}

namespace {

bool modifies(const Program& prog, const CallGraph& cg, int node, const Constraint& c) {
  const Statement& s = prog.nodes[node].stmt;
  int v = defined_var(prog.nodes[node]);
  if (v >= 0 && c.mentions(v)) return true;
  if (s.kind == Statement::Kind::Call && !prog.procs[s.callee].is_extern)
    return cg.may_modify(s.callee, c.x) || (c.y >= 0 && cg.may_modify(s.callee, c.y));
  return false;
}

}  // namespace

Step2Result detect_step2(const Program& prog, const CallGraph& cg, const Step1Result& s1,
                         size_t max_walks_per_query) {
  Step2Result r;
  std::map<int, std::vector<int>> region;  // query -> edges where it was raised
  for (const auto& [e, qs] : s1.Q)
    for (int q : qs) region[q].push_back(e);

  for (const auto& [qid, edges] : region) {
    const Query& q = s1.queries.at(qid);
    const int ex = qid;
    std::set<int> unresolved, starts, hoisted;
    for (int e : edges) {
      Answer a = s1.answer(e, qid);
      if (a == Answer::Unresolved) unresolved.insert(e);
      if (a == Answer::False) starts.insert(e);
    }
    if (starts.empty()) continue;

    // Start hoisting: e becomes a start once every predecessor edge is one.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int e : unresolved) {
        if (hoisted.count(e)) continue;
        const auto& preds = prog.pred_edges(e);
        bool all = !preds.empty() && std::all_of(preds.begin(), preds.end(), [&](int p) {
          return starts.count(p) || hoisted.count(p);
        });
        if (all) {
          hoisted.insert(e);
          changed = true;
        }
      }
    }
    starts.insert(hoisted.begin(), hoisted.end());

    auto next_edges = [&](int e) {
      std::vector<int> out;
      for (int s : prog.nodes[prog.edges[e].dst].out)
        if (s == ex || (unresolved.count(s) && !hoisted.count(s))) out.push_back(s);
      return out;
    };
    // A start is un-marked when all its continuations were hoisted past it.
    for (auto it = starts.begin(); it != starts.end();) {
      bool keep = false;
      for (int s : prog.nodes[prog.edges[*it].dst].out)
        if (s == ex || (unresolved.count(s) && !hoisted.count(s))) keep = true;
      it = keep ? std::next(it) : starts.erase(it);
    }

    size_t walks = 0;
    bool truncated = false;
    for (int s : starts) {
      r.start[s].insert(qid);
      std::vector<int> path = {s};
      std::set<int> seen = {prog.edges[s].src, prog.edges[s].dst};
      if (prog.edges[s].src == prog.edges[s].dst) continue;
      // Depth-first enumeration of node-acyclic walks from s to ex.
      std::vector<std::pair<std::vector<int>, size_t>> stack;
      stack.push_back({next_edges(s), 0});
      while (!stack.empty() && !truncated) {
        auto& [cand, i] = stack.back();
        if (i == cand.size()) {
          stack.pop_back();
          if (path.size() > 1) {
            seen.erase(prog.edges[path.back()].dst);
            path.pop_back();
          }
          continue;
        }
        int e = cand[i++];
        int dst = prog.edges[e].dst;
        if (seen.count(dst)) continue;
        if (e == ex) {
          Mips m;
          m.proc = prog.nodes[prog.edges[s].src].proc;
          m.edges = path;
          m.edges.push_back(ex);
          m.end_condition = q.constraint;
          bool p = true;
          for (size_t k = 1; k < m.edges.size(); ++k)
            if (modifies(prog, cg, prog.edges[m.edges[k]].src, q.constraint)) p = false;
          m.satisfies_p = p;
          r.mips.push_back(std::move(m));
          if (++walks > max_walks_per_query) truncated = true;
          continue;
        }
        path.push_back(e);
        seen.insert(dst);
        stack.push_back({next_edges(e), 0});
      }
      if (truncated) break;
    }
    if (truncated) {
      r.truncated_queries.insert(qid);
      spdlog::warn("MIPS enumeration for query at e{} truncated after {} walks", qid, walks);
      for (auto& m : r.mips)
        if (m.end() == ex) m.satisfies_p = false;
    }
    for (const auto& m : r.mips) {
      if (m.end() != ex) continue;
      for (size_t k = 1; k + 1 < m.edges.size(); ++k) r.inner[m.edges[k]].insert(qid);
      r.end[ex].insert(qid);
    }
  }
  return r;
}

MipsUniverse::MipsUniverse(const Program& prog, std::vector<Mips> mips) : mips_(std::move(mips)) {
  by_proc_.assign(prog.procs.size(), {});
  starts_.assign(prog.edges.size(), {});
  ends_.assign(prog.edges.size(), {});
  contains_.assign(prog.edges.size(), {});
  for (size_t i = 0; i < mips_.size(); ++i) {
    Mips& m = mips_[i];
    m.id = static_cast<int>(i);
    by_proc_[m.proc].push_back(m.id);
    starts_[m.start()].push_back(m.id);
    ends_[m.end()].push_back(m.id);
    for (int e : m.edges) contains_[e].push_back(m.id);
  }
}

MipsSet MipsUniverse::ext(int edge, const MipsSet& m) const {
  MipsSet kept, out;
  const auto& c = contains_[edge];
  std::set_intersection(m.begin(), m.end(), c.begin(), c.end(), std::back_inserter(kept));
  const auto& s = starts_[edge];
  std::set_union(kept.begin(), kept.end(), s.begin(), s.end(), std::back_inserter(out));
  return out;
}

bool MipsUniverse::endof(const MipsSet& m, int edge) const {
  return std::any_of(m.begin(), m.end(), [&](int id) { return mips_[id].end() == edge; });
}

MipsSet MipsUniverse::cpo(int edge, int mu) const {
  const Mips& m = mips_[mu];
  int pos = m.position(edge);
  if (pos < 0) throw EdgeNotInMips("edge e" + std::to_string(edge) + " not in MIPS " + std::to_string(mu));
  MipsSet out;
  for (int id : contains_[edge]) {
    const Mips& m2 = mips_[id];
    int p2 = m2.position(edge);
    if (p2 > pos) continue;
    if (std::equal(m2.edges.begin(), m2.edges.begin() + p2 + 1, m.edges.begin() + (pos - p2)))
      out.push_back(id);
  }
  return out;
}

MipsSet MipsUniverse::cso(int edge, int mu) const {
  const Mips& m = mips_[mu];
  int pos = m.position(edge);
  if (pos < 0) throw EdgeNotInMips("edge e" + std::to_string(edge) + " not in MIPS " + std::to_string(mu));
  MipsSet out;
  for (int id : contains_[edge]) {
    const Mips& m2 = mips_[id];
    int p2 = m2.position(edge);
    size_t tail2 = m2.edges.size() - p2;
    if (tail2 > m.edges.size() - pos) continue;
    if (std::equal(m2.edges.begin() + p2, m2.edges.end(), m.edges.begin() + pos)) out.push_back(id);
  }
  return out;
}

bool MipsUniverse::all_satisfy_p(const MipsSet& m) const {
  return std::all_of(m.begin(), m.end(), [&](int id) { return mips_[id].satisfies_p; });
}

std::vector<int> MipsUniverse::end_edges(const MipsSet& m) const {
  std::vector<int> out;
  for (int id : m) out.push_back(mips_[id].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool strictly_contains(const std::vector<int>& big, const std::vector<int>& small) {
  if (small.size() >= big.size()) return false;
  return std::search(big.begin(), big.end(), small.begin(), small.end()) != big.end();
}

}  // namespace

MipsUniverse detect_mips(const Program& prog, const CallGraph& cg) {
  Step1Result s1 = detect_step1(prog, cg);
  Step2Result s2 = detect_step2(prog, cg, s1);
  std::vector<Mips> candidates = s2.mips;
  std::vector<Mips> kept;
  // Minimality: drop segments that strictly contain another detected segment.
  std::vector<std::vector<int>> by_start(prog.edges.size());
  for (size_t i = 0; i < candidates.size(); ++i) by_start[candidates[i].start()].push_back(static_cast<int>(i));
  for (const auto& m : candidates) {
    bool minimal = true;
    for (size_t k = 0; k + 1 < m.edges.size() && minimal; ++k) {
      for (int j : by_start[m.edges[k]]) {
        if (strictly_contains(m.edges, candidates[j].edges)) {
          minimal = false;
          break;
        }
      }
    }
    if (minimal) kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(), [](const Mips& a, const Mips& b) {
    return std::tie(a.proc, a.edges.back(), a.edges.front(), a.edges) <
           std::tie(b.proc, b.edges.back(), b.edges.front(), b.edges);
  });
  MipsUniverse u(prog, std::move(kept));
  u.step1 = std::move(s1);
  u.step2 = std::move(s2);
  return u;
}

std::string to_string(const MipsSet& m) {
  std::string s = "{";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += "u" + std::to_string(m[i]);
  }
  return s + "}";
}

}  // namespace fpmfp
