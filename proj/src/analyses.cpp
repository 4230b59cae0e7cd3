// SPDX-License-Identifier: MIT
#include "fpmfp/analyses.h"

#include <algorithm>
#include <limits>

namespace fpmfp {

// ---------------------------------------------------------------------------
// Bit-vector analyses

BitVectorAnalysis::BitVectorAnalysis(const Program& prog, Kind kind, Meet meet)
    : prog_(&prog), kind_(kind), meet_(meet) {}

BitVectorAnalysis BitVectorAnalysis::reaching_definitions(const Program& prog) {
  BitVectorAnalysis a(prog, Kind::ReachingDefs, Meet::Union);
  std::vector<std::vector<size_t>> by_var(prog.vars.size());
  std::vector<long> fact_at(prog.nodes.size(), -1);
  for (const auto& n : prog.nodes) {
    int v = defined_var(n);
    if (v < 0) continue;
    fact_at[n.id] = static_cast<long>(a.fact_var_.size());
    by_var[v].push_back(a.fact_var_.size());
    a.fact_var_.push_back(v);
    a.fact_node_.push_back(n.id);
  }
  a.nfacts_ = a.fact_var_.size();
  a.gen_.assign(prog.nodes.size(), Bits(a.nfacts_));
  a.kill_.assign(prog.nodes.size(), Bits(a.nfacts_));
  for (const auto& n : prog.nodes) {
    if (fact_at[n.id] < 0) continue;
    auto f = static_cast<size_t>(fact_at[n.id]);
    a.gen_[n.id].set(f);
    for (size_t g : by_var[a.fact_var_[f]])
      if (g != f) a.kill_[n.id].set(g);
  }
  a.global_mask_ = Bits(a.nfacts_);
  for (size_t f = 0; f < a.nfacts_; ++f)
    if (prog.is_global(a.fact_var_[f])) a.global_mask_.set(f);
  a.effects_.assign(prog.procs.size(), {});
  return a;
}

BitVectorAnalysis BitVectorAnalysis::must_defined(const Program& prog) {
  BitVectorAnalysis a(prog, Kind::MustDefined, Meet::Intersection);
  a.nfacts_ = prog.vars.size();
  for (size_t v = 0; v < a.nfacts_; ++v) {
    a.fact_var_.push_back(static_cast<int>(v));
    a.fact_node_.push_back(-1);
  }
  a.gen_.assign(prog.nodes.size(), Bits(a.nfacts_));
  a.kill_.assign(prog.nodes.size(), Bits(a.nfacts_));
  for (const auto& n : prog.nodes) {
    int v = defined_var(n);
    if (v >= 0) a.gen_[n.id].set(static_cast<size_t>(v));
  }
  a.global_mask_ = Bits(a.nfacts_);
  for (int g : prog.globals) a.global_mask_.set(static_cast<size_t>(g));
  a.effects_.assign(prog.procs.size(), {});
  return a;
}

BitVectorAnalysis BitVectorAnalysis::kill_problem() const {
  BitVectorAnalysis a = *this;
  a.kind_ = Kind::Summary;
  a.meet_ = meet_ == Meet::Union ? Meet::Intersection : Meet::Union;
  a.gen_ = kill_;
  for (auto& k : a.kill_) k.reset();
  a.effects_.assign(prog_->procs.size(), {});
  return a;
}

BitVectorAnalysis BitVectorAnalysis::gen_problem() const {
  BitVectorAnalysis a = *this;
  a.kind_ = Kind::Summary;
  a.effects_.assign(prog_->procs.size(), {});
  return a;
}

std::string BitVectorAnalysis::fact_name(size_t i) const {
  const std::string& v = prog_->vars[fact_var_[i]].name;
  if (fact_node_[i] < 0) return v;
  return v + "@n" + std::to_string(fact_node_[i]);
}

std::vector<size_t> BitVectorAnalysis::facts_of_var(int v) const {
  std::vector<size_t> out;
  for (size_t f = 0; f < nfacts_; ++f)
    if (fact_var_[f] == v) out.push_back(f);
  return out;
}

BitValue BitVectorAnalysis::meet(const Value& a, const Value& b) const {
  if (a.top) return b;
  if (b.top) return a;
  return make(meet_ == Meet::Union ? (a.bits | b.bits) : (a.bits & b.bits));
}

bool BitVectorAnalysis::leq(const Value& a, const Value& b) const {
  if (b.top) return true;
  if (a.top) return false;
  return meet_ == Meet::Union ? b.bits.is_subset_of(a.bits) : a.bits.is_subset_of(b.bits);
}

BitValue BitVectorAnalysis::transfer(int node, const Value& v) const {
  if (v.top) return v;
  const Statement& s = prog_->nodes[node].stmt;
  if (s.kind == Statement::Kind::Call) {
    if (prog_->procs[s.callee].is_extern) return v;
    const CallEffect& e = effects_[s.callee];
    if (e.unreachable) return top();
    return make((v.bits - e.kill) | e.gen);
  }
  return make((v.bits - kill_[node]) | gen_[node]);
}

BitValue BitVectorAnalysis::boundary(int proc) const {
  Bits b(nfacts_);
  if (kind_ == Kind::MustDefined) {
    b = global_mask_;
    for (int p : prog_->procs[proc].params) b.set(static_cast<size_t>(p));
  }
  return make(std::move(b));
}

BitValue BitVectorAnalysis::call_entry(int callee, const Value& at_call) const {
  if (at_call.top || kind_ == Kind::Summary) return at_call;
  Bits b = at_call.bits & global_mask_;
  if (kind_ == Kind::MustDefined)
    for (int p : prog_->procs[callee].params) b.set(static_cast<size_t>(p));
  return make(std::move(b));
}

nlohmann::json BitVectorAnalysis::to_json(int proc, const Value& v) const {
  if (v.top) return "top";
  nlohmann::json out = nlohmann::json::array();
  if (kind_ == Kind::MustDefined) {
    for (int var : prog_->scope(proc))
      if (v.bits.test(static_cast<size_t>(var))) out.push_back(prog_->vars[var].name);
    return out;
  }
  for (size_t f = v.bits.find_first(); f != Bits::npos; f = v.bits.find_next(f))
    out.push_back(fact_name(f));
  return out;
}

// ---------------------------------------------------------------------------
// Intervals

IntervalAnalysis::IntervalAnalysis(const Program& prog, const CallGraph& cg,
                                   std::vector<int> tracked)
    : prog_(&prog), cg_(&cg) {
  tracked_.assign(prog.vars.size(), tracked.empty());
  for (int v : tracked) tracked_[v] = true;
  exits_.assign(prog.procs.size(), IntervalEnv{});
  has_exit_.assign(prog.procs.size(), false);
}

IntervalEnv IntervalAnalysis::unknown() const {
  return {false, std::vector<Interval>(prog_->vars.size(), Interval::full())};
}

IntervalEnv IntervalAnalysis::make(std::vector<Interval> v) const {
  for (size_t i = 0; i < v.size(); ++i) {
    if (!tracked_[i]) v[i] = Interval::full();
    if (v[i].is_empty()) return top();
  }
  return {false, std::move(v)};
}

IntervalEnv IntervalAnalysis::meet(const Value& a, const Value& b) const {
  if (a.top) return b;
  if (b.top) return a;
  Value r = a;
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i].hull(b.v[i]);
  return r;
}

bool IntervalAnalysis::leq(const Value& a, const Value& b) const {
  if (b.top) return true;
  if (a.top) return false;
  for (size_t i = 0; i < a.v.size(); ++i)
    if (!a.v[i].contains(b.v[i])) return false;
  return true;
}

Interval IntervalAnalysis::eval(const Expr& e, const Value& env) const {
  switch (e.kind) {
    case Expr::Kind::Const: return Interval::point(e.value);
    case Expr::Kind::Var: return env.v[e.var];
    case Expr::Kind::Add: return eval(e.args[0], env) + eval(e.args[1], env);
    case Expr::Kind::Sub: return eval(e.args[0], env) - eval(e.args[1], env);
    case Expr::Kind::Neg: return -eval(e.args[0], env);
  }
  return Interval::full();
}

IntervalEnv IntervalAnalysis::transfer(int node, const Value& v) const {
  if (v.top) return v;
  const Statement& s = prog_->nodes[node].stmt;
  switch (s.kind) {
    case Statement::Kind::Assign: {
      if (!tracked_[s.var]) return v;
      Interval r = eval(s.expr, v);
      if (r.is_empty()) return top();
      Value out = v;
      out.v[s.var] = r;
      return out;
    }
    case Statement::Kind::Read: {
      Value out = v;
      out.v[s.var] = Interval::full();
      return out;
    }
    case Statement::Kind::Call: {
      if (prog_->procs[s.callee].is_extern) return v;
      Value out = v;
      if (has_exit_[s.callee]) {
        const Value& ex = exits_[s.callee];
        if (ex.top) return top();
        for (int g : prog_->globals)
          if (cg_->may_modify(s.callee, g) && tracked_[g]) out.v[g] = ex.v[g];
      } else {
        for (int g : prog_->globals)
          if (cg_->may_modify(s.callee, g)) out.v[g] = Interval::full();
      }
      return out;
    }
    default:
      return v;
  }
}

namespace {

Interval hull_of(const IntervalSet& s) {
  if (s.is_empty()) return Interval::empty();
  return {s.parts().front().lo, s.parts().back().hi};
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  return a.complement().intersect(b.complement()).complement();
}

// Values of x compatible with rel(x, y) for some y in ys.
IntervalSet rel_image(unsigned rel, const Interval& ys) {
  IntervalSet out;
  if (ys.is_empty()) return out;
  if (rel & Constraint::kLt) {
    Bound hi = ys.hi.finite() ? Bound(Int(ys.hi.value() - 1)) : ys.hi;
    out = set_union(out, IntervalSet(Interval{Bound::neg_inf(), hi}));
  }
  if (rel & Constraint::kEq) out = set_union(out, IntervalSet(ys));
  if (rel & Constraint::kGt) {
    Bound lo = ys.lo.finite() ? Bound(Int(ys.lo.value() + 1)) : ys.lo;
    out = set_union(out, IntervalSet(Interval{lo, Bound::pos_inf()}));
  }
  return out;
}

unsigned mirror(unsigned r) {
  return (r & Constraint::kEq) | ((r & Constraint::kLt) ? Constraint::kGt : 0u) |
         ((r & Constraint::kGt) ? Constraint::kLt : 0u);
}

}  // namespace

IntervalEnv IntervalAnalysis::refine(const Value& v, const Constraint& c) const {
  Value out = v;
  if (c.y < 0) {
    if (!tracked_[c.x]) return out;
    out.v[c.x] = hull_of(c.set.intersect(IntervalSet(v.v[c.x])));
  } else {
    if (tracked_[c.x])
      out.v[c.x] = hull_of(rel_image(c.rel, v.v[c.y]).intersect(IntervalSet(v.v[c.x])));
    if (tracked_[c.y])
      out.v[c.y] = hull_of(rel_image(mirror(c.rel), v.v[c.x]).intersect(IntervalSet(v.v[c.y])));
  }
  if ((c.x >= 0 && out.v[c.x].is_empty()) || (c.y >= 0 && out.v[c.y].is_empty())) return top();
  return out;
}

IntervalEnv IntervalAnalysis::edge(int e, const Value& v) const {
  if (v.top) return v;
  const Edge& ed = prog_->edges[e];
  if (ed.label == EdgeLabel::None || ed.label == EdgeLabel::Default) return v;
  auto c = edge_constraint(*prog_, ed);
  if (!c) return v;
  return refine(v, *c);
}

IntervalEnv IntervalAnalysis::widen(const Value& prev, const Value& next, const Value* limit) const {
  // Widens the hull of prev and next, so the result never rises above prev.
  if (prev.top) return next;
  if (next.top) return prev;
  if (limit && limit->top) limit = nullptr;
  Value out = prev;
  for (size_t i = 0; i < out.v.size(); ++i) {
    if (next.v[i].lo < prev.v[i].lo)
      out.v[i].lo = limit && limit->v[i].lo <= next.v[i].lo ? limit->v[i].lo : Bound::neg_inf();
    if (next.v[i].hi > prev.v[i].hi)
      out.v[i].hi = limit && limit->v[i].hi >= next.v[i].hi ? limit->v[i].hi : Bound::pos_inf();
  }
  return out;
}

IntervalEnv IntervalAnalysis::boundary(int) const {
  Value out = unknown();
  for (int g : prog_->globals)
    if (tracked_[g]) out.v[g] = Interval::point(0);
  return out;
}

IntervalEnv IntervalAnalysis::call_entry(int, const Value& at_call) const {
  if (at_call.top) return at_call;
  Value out = unknown();
  for (int g : prog_->globals) out.v[g] = at_call.v[g];
  return out;
}

nlohmann::json bound_json(const Bound& b) {
  if (!b.finite()) return b.str();
  const Int& v = b.value();
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

nlohmann::json IntervalAnalysis::to_json(int proc, const Value& v) const {
  if (v.top) return "top";
  nlohmann::json out = nlohmann::json::object();
  for (int var : prog_->scope(proc)) {
    if (!tracked_[var]) continue;
    out[prog_->vars[var].name] = {bound_json(v.v[var].lo), bound_json(v.v[var].hi)};
  }
  return out;
}

}  // namespace fpmfp
