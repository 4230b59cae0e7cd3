// SPDX-License-Identifier: MIT
// Client analyses: reaching definitions, must-defined variables (bit vectors)
// and interval values. Every analysis carries an artificial top that means
// "no path reaches here"; transfer functions are strict on it.
#pragma once

#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "fpmfp/callgraph.h"
#include "fpmfp/interval.h"
#include "fpmfp/ir.h"
#include "fpmfp/mips.h"
#include "json.hpp"

namespace fpmfp {

using Bits = boost::dynamic_bitset<>;

struct BitValue {
  bool top = true;
  Bits bits;

  static BitValue of(Bits b) { return {false, std::move(b)}; }
  friend bool operator==(const BitValue& a, const BitValue& b) {
    return a.top == b.top && (a.top || a.bits == b.bits);
  }
};

// Effect of a call as a constant transfer (X - kill) | gen.
struct CallEffect {
  bool unreachable = false;  // callee exit never reached
  Bits kill, gen;
};

class BitVectorAnalysis {
 public:
  using Value = BitValue;
  static constexpr bool kWidens = false;
  enum class Meet { Union, Intersection };
  enum class Kind { ReachingDefs, MustDefined, Summary };

  static BitVectorAnalysis reaching_definitions(const Program& prog);
  static BitVectorAnalysis must_defined(const Program& prog);

  // Summary problems solved per procedure with boundary {}. The kill problem
  // accumulates KILL_n under the dual meet; the gen problem is the client
  // transfer itself. Call effects are installed by the driver.
  BitVectorAnalysis kill_problem() const;
  BitVectorAnalysis gen_problem() const;

  Kind kind() const { return kind_; }
  Meet meet_kind() const { return meet_; }
  const Program& program() const { return *prog_; }
  size_t size() const { return nfacts_; }
  const Bits& gen(int node) const { return gen_[node]; }
  const Bits& kill(int node) const { return kill_[node]; }
  const Bits& global_mask() const { return global_mask_; }
  std::string fact_name(size_t i) const;
  // Facts of variable v (RD: its definition sites; MD: the variable itself).
  std::vector<size_t> facts_of_var(int v) const;
  int fact_var(size_t i) const { return fact_var_[i]; }
  int fact_node(size_t i) const { return fact_node_[i]; }  // -1 for MD

  Value top() const { return {}; }
  Value make(Bits b) const { return BitValue::of(std::move(b)); }
  Bits empty_bits() const { return Bits(nfacts_); }
  Value meet(const Value& a, const Value& b) const;
  bool leq(const Value& a, const Value& b) const;
  Value transfer(int node, const Value& v) const;
  Value edge(int, const Value& v) const { return v; }
  Value widen(const Value&, const Value& next, const Value* = nullptr) const { return next; }
  Value boundary(int proc) const;
  Value call_entry(int callee, const Value& at_call) const;

  void set_effect(int proc, CallEffect e) { effects_[proc] = std::move(e); }
  const CallEffect& effect(int proc) const { return effects_[proc]; }
  // Summary filter: only facts that are meaningful outside the callee.
  Bits summary_mask() const { return global_mask_; }

  nlohmann::json to_json(int proc, const Value& v) const;

 private:
  BitVectorAnalysis(const Program& prog, Kind kind, Meet meet);

  const Program* prog_;
  Kind kind_;
  Meet meet_;
  size_t nfacts_ = 0;
  std::vector<int> fact_var_, fact_node_;
  std::vector<Bits> gen_, kill_;
  std::vector<CallEffect> effects_;
  Bits global_mask_;
};

struct IntervalEnv {
  bool top = true;
  std::vector<Interval> v;  // indexed by variable id

  friend bool operator==(const IntervalEnv& a, const IntervalEnv& b) {
    return a.top == b.top && (a.top || a.v == b.v);
  }
};

class IntervalAnalysis {
 public:
  using Value = IntervalEnv;
  static constexpr bool kWidens = true;

  // tracked empty means every variable; untracked variables stay [-inf, +inf].
  IntervalAnalysis(const Program& prog, const CallGraph& cg, std::vector<int> tracked = {});

  const Program& program() const { return *prog_; }
  Value top() const { return {}; }
  Value unknown() const;  // every variable [-inf, +inf]
  Value meet(const Value& a, const Value& b) const;
  bool leq(const Value& a, const Value& b) const;
  Value transfer(int node, const Value& v) const;
  // Branch refinement on labeled edges; identity elsewhere.
  Value edge(int e, const Value& v) const;
  // Bounds that moved since `prev` jump to infinity, or to the bound of
  // `limit` when that still covers `next`. A limit must be a sound invariant
  // at the same point; it keeps results below a reference solution.
  Value widen(const Value& prev, const Value& next, const Value* limit = nullptr) const;
  Value boundary(int proc) const;
  Value call_entry(int callee, const Value& at_call) const;

  // Exit environment of callee under unknown input; top if it never returns.
  void set_exit(int proc, Value exit) { exits_[proc] = std::move(exit); has_exit_[proc] = true; }
  void set_havoc(int proc) { has_exit_[proc] = false; }
  bool tracked(int var) const { return tracked_[var]; }

  Value make(std::vector<Interval> v) const;  // normalizes empty to top
  nlohmann::json to_json(int proc, const Value& v) const;
  Interval eval(const Expr& e, const Value& env) const;

 private:
  Value refine(const Value& v, const Constraint& c) const;
  const Program* prog_;
  const CallGraph* cg_;
  std::vector<bool> tracked_;
  std::vector<Value> exits_;
  std::vector<bool> has_exit_;
};

nlohmann::json bound_json(const Bound& b);

}  // namespace fpmfp
