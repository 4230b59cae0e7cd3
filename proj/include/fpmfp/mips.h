// SPDX-License-Identifier: MIT
// Minimal infeasible path segments: two-step backward query propagation,
// role sets, and the CPO/CSO/ext operations used by the lifted solver.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpmfp/callgraph.h"
#include "fpmfp/interval.h"
#include "fpmfp/ir.h"

namespace fpmfp {

// x in set, or rel(x, y) in rel when y >= 0. rel is a mask over {<, ==, >}.
struct Constraint {
  int x = -1;
  int y = -1;
  IntervalSet set;
  unsigned rel = 0;

  static constexpr unsigned kLt = 1, kEq = 2, kGt = 4, kAll = 7;
  static unsigned rel_mask(RelOp op);

  bool mentions(int var) const { return x == var || y == var; }
  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.x == b.x && a.y == b.y && a.set == b.set && a.rel == b.rel;
  }
  std::string str(const Program& prog) const;
};

// Fact that holds on an edge because of its branch label, if any.
std::optional<Constraint> edge_constraint(const Program& prog, const Edge& e);

enum class Answer { True, False, Undef, Unresolved };
const char* to_string(Answer a);

struct Query {
  int origin = -1;  // conditional edge the query guards; also the query's id
  Constraint constraint;
};

Answer resolve(const Program& prog, const CallGraph& cg, int edge, const Query& q);

using MipsSet = std::vector<int>;  // ascending MIPS ids

struct Mips {
  int id = -1;
  int proc = -1;
  std::vector<int> edges;
  bool satisfies_p = false;
  Constraint end_condition;

  int start() const { return edges.front(); }
  int end() const { return edges.back(); }
  int position(int edge) const;  // -1 if absent
};

class EdgeNotInMips : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Step1Result {
  std::map<int, Query> queries;                 // by origin edge
  std::map<int, std::set<int>> Q;               // edge -> queries raised there
  std::map<std::pair<int, int>, Answer> A;      // (edge, query) -> TRUE/FALSE/UNDEF
  Answer answer(int edge, int query) const;     // Unresolved if not stored
};

struct Step2Result {
  std::map<int, std::set<int>> start, inner, end;  // edge -> queries
  std::vector<Mips> mips;                          // ids unassigned
  std::set<int> truncated_queries;                 // walk enumeration hit the cap
};

Step1Result detect_step1(const Program& prog, const CallGraph& cg);
Step2Result detect_step2(const Program& prog, const CallGraph& cg, const Step1Result& s1,
                         size_t max_walks_per_query = 4096);

class MipsUniverse {
 public:
  MipsUniverse() = default;
  MipsUniverse(const Program& prog, std::vector<Mips> mips);

  const std::vector<Mips>& all() const { return mips_; }
  const Mips& get(int id) const { return mips_[id]; }
  size_t size() const { return mips_.size(); }
  const std::vector<int>& of_proc(int proc) const { return by_proc_[proc]; }
  const std::vector<int>& starting_at(int e) const { return starts_[e]; }
  const std::vector<int>& ending_at(int e) const { return ends_[e]; }
  const std::vector<int>& containing(int e) const { return contains_[e]; }

  MipsSet ext(int edge, const MipsSet& m) const;
  bool endof(const MipsSet& m, int edge) const;
  MipsSet cpo(int edge, int mu) const;
  MipsSet cso(int edge, int mu) const;
  bool all_satisfy_p(const MipsSet& m) const;
  std::vector<int> end_edges(const MipsSet& m) const;  // ascending, unique

  // Detection artifacts, kept for reporting.
  Step1Result step1;
  Step2Result step2;

 private:
  std::vector<Mips> mips_;
  std::vector<std::vector<int>> by_proc_;
  std::vector<std::vector<int>> starts_, ends_, contains_;
};

// Runs both steps, applies the minimality filter and assigns ids.
MipsUniverse detect_mips(const Program& prog, const CallGraph& cg);

std::string to_string(const MipsSet& m);

}  // namespace fpmfp
