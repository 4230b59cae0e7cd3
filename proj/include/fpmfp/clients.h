// SPDX-License-Identifier: MIT
// Client reports built from solutions: def-use pairs, possibly-uninitialized
// alarms, and per-node comparison of the two solution modes.
#pragma once

#include <chrono>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "fpmfp/analyses.h"
#include "fpmfp/solve.h"

namespace fpmfp {

struct DefUse {
  int def_node, use_node, var;
  friend bool operator<(const DefUse& a, const DefUse& b) {
    return std::tie(a.use_node, a.var, a.def_node) < std::tie(b.use_node, b.var, b.def_node);
  }
  friend bool operator==(const DefUse& a, const DefUse& b) {
    return a.def_node == b.def_node && a.use_node == b.use_node && a.var == b.var;
  }
};

struct Alarm {
  int node, var;
  friend bool operator<(const Alarm& a, const Alarm& b) {
    return std::tie(a.node, a.var) < std::tie(b.node, b.var);
  }
  friend bool operator==(const Alarm& a, const Alarm& b) { return a.node == b.node && a.var == b.var; }
};

// rd_in: reaching-definition In per node.
std::vector<DefUse> def_use_pairs(const Program& prog, const BitVectorAnalysis& rd,
                                  const std::vector<BitValue>& rd_in);
// md_in: must-defined In per node. Unreached nodes raise nothing.
std::vector<Alarm> uninit_alarms(const Program& prog, const std::vector<BitValue>& md_in);

// (mfp - fpmfp) / mfp as a percentage; 0 when mfp is 0.
double reduction_percent(size_t mfp, size_t fpmfp);

template <class T>
struct ModePair {
  std::vector<T> mfp, fpmfp;
  double reduction() const { return reduction_percent(mfp.size(), fpmfp.size()); }
};

ModePair<DefUse> def_use_report(const Program& prog, const CallGraph& cg, const MipsUniverse& u,
                                OptConfig opts = {});
ModePair<Alarm> uninit_report(const Program& prog, const CallGraph& cg, const MipsUniverse& u,
                              OptConfig opts = {});

class PrecisionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Comparison {
  std::vector<int> improved;    // nodes where FPMFP is strictly more precise
  std::vector<int> violations;  // nodes where MFP is not below FPMFP
  double mfp_ms = 0, fpmfp_ms = 0;
  size_t max_pairs = 0;
  double avg_pairs = 0;
};

template <class A>
Comparison compare_solutions(const Program& prog, const ProgramSolution<A>& mfp,
                             const ProgramSolution<A>& fp) {
  Comparison c;
  for (const auto& n : prog.nodes) {
    const auto& a = mfp.flow.in[n.id];
    const auto& b = fp.flow.in[n.id];
    if (!mfp.analysis.leq(a, b))
      c.violations.push_back(n.id);
    else if (!(a == b))
      c.improved.push_back(n.id);
  }
  for (size_t m : fp.pairs.max_pairs) c.max_pairs = std::max(c.max_pairs, m);
  c.avg_pairs = fp.pairs.average();
  return c;
}

template <class A>
Comparison compare_modes(const Program& prog, const CallGraph& cg, const A& a,
                         const MipsUniverse& u, OptConfig opts = {}) {
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto mfp = solve_program(prog, cg, a, Mode::Mfp, u, opts);
  auto t1 = clock::now();
  auto fp = solve_program(prog, cg, a, Mode::Fpmfp, u, opts);
  auto t2 = clock::now();
  Comparison c = compare_solutions(prog, mfp, fp);
  c.mfp_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  c.fpmfp_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  return c;
}

}  // namespace fpmfp
