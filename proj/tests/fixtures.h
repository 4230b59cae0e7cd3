// SPDX-License-Identifier: MIT
// Shared helpers for the test binaries: fixture loading, the hand-made map
// from the figures' edge labels to our edge ids, and value accessors.
#pragma once

#include <string>
#include <vector>

#include "fpmfp/analyses.h"
#include "fpmfp/callgraph.h"
#include "fpmfp/ir.h"
#include "fpmfp/mips.h"
#include "fpmfp/solve.h"

namespace fixtures {

struct Loaded {
  fpmfp::Program prog;
  fpmfp::CallGraph cg;
  fpmfp::MipsUniverse u;
};

std::string path(const std::string& name);  // name without extension
std::string read_text(const std::string& file);
std::vector<std::string> all_names();       // every .mir fixture, sorted
Loaded load(const std::string& name);
Loaded load_source(const std::string& source);

// Our edge id for the figure's label e<k>. Throws for unmapped labels.
int fig_edge(const std::string& fixture, int k);
// MIPS id whose edge list equals the figure's, given as figure labels.
int fig_mips(const std::string& fixture, const Loaded& l, const std::vector<int>& labels);
int mips_with_edges(const fpmfp::MipsUniverse& u, const std::vector<int>& edges);

int var(const fpmfp::Program& prog, const std::string& proc, const std::string& name);
int node_of(const fpmfp::Program& prog, const std::string& proc, const std::string& stmt);

fpmfp::Interval iv(long lo, long hi);
fpmfp::Interval iv_lo(long lo);  // [lo, +inf]
fpmfp::Interval iv_hi(long hi);  // [-inf, hi]

// Interval of variable `v` in env; empty for the artificial top.
fpmfp::Interval at(const fpmfp::IntervalEnv& env, int v);

// Names of the facts set in a bit-vector value, e.g. "a@n1".
std::vector<std::string> facts(const fpmfp::BitVectorAnalysis& a, const fpmfp::BitValue& v);

// Value of key m stored on edge e of a lifted solution, if any.
template <class A>
const typename A::Value* pair_value(const fpmfp::ProgramSolution<A>& s, int e,
                                    const fpmfp::MipsSet& m) {
  const auto& ev = s.lifted->edge[e];
  auto it = ev.find(m);
  return it == ev.end() ? nullptr : &it->second;
}

}  // namespace fixtures
