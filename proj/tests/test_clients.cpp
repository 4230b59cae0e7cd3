// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.h"
#include "fpmfp/checks.h"
#include "fpmfp/clients.h"
#include "fpmfp/oracle.h"
#include "json.hpp"

using namespace fpmfp;
using fixtures::load;

namespace {

bool single_acyclic(const Program& p) {
  size_t real = 0;
  for (const auto& pr : p.procs) real += !pr.is_extern;
  return real == 1 && is_acyclic(p);
}

// Per-node In from the MIPS-free path meet of the entry procedure.
template <class A>
std::vector<typename A::Value> free_in(const fixtures::Loaded& l, const A& a) {
  return path_meets(l.prog, l.prog.entry, a, a.boundary(l.prog.entry), l.u).free_in;
}

// MFP alarms that no MIPS-free path raises.
std::vector<Alarm> covered_alarms(const fixtures::Loaded& l, const ModePair<Alarm>& r) {
  auto oracle = uninit_alarms(l.prog, free_in(l, BitVectorAnalysis::must_defined(l.prog)));
  std::vector<Alarm> out;
  for (const auto& a : r.mfp)
    if (!std::binary_search(oracle.begin(), oracle.end(), a)) out.push_back(a);
  return out;
}

}  // namespace

TEST(Clients, GoldenCounts) {
  auto golden = nlohmann::json::parse(
      fixtures::read_text(std::string(FIXTURE_DIR) + "/golden/clients.json"));
  ASSERT_EQ(golden.size(), fixtures::all_names().size());
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    auto du = def_use_report(l.prog, l.cg, l.u);
    auto al = uninit_report(l.prog, l.cg, l.u);
    const auto& g = golden.at(name);
    EXPECT_EQ(du.mfp.size(), g["def_use"]["mfp"].get<size_t>()) << name;
    EXPECT_EQ(du.fpmfp.size(), g["def_use"]["fpmfp"].get<size_t>()) << name;
    EXPECT_EQ(al.mfp.size(), g["alarms"]["mfp"].get<size_t>()) << name;
    EXPECT_EQ(al.fpmfp.size(), g["alarms"]["fpmfp"].get<size_t>()) << name;
  }
}

TEST(Clients, FpmfpResultsAreSubsets) {
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    auto du = def_use_report(l.prog, l.cg, l.u);
    EXPECT_TRUE(std::includes(du.mfp.begin(), du.mfp.end(), du.fpmfp.begin(), du.fpmfp.end()))
        << name;
    auto al = uninit_report(l.prog, l.cg, l.u);
    EXPECT_TRUE(std::includes(al.mfp.begin(), al.mfp.end(), al.fpmfp.begin(), al.fpmfp.end()))
        << name;
  }
}

// Bit-vector problems are distributive, so on acyclic single-procedure
// programs FPMFP must equal the MIPS-free path meet exactly.
TEST(Clients, MatchFreePathOracle) {
  size_t checked = 0;
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    if (!single_acyclic(l.prog)) continue;
    ++checked;
    auto rd = BitVectorAnalysis::reaching_definitions(l.prog);
    EXPECT_EQ(def_use_report(l.prog, l.cg, l.u).fpmfp, def_use_pairs(l.prog, rd, free_in(l, rd)))
        << name;
    EXPECT_EQ(uninit_report(l.prog, l.cg, l.u).fpmfp,
              uninit_alarms(l.prog, free_in(l, BitVectorAnalysis::must_defined(l.prog))))
        << name;
  }
  EXPECT_GE(checked, 6u);
}

TEST(Clients, NlkainLikeRemovesEveryCoveredAlarm) {
  auto l = load("nlkain_like");
  auto r = uninit_report(l.prog, l.cg, l.u);
  auto covered = covered_alarms(l, r);
  EXPECT_EQ(covered.size(), 3u);
  EXPECT_TRUE(r.fpmfp.empty());
  EXPECT_DOUBLE_EQ(r.reduction(), 100.0);
}

TEST(Clients, StripccLikeKeepsTheRealAlarm) {
  auto l = load("stripcc_like");
  auto r = uninit_report(l.prog, l.cg, l.u);
  auto covered = covered_alarms(l, r);
  EXPECT_EQ(covered.size(), 2u);
  for (const auto& a : covered) EXPECT_FALSE(std::binary_search(r.fpmfp.begin(), r.fpmfp.end(), a));
  ASSERT_EQ(r.fpmfp.size(), 1u);
  EXPECT_EQ(l.prog.vars[r.fpmfp[0].var].name, "u");
}

TEST(Clients, SphinxLikeDropsADefUsePair) {
  auto l = load("sphinx_like");
  auto r = def_use_report(l.prog, l.cg, l.u);
  ASSERT_EQ(r.mfp.size(), r.fpmfp.size() + 1);
  std::vector<DefUse> gone;
  std::set_difference(r.mfp.begin(), r.mfp.end(), r.fpmfp.begin(), r.fpmfp.end(),
                      std::back_inserter(gone));
  ASSERT_EQ(gone.size(), 1u);
  // x = 2 cannot reach the print guarded by kind == 0.
  EXPECT_EQ(describe(l.prog, l.prog.nodes[gone[0].def_node]), "x = 2");
  EXPECT_EQ(describe(l.prog, l.prog.nodes[gone[0].use_node]), "print x");
}

TEST(Clients, TrivialPrograms) {
  auto l = fixtures::load_source("proc main() {}");
  EXPECT_TRUE(def_use_report(l.prog, l.cg, l.u).mfp.empty());
  EXPECT_TRUE(uninit_report(l.prog, l.cg, l.u).mfp.empty());
  EXPECT_DOUBLE_EQ(reduction_percent(0, 0), 0.0);
  auto k = fixtures::load_source("proc main(p) { print q; print p; }");
  auto r = uninit_report(k.prog, k.cg, k.u);
  ASSERT_EQ(r.mfp.size(), 1u);
  EXPECT_EQ(k.prog.vars[r.mfp[0].var].name, "q");
  EXPECT_EQ(r.mfp, r.fpmfp);
}

TEST(Clients, Fig2ImprovesOnlyInsideTheSegment) {
  auto l = load("fig2");
  auto c = compare_modes(l.prog, l.cg, IntervalAnalysis(l.prog, l.cg), l.u);
  EXPECT_TRUE(c.violations.empty());
  EXPECT_EQ(c.improved, std::vector<int>{6});
}

TEST(Clients, Fig4ImprovesOnlyTheAsserts) {
  auto l = load("fig4");
  auto c = compare_modes(l.prog, l.cg, IntervalAnalysis(l.prog, l.cg), l.u);
  EXPECT_TRUE(c.violations.empty());
  std::vector<int> want = {l.prog.edges[fixtures::fig_edge("fig4", 5)].dst,
                           l.prog.edges[fixtures::fig_edge("fig4", 8)].dst};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(c.improved, want);
}
