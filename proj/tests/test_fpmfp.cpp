// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include "fixtures.h"

using namespace fpmfp;
using fixtures::iv;
using fixtures::iv_hi;
using fixtures::iv_lo;
using fixtures::load;
using fixtures::fig_edge;
using fixtures::pair_value;

namespace {

using Sol = ProgramSolution<IntervalAnalysis>;

Sol interval(const fixtures::Loaded& l, Mode mode, const std::vector<std::string>& track = {},
             OptConfig opts = {}) {
  std::vector<int> ids;
  for (const auto& name : track) ids.push_back(fixtures::var(l.prog, l.prog.procs[l.prog.entry].name, name));
  return solve_program(l.prog, l.cg, IntervalAnalysis(l.prog, l.cg, ids), mode, l.u, opts);
}

Interval edge_of(const fixtures::Loaded& l, const Sol& s, const std::string& fig, int k, int var) {
  return fixtures::at(s.flow.edge[fig_edge(fig, k)], var);
}

std::vector<MipsSet> keys(const Sol& s, int e) {
  std::vector<MipsSet> out;
  for (const auto& [m, d] : s.lifted->edge[e]) out.push_back(m);
  return out;
}

OptConfig opts(bool o1, bool o2) { return {o1, o2, true}; }

}  // namespace

TEST(Fpmfp, Fig2) {
  auto l = load("fig2");
  int a = fixtures::var(l.prog, "main", "a");
  auto fp = interval(l, Mode::Fpmfp);
  auto mf = interval(l, Mode::Mfp);
  EXPECT_EQ(fixtures::at(fp.flow.in[6], a), iv(5, 5));
  EXPECT_EQ(fixtures::at(mf.flow.in[6], a), iv(0, 5));
  // Outside the segment both agree.
  EXPECT_EQ(fixtures::at(fp.flow.in[4], a), iv(0, 5));
}

TEST(Fpmfp, Fig3) {
  auto l = load("fig3");
  int z = fixtures::var(l.prog, "main", "z");
  auto fp = interval(l, Mode::Fpmfp);
  EXPECT_EQ(edge_of(l, fp, "fig3", 4, z), iv_lo(1));
  // At e3 the meet is unchanged; the MIPS pair alone carries z <= 0.
  EXPECT_TRUE(edge_of(l, fp, "fig3", 3, z).is_full());
  int mu = fixtures::fig_mips("fig3", l, {1, 3, 4});
  const auto* p = pair_value(fp, fig_edge("fig3", 3), {mu});
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(fixtures::at(*p, z), iv_hi(0));
  const auto* free = pair_value(fp, fig_edge("fig3", 3), {});
  ASSERT_NE(free, nullptr);
  EXPECT_EQ(fixtures::at(*free, z), iv_lo(1));
}

TEST(Fpmfp, Fig4) {
  auto l = load("fig4");
  int lv = fixtures::var(l.prog, "main", "l");
  auto fp = interval(l, Mode::Fpmfp);
  auto mf = interval(l, Mode::Mfp);
  for (int k : {5, 8}) {
    EXPECT_EQ(edge_of(l, fp, "fig4", k, lv), iv(2, 2)) << "e" << k;
    EXPECT_EQ(edge_of(l, mf, "fig4", k, lv), iv(0, 2)) << "e" << k;
  }
  for (int k : {4, 7}) {
    EXPECT_EQ(edge_of(l, fp, "fig4", k, lv), edge_of(l, mf, "fig4", k, lv)) << "e" << k;
    EXPECT_EQ(edge_of(l, fp, "fig4", k, lv), iv(0, 2)) << "e" << k;
  }
}

TEST(Fpmfp, Fig7AcrossTheCall) {
  auto l = load("fig7");
  int lv = fixtures::var(l.prog, "p", "l");
  auto fp = interval(l, Mode::Fpmfp);
  EXPECT_EQ(edge_of(l, fp, "fig7", 3, lv), iv(2, 2));
  EXPECT_EQ(edge_of(l, fp, "fig7", 4, lv), iv(0, 0));
  EXPECT_EQ(edge_of(l, fp, "fig7", 8, lv), iv(2, 2));
  EXPECT_EQ(edge_of(l, fp, "fig7", 9, lv), iv(0, 0));
  // The call node transfers each pair separately and keeps its key.
  int e4 = fig_edge("fig7", 4);
  EXPECT_EQ(keys(fp, e4), (std::vector<MipsSet>{{}, {0}}));
  EXPECT_EQ(fixtures::at(*pair_value(fp, e4, {0}), lv), iv(0, 0));
}

TEST(Fpmfp, Fig8Opt1) {
  auto l = load("fig8");
  int z = fixtures::var(l.prog, "main", "z");
  auto fp = interval(l, Mode::Fpmfp, {"z"});
  EXPECT_EQ(edge_of(l, fp, "fig8", 9, z), iv(1, 1));
  EXPECT_EQ(edge_of(l, fp, "fig8", 7, z), iv(0, 2));
  int e7 = fig_edge("fig8", 7);
  EXPECT_EQ(fp.lifted->edge[e7].size(), 2u);
  auto off = interval(l, Mode::Fpmfp, {"z"}, opts(false, true));
  EXPECT_EQ(off.lifted->edge[e7].size(), 3u);
  EXPECT_EQ(edge_of(l, off, "fig8", 7, z), iv(0, 2));
  EXPECT_EQ(edge_of(l, off, "fig8", 9, z), iv(1, 1));
}

TEST(Fpmfp, Fig10Opt2) {
  auto l = load("fig10");
  int lv = fixtures::var(l.prog, "main", "l");
  auto on = interval(l, Mode::Fpmfp, {"l"});
  auto off = interval(l, Mode::Fpmfp, {"l"}, opts(true, false));
  EXPECT_EQ(edge_of(l, on, "fig10", 5, lv), iv_lo(0));
  EXPECT_EQ(edge_of(l, on, "fig10", 7, lv), iv_lo(1));
  int m2 = fixtures::fig_mips("fig10", l, {3, 5, 6, 7});
  int m1 = fixtures::fig_mips("fig10", l, {4, 5, 6});
  int e5 = fig_edge("fig10", 5);
  EXPECT_EQ(keys(on, e5), (std::vector<MipsSet>{{}, {m2}}));
  EXPECT_EQ(fixtures::at(*pair_value(on, e5, {m2}), lv), iv(0, 0));
  EXPECT_EQ(fixtures::at(*pair_value(on, e5, {}), lv), iv_lo(1));
  EXPECT_EQ(off.lifted->edge[e5].size(), 3u);
  EXPECT_NE(pair_value(off, e5, {m1}), nullptr);
  for (size_t e = 0; e < l.prog.edges.size(); ++e)
    EXPECT_EQ(on.flow.edge[e], off.flow.edge[e]) << "edge " << e;
}

TEST(Fpmfp, Fig11Opt2NeedsSuffix) {
  auto l = load("fig11");
  auto on = interval(l, Mode::Fpmfp);
  auto off = interval(l, Mode::Fpmfp, {}, opts(true, false));
  for (size_t e = 0; e < l.prog.edges.size(); ++e) {
    EXPECT_EQ(on.flow.edge[e], off.flow.edge[e]) << "edge " << e;
    EXPECT_EQ(keys(on, e), keys(off, e)) << "edge " << e;
  }
}

TEST(Fpmfp, StartEdgeOpensAndEndEdgeBlocks) {
  auto l = load("fig3");
  auto fp = interval(l, Mode::Fpmfp);
  EXPECT_EQ(keys(fp, fig_edge("fig3", 1)), (std::vector<MipsSet>{{0}}));
  EXPECT_EQ(keys(fp, fig_edge("fig3", 2)), (std::vector<MipsSet>{{}}));
  EXPECT_EQ(keys(fp, fig_edge("fig3", 4)), (std::vector<MipsSet>{{}}));
  // Bit vectors carry no branch facts, so only the block removes a path.
  auto rd = solve_program(l.prog, l.cg, BitVectorAnalysis::reaching_definitions(l.prog), Mode::Fpmfp,
                          l.u);
  for (const auto& [m, d] : rd.lifted->edge[fig_edge("fig3", 4)]) EXPECT_TRUE(m.empty());
}

TEST(Fpmfp, EmptyUniverseEqualsMfp) {
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    MipsUniverse none(l.prog, {});
    auto check = [&](const auto& a) {
      auto mf = solve_program(l.prog, l.cg, a, Mode::Mfp, none);
      auto fp = solve_program(l.prog, l.cg, a, Mode::Fpmfp, none);
      for (size_t n = 0; n < l.prog.nodes.size(); ++n)
        EXPECT_TRUE(mf.flow.in[n] == fp.flow.in[n]) << name << " n" << n;
      for (size_t m : fp.pairs.max_pairs) EXPECT_LE(m, 1u) << name;
    };
    check(BitVectorAnalysis::reaching_definitions(l.prog));
    check(BitVectorAnalysis::must_defined(l.prog));
    check(IntervalAnalysis(l.prog, l.cg));
  }
}

TEST(Fpmfp, OptimizationsAreNeutral) {
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    auto check = [&](const auto& a) {
      auto base = solve_program(l.prog, l.cg, a, Mode::Fpmfp, l.u, opts(false, false));
      for (auto o : {opts(true, false), opts(false, true), opts(true, true)}) {
        auto s = solve_program(l.prog, l.cg, a, Mode::Fpmfp, l.u, o);
        for (size_t e = 0; e < l.prog.edges.size(); ++e)
          EXPECT_TRUE(base.flow.edge[e] == s.flow.edge[e]) << name << " e" << e;
      }
    };
    check(BitVectorAnalysis::reaching_definitions(l.prog));
    check(BitVectorAnalysis::must_defined(l.prog));
    check(IntervalAnalysis(l.prog, l.cg));
  }
}

TEST(Fpmfp, PairBound) {
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    auto s = interval(l, Mode::Fpmfp, {}, opts(false, false));
    for (size_t m : s.pairs.max_pairs) EXPECT_LE(m, l.u.size() + 1) << name;
  }
}

TEST(Fpmfp, NeverLessPreciseThanMfp) {
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    auto a = IntervalAnalysis(l.prog, l.cg);
    auto mf = solve_program(l.prog, l.cg, a, Mode::Mfp, l.u);
    auto fp = solve_program(l.prog, l.cg, a, Mode::Fpmfp, l.u);
    for (size_t n = 0; n < l.prog.nodes.size(); ++n)
      EXPECT_TRUE(a.leq(mf.flow.in[n], fp.flow.in[n])) << name << " n" << n;
  }
}
