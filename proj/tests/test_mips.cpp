// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <random>

#include "fixtures.h"
#include "fpmfp/mips.h"

using namespace fpmfp;
using fixtures::load;
using fixtures::fig_edge;
using fixtures::fig_mips;

namespace {

Query query_for(const Program& prog, int origin) {
  auto c = edge_constraint(prog, prog.edges[origin]);
  EXPECT_TRUE(c.has_value());
  return Query{origin, *c};
}

}  // namespace

TEST(Step1, Fig12Answers) {
  auto l = load("fig12");
  const auto& s1 = l.u.step1;
  int q8 = fig_edge("fig12", 8), q9 = fig_edge("fig12", 9);
  // The figure's n1 declares a and b together; our a = 0 is its own node,
  // so the figure's e1 answers are stored on the edge leaving a = 0 (e1).
  EXPECT_EQ(s1.answer(1, q8), Answer::False);
  EXPECT_EQ(s1.answer(1, q9), Answer::True);
  EXPECT_EQ(s1.answer(fig_edge("fig12", 5), q8), Answer::Undef);
  EXPECT_EQ(s1.answer(fig_edge("fig12", 5), q9), Answer::Undef);
  EXPECT_TRUE(s1.Q.at(fig_edge("fig12", 6)).count(q8));
  EXPECT_TRUE(s1.Q.at(fig_edge("fig12", 3)).count(q9));
}

TEST(Step1, NoConditionals) {
  auto l = fixtures::load_source("proc main() { a = 1; print a; }");
  EXPECT_TRUE(l.u.step1.Q.empty());
  EXPECT_TRUE(l.u.step1.A.empty());
  EXPECT_EQ(l.u.size(), 0u);
}

TEST(Resolve, Fig12Nodes) {
  auto l = load("fig12");
  Query q = query_for(l.prog, fig_edge("fig12", 8));  // (a > 1) == TRUE
  EXPECT_EQ(resolve(l.prog, l.cg, 1, q), Answer::False);                          // a = 0
  EXPECT_EQ(resolve(l.prog, l.cg, fig_edge("fig12", 6), q), Answer::Unresolved);  // print b
  EXPECT_EQ(resolve(l.prog, l.cg, fig_edge("fig12", 8), q), Answer::True);        // a > 1 true edge
  EXPECT_EQ(resolve(l.prog, l.cg, fig_edge("fig12", 5), q), Answer::Undef);       // read a
}

TEST(Resolve, ModifyingCallIsUndef) {
  auto l = fixtures::load_source(
      "global a; proc main() { a = 0; f(); if (a > 5) { print a; } } proc f() { read a; }");
  EXPECT_EQ(l.u.size(), 0u);
  auto k = fixtures::load_source(
      "global a; proc main() { a = 0; f(); if (a > 5) { print a; } } proc f() { print a; }");
  EXPECT_EQ(k.u.size(), 1u);
}

// Truth-table oracle: a branch edge answers a one-variable query TRUE iff
// every value on the edge satisfies it, FALSE iff none does.
TEST(Resolve, BranchCorrelationMatchesTruthTable) {
  const char* ops[] = {"<", "<=", ">", ">=", "==", "!="};
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int o1 = rng() % 6, o2 = rng() % 6, c1 = int(rng() % 7) - 3, c2 = int(rng() % 7) - 3;
    bool take_true = rng() % 2;
    std::string src = "proc main(x) { if (x " + std::string(ops[o1]) + " " + std::to_string(c1) +
                      ") { skip; } print x; if (x " + ops[o2] + " " + std::to_string(c2) +
                      ") { print x; } }";
    Program p = parse_program(src);
    CallGraph cg = build_call_graph(p);
    // Edges: e0 start, e1/e2 first branch, e3 skip->print, e4 print->if2, e5 true of if2.
    int first = take_true ? 1 : 2;
    Query q = query_for(p, 5);
    // RelOp enumerators follow the order of ops[].
    auto holds = [](int op, int x, int c) { return evaluate(static_cast<RelOp>(op), Int(x), Int(c)); };
    bool all = true, none = true;
    for (int x = -20; x <= 20; ++x) {
      if (holds(o1, x, c1) != take_true) continue;
      bool h = holds(o2, x, c2);
      all = all && h;
      none = none && !h;
    }
    Answer want = all ? Answer::True : none ? Answer::False : Answer::Unresolved;
    EXPECT_EQ(resolve(p, cg, first, q), want) << src << (take_true ? " true" : " false");
  }
}

TEST(Step2, Fig12Roles) {
  auto l = load("fig12");
  ASSERT_EQ(l.u.size(), 1u);
  std::vector<int> want = {fig_edge("fig12", 3), fig_edge("fig12", 6), fig_edge("fig12", 7),
                           fig_edge("fig12", 8)};
  const Mips& m = l.u.get(0);
  EXPECT_EQ(m.edges, want);
  int q = fig_edge("fig12", 8);
  const auto& s2 = l.u.step2;
  EXPECT_TRUE(s2.start.at(want[0]).count(q));
  EXPECT_TRUE(s2.inner.at(want[1]).count(q));
  EXPECT_TRUE(s2.inner.at(want[2]).count(q));
  EXPECT_TRUE(s2.end.at(want[3]).count(q));
  // Hoisting un-marks the start on the edge where the query resolved.
  EXPECT_FALSE(s2.start.count(1) && s2.start.at(1).count(q));
  EXPECT_TRUE(m.satisfies_p);
}

TEST(Step2, Fig3Roles) {
  auto l = load("fig3");
  ASSERT_EQ(l.u.size(), 1u);
  int id = fig_mips("fig3", l, {1, 3, 4});
  ASSERT_GE(id, 0);
  const Mips& m = l.u.get(id);
  EXPECT_EQ(m.start(), fig_edge("fig3", 1));
  EXPECT_EQ(m.end(), fig_edge("fig3", 4));
  EXPECT_EQ(m.position(fig_edge("fig3", 3)), 1);
}

TEST(Step2, BalancedCrossesCall) {
  auto l = load("balanced");
  ASSERT_EQ(l.u.size(), 1u);
  EXPECT_GE(fig_mips("balanced", l, {2, 3, 4, 5}), 0);
  int z = l.prog.find_proc("z");
  for (int e : l.prog.procs[z].edges) EXPECT_TRUE(l.u.containing(e).empty());
}

TEST(Step2, LoopRunsAtLeastOnce) {
  auto l = load("stripcc_like");
  ASSERT_EQ(l.u.size(), 1u);
  const Mips& m = l.u.get(0);
  EXPECT_EQ(m.edges.size(), 2u);
  EXPECT_EQ(l.prog.edges[m.end()].label, EdgeLabel::False);
}

TEST(Step2, DistinctMipsPerQuery) {
  auto l = load("fig4");
  EXPECT_EQ(l.u.size(), 2u);
  EXPECT_GE(fig_mips("fig4", l, {3, 4, 5}), 0);
  EXPECT_GE(fig_mips("fig4", l, {3, 4, 8}), 0);
}

TEST(Universe, Fig4CpoExtEndof) {
  auto l = load("fig4");
  int m1 = fig_mips("fig4", l, {3, 4, 5}), m2 = fig_mips("fig4", l, {3, 4, 8});
  MipsSet both = {std::min(m1, m2), std::max(m1, m2)};
  auto e = [](int k) { return fig_edge("fig4", k); };
  EXPECT_EQ(l.u.cpo(e(3), m1), both);
  EXPECT_EQ(l.u.cpo(e(4), m1), both);
  EXPECT_EQ(l.u.cpo(e(5), m1), MipsSet{m1});
  EXPECT_EQ(l.u.ext(e(3), {}), both);
  EXPECT_EQ(l.u.ext(e(8), both), MipsSet{m2});
  EXPECT_EQ(l.u.ext(e(1), {}), MipsSet{});
  EXPECT_TRUE(l.u.endof(both, e(5)));
  EXPECT_FALSE(l.u.endof(both, e(4)));
  EXPECT_FALSE(l.u.endof({}, e(5)));
  EXPECT_THROW(l.u.cpo(e(1), m1), EdgeNotInMips);
  EXPECT_THROW(l.u.cso(e(1), m1), EdgeNotInMips);
}

TEST(Universe, IsolatedCpoIsReflexive) {
  auto l = load("fig2");
  ASSERT_EQ(l.u.size(), 1u);
  EXPECT_EQ(l.u.cpo(l.u.get(0).start(), 0), MipsSet{0});
  EXPECT_EQ(l.u.cso(l.u.get(0).end(), 0), MipsSet{0});
}

TEST(Universe, Fig10Cso) {
  auto l = load("fig10");
  int m1 = fig_mips("fig10", l, {3, 5, 6, 7}), m2 = fig_mips("fig10", l, {4, 5, 6});
  ASSERT_GE(m1, 0);
  ASSERT_GE(m2, 0);
  for (int k : {5, 6}) {
    MipsSet c = l.u.cso(fig_edge("fig10", k), m1);
    EXPECT_TRUE(std::count(c.begin(), c.end(), m2)) << "e" << k;
    MipsSet r = l.u.cso(fig_edge("fig10", k), m2);
    EXPECT_FALSE(std::count(r.begin(), r.end(), m1)) << "e" << k;
  }
}

TEST(Universe, Fig11NoCso) {
  auto l = load("fig11");
  int m1 = fig_mips("fig11", l, {2, 4, 7}), m2 = fig_mips("fig11", l, {3, 4, 5});
  ASSERT_GE(m1, 0);
  ASSERT_GE(m2, 0);
  EXPECT_EQ(l.u.cso(fig_edge("fig11", 4), m1), MipsSet{m1});
  EXPECT_EQ(l.u.cso(fig_edge("fig11", 4), m2), MipsSet{m2});
}

TEST(Universe, IdsAreOrdered) {
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    for (size_t i = 1; i < l.u.size(); ++i) {
      const Mips& a = l.u.get(int(i) - 1);
      const Mips& b = l.u.get(int(i));
      EXPECT_LE(std::make_tuple(a.proc, a.end(), a.start(), a.edges),
                std::make_tuple(b.proc, b.end(), b.start(), b.edges))
          << name;
    }
  }
}
