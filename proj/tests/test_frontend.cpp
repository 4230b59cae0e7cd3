// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.h"
#include "fpmfp/dot.h"
#include "fpmfp/report.h"

using namespace fpmfp;
using fixtures::load;

namespace {

std::vector<std::pair<int, int>> endpoints(const Program& p) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : p.edges) out.emplace_back(e.src, e.dst);
  return out;
}

}  // namespace

TEST(Frontend, Fig2MatchesFigureNumbering) {
  auto l = load("fig2");
  const Program& p = l.prog;
  // n0 and e0 are our Start node and its edge; the rest carry the figure's ids.
  ASSERT_EQ(p.nodes.size(), 8u);
  ASSERT_EQ(p.edges.size(), 9u);
  EXPECT_EQ(p.nodes[0].stmt.kind, Statement::Kind::Start);
  EXPECT_EQ(describe(p, p.nodes[1]), "a = 0");
  EXPECT_EQ(describe(p, p.nodes[2]), "if (x >= 0)");
  EXPECT_EQ(describe(p, p.nodes[3]), "a = a + 5");
  EXPECT_EQ(describe(p, p.nodes[6]), "assert(a != 0)");
  EXPECT_EQ(p.nodes[7].stmt.kind, Statement::Kind::Exit);
  std::vector<std::pair<int, int>> want = {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 4},
                                           {4, 5}, {5, 6}, {5, 7}, {6, 7}};
  EXPECT_EQ(endpoints(p), want);
  EXPECT_EQ(p.edges[2].label, EdgeLabel::True);
  EXPECT_EQ(p.edges[3].label, EdgeLabel::False);
}

TEST(Frontend, EmptyBody) {
  Program p = parse_program("proc main() {}");
  ASSERT_EQ(p.nodes.size(), 2u);
  ASSERT_EQ(p.edges.size(), 1u);
  EXPECT_EQ(p.edges[0].src, p.procs[0].start);
  EXPECT_EQ(p.edges[0].dst, p.procs[0].exit);
}

TEST(Frontend, UnresolvedCall) {
  try {
    parse_program("proc main() { nothere(); }");
    FAIL() << "expected FrontendError";
  } catch (const FrontendError& e) {
    EXPECT_EQ(e.kind(), FrontendError::Kind::UnresolvedCall);
  }
}

TEST(Frontend, SyntaxErrorCarriesPosition) {
  try {
    parse_program("proc main() {\n  a = ;\n}");
    FAIL() << "expected FrontendError";
  } catch (const FrontendError& e) {
    EXPECT_EQ(e.kind(), FrontendError::Kind::Syntax);
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Frontend, SwitchNeedsDefault) {
  EXPECT_THROW(parse_program("proc main(c) { switch (c) { case 1: { skip; } } }"), FrontendError);
}

TEST(Frontend, CompoundConditionsAreSplit) {
  Program p = parse_program("proc main(a, b) { if (a > 0 && b > 0) { print a; } }");
  int branches = 0;
  for (const auto& n : p.nodes) branches += n.stmt.kind == Statement::Kind::Branch;
  EXPECT_EQ(branches, 2);
  Program q = parse_program("proc main(a, b) { @atomic_cond if (a > 0 && b > 0) { print a; } }");
  branches = 0;
  for (const auto& n : q.nodes)
    if (n.stmt.kind == Statement::Kind::Branch) {
      ++branches;
      EXPECT_EQ(n.stmt.cond.kind, Cond::Kind::Opaque);
    }
  EXPECT_EQ(branches, 1);
}

TEST(Frontend, ConditionalNodesHaveOneEdgePerLabel) {
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    for (const auto& n : l.prog.nodes) {
      if (n.stmt.kind == Statement::Kind::Branch) {
        ASSERT_EQ(n.out.size(), 2u) << name;
        EXPECT_EQ(l.prog.edges[n.out[0]].label, EdgeLabel::True);
        EXPECT_EQ(l.prog.edges[n.out[1]].label, EdgeLabel::False);
      }
      if (n.stmt.kind == Statement::Kind::Switch) {
        ASSERT_EQ(n.out.size(), n.stmt.cases.size() + 1) << name;
        EXPECT_EQ(l.prog.edges[n.out.back()].label, EdgeLabel::Default);
      }
    }
  }
}

TEST(Frontend, RoundTripAndDeterminism) {
  for (const auto& name : fixtures::all_names()) {
    std::string src = fixtures::read_text(fixtures::path(name));
    Program a = parse_program(src);
    Program b = parse_program(src);
    EXPECT_EQ(endpoints(a), endpoints(b)) << name;
    Program c = parse_program(pretty_print(a));
    EXPECT_TRUE(structurally_equal(a, c)) << name;
  }
}

TEST(Frontend, StartAndExitShape) {
  for (const auto& name : fixtures::all_names()) {
    auto l = load(name);
    for (const auto& p : l.prog.procs) {
      if (p.is_extern) continue;
      EXPECT_TRUE(l.prog.nodes[p.start].in.empty()) << name;
      EXPECT_TRUE(l.prog.nodes[p.exit].out.empty()) << name;
    }
  }
}

TEST(Frontend, LoopsGetOneBackEdge) {
  Program p = parse_program("proc main() { i = 0; while (i < 3) { i = i + 1; } }");
  int back = 0;
  for (const auto& e : p.edges) back += e.back;
  EXPECT_EQ(back, 1);
}

TEST(CallGraph, Fig7Order) {
  auto l = load("fig7");
  int p = l.prog.find_proc("p"), q = l.prog.find_proc("q");
  EXPECT_EQ(l.cg.callees[p], std::vector<int>{q});
  EXPECT_EQ(l.cg.bottom_up(), (std::vector<int>{q, p}));
  EXPECT_EQ(l.cg.top_down(), (std::vector<int>{p, q}));
  EXPECT_FALSE(l.cg.recursive[p]);
}

TEST(CallGraph, SingleProcedure) {
  Program p = parse_program("proc main() { skip; }");
  CallGraph cg = build_call_graph(p);
  EXPECT_TRUE(cg.callees[0].empty());
  EXPECT_EQ(cg.sccs.size(), 1u);
}

TEST(CallGraph, SelfCallIsRecursive) {
  Program p = parse_program("proc main() { if (*) { main(); } }");
  CallGraph cg = build_call_graph(p);
  EXPECT_TRUE(cg.recursive[0]);
}

TEST(Dot, Fig3Golden) {
  auto l = load("fig3");
  std::string got = emit_dot(l.prog, l.prog.entry, mips_annotations(l.prog, l.u));
  std::string want = fixtures::read_text(std::string(FIXTURE_DIR) + "/golden/fig3.dot");
  EXPECT_EQ(got, want);
  EXPECT_NE(got.find("start(µ1)"), std::string::npos);
}

TEST(Dot, EmptyProcedure) {
  Program p = parse_program("proc main() {}");
  std::string dot = emit_dot(p, 0, {});
  EXPECT_NE(dot.find("n0 ->"), std::string::npos);
  size_t nodes = 0;
  for (size_t i = dot.find("[label=\"n"); i != std::string::npos; i = dot.find("[label=\"n", i + 1))
    ++nodes;
  EXPECT_EQ(nodes, 2u);
}
