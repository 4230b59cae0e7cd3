// SPDX-License-Identifier: MIT
// Lowers procedure bodies to CFGs: one statement per node, lexical node order,
// edges ordered by (source, label).
#include <algorithm>
#include <tuple>

#include "fpmfp/ir.h"
#include "fpmfp/mfp.h"

namespace fpmfp {
namespace {

struct Dangling {
  int node;
  EdgeLabel label;
  Int case_value;
  int rank;  // ordering among the out-edges of node
};

struct PendingEdge {
  int src, dst;
  EdgeLabel label;
  Int case_value;
  int rank;
};

class Builder {
 public:
  Builder(Program& prog, int proc) : prog_(prog), proc_(proc) {}

  void run() {
    Procedure& p = prog_.procs[proc_];
    Statement start;
    start.kind = Statement::Kind::Start;
    p.start = new_node(start, 0);
    std::vector<Dangling> open = {{p.start, EdgeLabel::None, 0, 4}};
    open = block(p.body, std::move(open));
    Statement exit;
    exit.kind = Statement::Kind::Exit;
    p.exit = new_node(exit, 0);
    connect(open, p.exit);
  }

  std::vector<PendingEdge> edges;

 private:
  int new_node(Statement s, int line) {
    Node n;
    n.id = static_cast<int>(prog_.nodes.size());
    n.proc = proc_;
    n.line = line;
    n.stmt = std::move(s);
    prog_.nodes.push_back(std::move(n));
    prog_.procs[proc_].nodes.push_back(prog_.nodes.back().id);
    return prog_.nodes.back().id;
  }

  void connect(const std::vector<Dangling>& open, int dst) {
    for (const auto& d : open) edges.push_back({d.node, dst, d.label, d.case_value, d.rank});
  }

  std::vector<Dangling> block(const std::vector<AstStmt>& body, std::vector<Dangling> open) {
    for (const auto& s : body) open = stmt(s, std::move(open));
    return open;
  }

  std::vector<Dangling> simple(Statement s, int line, std::vector<Dangling> open) {
    int n = new_node(std::move(s), line);
    connect(open, n);
    return {{n, EdgeLabel::None, 0, 4}};
  }

  // Lowers a condition to branch nodes; returns (true exits, false exits).
  std::pair<std::vector<Dangling>, std::vector<Dangling>> cond(const BoolExpr& b, bool atomic,
                                                               int line,
                                                               std::vector<Dangling> open) {
    bool compound = b.kind == BoolExpr::Kind::And || b.kind == BoolExpr::Kind::Or;
    if (b.kind == BoolExpr::Kind::Atom || (atomic && compound)) {
      Statement s;
      s.kind = Statement::Kind::Branch;
      if (b.kind == BoolExpr::Kind::Atom) {
        s.cond = b.atom;
      } else {
        s.cond.kind = Cond::Kind::Opaque;
        s.cond.opaque = std::make_shared<const BoolExpr>(b);
      }
      int n = new_node(std::move(s), line);
      connect(open, n);
      return {{{n, EdgeLabel::True, 0, 0}}, {{n, EdgeLabel::False, 0, 1}}};
    }
    if (b.kind == BoolExpr::Kind::Not) {
      auto [t, f] = cond(b.args[0], atomic, line, std::move(open));
      return {std::move(f), std::move(t)};
    }
    std::vector<Dangling> t_all, f_all;
    for (size_t i = 0; i < b.args.size(); ++i) {
      bool last = i + 1 == b.args.size();
      auto [t, f] = cond(b.args[i], atomic, line, std::move(open));
      if (b.kind == BoolExpr::Kind::And) {
        f_all.insert(f_all.end(), f.begin(), f.end());
        if (last) t_all = std::move(t);
        else open = std::move(t);
      } else {
        t_all.insert(t_all.end(), t.begin(), t.end());
        if (last) f_all = std::move(f);
        else open = std::move(f);
      }
    }
    return {std::move(t_all), std::move(f_all)};
  }

  std::vector<Dangling> stmt(const AstStmt& s, std::vector<Dangling> open) {
    Statement st;
    switch (s.kind) {
      case AstStmt::Kind::Assign:
        st.kind = Statement::Kind::Assign;
        st.var = s.var;
        st.expr = s.expr;
        return simple(std::move(st), s.line, std::move(open));
      case AstStmt::Kind::Read:
        st.kind = Statement::Kind::Read;
        st.var = s.var;
        return simple(std::move(st), s.line, std::move(open));
      case AstStmt::Kind::Print:
        st.kind = Statement::Kind::Print;
        st.expr = s.expr;
        return simple(std::move(st), s.line, std::move(open));
      case AstStmt::Kind::Assert:
        st.kind = Statement::Kind::Assert;
        st.assertion = s.cond;
        return simple(std::move(st), s.line, std::move(open));
      case AstStmt::Kind::Call:
        st.kind = Statement::Kind::Call;
        st.callee = s.callee;
        return simple(std::move(st), s.line, std::move(open));
      case AstStmt::Kind::Skip:
        st.kind = Statement::Kind::Skip;
        return simple(std::move(st), s.line, std::move(open));
      case AstStmt::Kind::If: {
        auto [t, f] = cond(s.cond, s.atomic, s.line, std::move(open));
        std::vector<Dangling> out = block(s.then_body, std::move(t));
        std::vector<Dangling> els = block(s.else_body, std::move(f));
        out.insert(out.end(), els.begin(), els.end());
        return out;
      }
      case AstStmt::Kind::While: {
        int head = static_cast<int>(prog_.nodes.size());
        auto [t, f] = cond(s.cond, s.atomic, s.line, std::move(open));
        connect(block(s.then_body, std::move(t)), head);
        return std::move(f);
      }
      case AstStmt::Kind::Switch: {
        st.kind = Statement::Kind::Switch;
        st.var = s.var;
        for (const auto& c : s.cases) st.cases.push_back(c.first);
        int n = new_node(std::move(st), s.line);
        connect(open, n);
        std::vector<Dangling> out;
        int rank = 2;
        for (const auto& [k, body] : s.cases) {
          auto o = block(body, {{n, EdgeLabel::Case, k, rank++}});
          out.insert(out.end(), o.begin(), o.end());
        }
        auto o = block(s.default_body, {{n, EdgeLabel::Default, 0, rank}});
        out.insert(out.end(), o.begin(), o.end());
        return out;
      }
    }
    return open;
  }

  Program& prog_;
  int proc_;
};

void mark_back_edges(Program& prog, const Procedure& p) {
  enum Color { White, Grey, Black };
  std::vector<Color> color(prog.nodes.size(), White);
  std::vector<std::pair<int, size_t>> stack = {{p.start, 0}};
  color[p.start] = Grey;
  while (!stack.empty()) {
    auto& [n, i] = stack.back();
    if (i == prog.nodes[n].out.size()) {
      color[n] = Black;
      stack.pop_back();
      continue;
    }
    Edge& e = prog.edges[prog.nodes[n].out[i++]];
    if (color[e.dst] == Grey) {
      e.back = true;
    } else if (color[e.dst] == White) {
      color[e.dst] = Grey;
      stack.push_back({e.dst, 0});
    }
  }
  for (int n : p.nodes) {
    if (color[n] == White)
      throw FrontendError(FrontendError::Kind::UnreachableNode, prog.nodes[n].line, 0,
                          "node n" + std::to_string(n) + " is unreachable from start");
  }
}

}  // namespace

void build_cfgs(Program& prog) {
  prog.nodes.clear();
  prog.edges.clear();
  for (auto& p : prog.procs) {
    p.nodes.clear();
    p.edges.clear();
    if (p.is_extern) continue;
    Builder b(prog, p.id);
    b.run();
    auto& pend = b.edges;
    std::stable_sort(pend.begin(), pend.end(), [](const PendingEdge& a, const PendingEdge& b) {
      return std::tie(a.src, a.rank) < std::tie(b.src, b.rank);
    });
    for (auto& pe : pend) {
      Edge e;
      e.id = static_cast<int>(prog.edges.size());
      e.src = pe.src;
      e.dst = pe.dst;
      e.label = pe.label;
      e.case_value = pe.case_value;
      prog.nodes[e.src].out.push_back(e.id);
      prog.nodes[e.dst].in.push_back(e.id);
      p.edges.push_back(e.id);
      prog.edges.push_back(std::move(e));
    }
    mark_back_edges(prog, p);
  }
}

std::vector<int> reverse_post_order(const Program& prog, int proc) {
  const Procedure& p = prog.procs[proc];
  std::vector<int> post;
  std::vector<bool> seen(prog.nodes.size(), false);
  std::vector<std::pair<int, size_t>> stack = {{p.start, 0}};
  seen[p.start] = true;
  while (!stack.empty()) {
    auto& [n, i] = stack.back();
    if (i == prog.nodes[n].out.size()) {
      post.push_back(n);
      stack.pop_back();
      continue;
    }
    int d = prog.edges[prog.nodes[n].out[i++]].dst;
    if (!seen[d]) {
      seen[d] = true;
      stack.push_back({d, 0});
    }
  }
  return {post.rbegin(), post.rend()};
}

}  // namespace fpmfp
