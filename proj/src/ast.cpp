// SPDX-License-Identifier: MIT
#include <algorithm>
#include <sstream>

#include "fpmfp/ir.h"

namespace fpmfp {

RelOp negate(RelOp op) {
  switch (op) {
    case RelOp::Lt: return RelOp::Ge;
    case RelOp::Le: return RelOp::Gt;
    case RelOp::Gt: return RelOp::Le;
    case RelOp::Ge: return RelOp::Lt;
    case RelOp::Eq: return RelOp::Ne;
    case RelOp::Ne: return RelOp::Eq;
  }
  return op;
}

RelOp swap_operands(RelOp op) {
  switch (op) {
    case RelOp::Lt: return RelOp::Gt;
    case RelOp::Le: return RelOp::Ge;
    case RelOp::Gt: return RelOp::Lt;
    case RelOp::Ge: return RelOp::Le;
    default: return op;
  }
}

const char* to_string(RelOp op) {
  switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
    case RelOp::Eq: return "==";
    case RelOp::Ne: return "!=";
  }
  return "?";
}

bool evaluate(RelOp op, const Int& a, const Int& b) {
  switch (op) {
    case RelOp::Lt: return a < b;
    case RelOp::Le: return a <= b;
    case RelOp::Gt: return a > b;
    case RelOp::Ge: return a >= b;
    case RelOp::Eq: return a == b;
    case RelOp::Ne: return a != b;
  }
  return false;
}

const char* to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::None: return "";
    case EdgeLabel::True: return "true";
    case EdgeLabel::False: return "false";
    case EdgeLabel::Case: return "case";
    case EdgeLabel::Default: return "default";
  }
  return "";
}

Expr Expr::constant(Int v) {
  Expr e;
  e.kind = Kind::Const;
  e.value = std::move(v);
  return e;
}

Expr Expr::variable(int v) {
  Expr e;
  e.kind = Kind::Var;
  e.var = v;
  return e;
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
  Expr e;
  e.kind = k;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

Expr Expr::negation(Expr a) {
  Expr e;
  e.kind = Kind::Neg;
  e.args.push_back(std::move(a));
  return e;
}

bool Expr::is_constant() const {
  if (kind == Kind::Var) return false;
  return std::all_of(args.begin(), args.end(), [](const Expr& a) { return a.is_constant(); });
}

bool Expr::operator==(const Expr& o) const {
  return kind == o.kind && value == o.value && var == o.var && args == o.args;
}

bool Cond::operator==(const Cond& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Nondet: return true;
    case Kind::Truthy: return lhs == o.lhs;
    case Kind::Compare:
      return lhs == o.lhs && op == o.op && rhs_is_var == o.rhs_is_var &&
             (rhs_is_var ? rhs_var == o.rhs_var : rhs_const == o.rhs_const);
    case Kind::Opaque:
      return opaque && o.opaque && *opaque == *o.opaque;
  }
  return false;
}

bool BoolExpr::operator==(const BoolExpr& o) const {
  return kind == o.kind && (kind != Kind::Atom || atom == o.atom) && args == o.args;
}

bool Statement::operator==(const Statement& o) const {
  return kind == o.kind && var == o.var && expr == o.expr && cond == o.cond &&
         assertion == o.assertion && callee == o.callee && cases == o.cases;
}

FrontendError::FrontendError(Kind kind, int line, int col, const std::string& msg)
    : std::runtime_error(msg), kind_(kind), line_(line), col_(col) {}

int Program::find_proc(const std::string& name) const {
  for (const auto& p : procs)
    if (p.name == name) return p.id;
  return -1;
}

int Program::find_var(int proc, const std::string& name) const {
  if (proc >= 0) {
    for (int v : procs[proc].locals)
      if (vars[v].name == name) return v;
  }
  for (int g : globals)
    if (vars[g].name == name) return g;
  return -1;
}

std::vector<int> Program::scope(int proc) const {
  std::vector<int> out = globals;
  if (proc >= 0) out.insert(out.end(), procs[proc].locals.begin(), procs[proc].locals.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void print_expr(const Program& prog, const Expr& e, std::ostream& os) {
  switch (e.kind) {
    case Expr::Kind::Const: os << e.value; break;
    case Expr::Kind::Var: os << prog.vars[e.var].name; break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      print_expr(prog, e.args[0], os);
      os << (e.kind == Expr::Kind::Add ? " + " : " - ");
      const Expr& r = e.args[1];
      bool paren = r.kind == Expr::Kind::Add || r.kind == Expr::Kind::Sub ||
                   (r.kind == Expr::Kind::Const && r.value < 0);
      if (paren) os << '(';
      print_expr(prog, r, os);
      if (paren) os << ')';
      break;
    }
    case Expr::Kind::Neg: {
      const Expr& a = e.args[0];
      bool paren = a.kind != Expr::Kind::Var;
      os << '-';
      if (paren) os << '(';
      print_expr(prog, a, os);
      if (paren) os << ')';
      break;
    }
  }
}

void print_cond(const Program& prog, const Cond& c, std::ostream& os);

void print_bool(const Program& prog, const BoolExpr& b, std::ostream& os) {
  switch (b.kind) {
    case BoolExpr::Kind::Atom: print_cond(prog, b.atom, os); break;
    case BoolExpr::Kind::Not:
      os << "!(";
      print_bool(prog, b.args[0], os);
      os << ')';
      break;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      const char* sep = b.kind == BoolExpr::Kind::And ? " && " : " || ";
      for (size_t i = 0; i < b.args.size(); ++i) {
        if (i) os << sep;
        bool paren = b.args[i].kind == BoolExpr::Kind::And || b.args[i].kind == BoolExpr::Kind::Or;
        if (paren) os << '(';
        print_bool(prog, b.args[i], os);
        if (paren) os << ')';
      }
      break;
    }
  }
}

void print_cond(const Program& prog, const Cond& c, std::ostream& os) {
  switch (c.kind) {
    case Cond::Kind::Nondet: os << '*'; break;
    case Cond::Kind::Truthy: os << prog.vars[c.lhs].name; break;
    case Cond::Kind::Compare:
      os << prog.vars[c.lhs].name << ' ' << to_string(c.op) << ' ';
      if (c.rhs_is_var)
        os << prog.vars[c.rhs_var].name;
      else
        os << c.rhs_const;
      break;
    case Cond::Kind::Opaque: print_bool(prog, *c.opaque, os); break;
  }
}

void print_block(const Program& prog, const std::vector<AstStmt>& body, int depth,
                 std::ostream& os);

void print_stmt(const Program& prog, const AstStmt& s, int depth, std::ostream& os) {
  std::string ind(static_cast<size_t>(depth) * 2, ' ');
  os << ind;
  switch (s.kind) {
    case AstStmt::Kind::Assign:
      os << prog.vars[s.var].name << " = ";
      print_expr(prog, s.expr, os);
      os << ";\n";
      break;
    case AstStmt::Kind::Read: os << "read " << prog.vars[s.var].name << ";\n"; break;
    case AstStmt::Kind::Print:
      os << "print ";
      print_expr(prog, s.expr, os);
      os << ";\n";
      break;
    case AstStmt::Kind::Assert:
      os << "assert(";
      print_bool(prog, s.cond, os);
      os << ");\n";
      break;
    case AstStmt::Kind::Call: os << prog.procs[s.callee].name << "();\n"; break;
    case AstStmt::Kind::Skip: os << "skip;\n"; break;
    case AstStmt::Kind::If:
      if (s.atomic) os << "@atomic_cond ";
      os << "if (";
      print_bool(prog, s.cond, os);
      os << ") ";
      print_block(prog, s.then_body, depth, os);
      if (s.has_else) {
        os << " else ";
        print_block(prog, s.else_body, depth, os);
      }
      os << '\n';
      break;
    case AstStmt::Kind::While:
      if (s.atomic) os << "@atomic_cond ";
      os << "while (";
      print_bool(prog, s.cond, os);
      os << ") ";
      print_block(prog, s.then_body, depth, os);
      os << '\n';
      break;
    case AstStmt::Kind::Switch:
      os << "switch (" << prog.vars[s.var].name << ") {\n";
      for (const auto& [k, body] : s.cases) {
        os << ind << "  case " << k << ": ";
        print_block(prog, body, depth + 1, os);
        os << '\n';
      }
      os << ind << "  default: ";
      print_block(prog, s.default_body, depth + 1, os);
      os << '\n' << ind << "}\n";
      break;
  }
}

void print_block(const Program& prog, const std::vector<AstStmt>& body, int depth,
                 std::ostream& os) {
  os << "{\n";
  for (const auto& s : body) print_stmt(prog, s, depth + 1, os);
  os << std::string(static_cast<size_t>(depth) * 2, ' ') << '}';
}

}  // namespace

std::string to_string(const Program& prog, const Expr& e) {
  std::ostringstream os;
  print_expr(prog, e, os);
  return os.str();
}

std::string to_string(const Program& prog, const Cond& c) {
  std::ostringstream os;
  print_cond(prog, c, os);
  return os.str();
}

std::string to_string(const Program& prog, const BoolExpr& b) {
  std::ostringstream os;
  print_bool(prog, b, os);
  return os.str();
}

std::string describe(const Program& prog, const Node& n) {
  const Statement& s = n.stmt;
  switch (s.kind) {
    case Statement::Kind::Start: return "start " + prog.procs[n.proc].name;
    case Statement::Kind::Exit: return "exit";
    case Statement::Kind::Assign: return prog.vars[s.var].name + " = " + to_string(prog, s.expr);
    case Statement::Kind::Read: return "read " + prog.vars[s.var].name;
    case Statement::Kind::Print: return "print " + to_string(prog, s.expr);
    case Statement::Kind::Assert: return "assert(" + to_string(prog, s.assertion) + ")";
    case Statement::Kind::Branch: return "if (" + to_string(prog, s.cond) + ")";
    case Statement::Kind::Switch: return "switch (" + prog.vars[s.var].name + ")";
    case Statement::Kind::Call: return prog.procs[s.callee].name + "()";
    case Statement::Kind::Skip: return "skip";
  }
  return "";
}

Int evaluate(const Expr& e, const std::vector<Int>& env) {
  switch (e.kind) {
    case Expr::Kind::Const: return e.value;
    case Expr::Kind::Var: return env.at(e.var);
    case Expr::Kind::Add: return evaluate(e.args[0], env) + evaluate(e.args[1], env);
    case Expr::Kind::Sub: return evaluate(e.args[0], env) - evaluate(e.args[1], env);
    case Expr::Kind::Neg: return -evaluate(e.args[0], env);
  }
  return 0;
}

void collect_vars(const Expr& e, std::vector<int>& out) {
  if (e.kind == Expr::Kind::Var) out.push_back(e.var);
  for (const auto& a : e.args) collect_vars(a, out);
}

namespace {
void collect_cond_vars(const Cond& c, std::vector<int>& out) {
  if (c.kind == Cond::Kind::Compare || c.kind == Cond::Kind::Truthy) out.push_back(c.lhs);
  if (c.kind == Cond::Kind::Compare && c.rhs_is_var) out.push_back(c.rhs_var);
  if (c.kind == Cond::Kind::Opaque) collect_vars(*c.opaque, out);
}
}  // namespace

void collect_vars(const BoolExpr& b, std::vector<int>& out) {
  if (b.kind == BoolExpr::Kind::Atom) collect_cond_vars(b.atom, out);
  for (const auto& a : b.args) collect_vars(a, out);
}

std::vector<int> used_vars(const Node& n) {
  std::vector<int> out;
  const Statement& s = n.stmt;
  switch (s.kind) {
    case Statement::Kind::Assign:
    case Statement::Kind::Print: collect_vars(s.expr, out); break;
    case Statement::Kind::Assert: collect_vars(s.assertion, out); break;
    case Statement::Kind::Branch: collect_cond_vars(s.cond, out); break;
    case Statement::Kind::Switch: out.push_back(s.var); break;
    default: break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int defined_var(const Node& n) {
  if (n.stmt.kind == Statement::Kind::Assign || n.stmt.kind == Statement::Kind::Read)
    return n.stmt.var;
  return -1;
}

std::string pretty_print(const Program& prog) {
  std::ostringstream os;
  for (int g : prog.globals) os << "global " << prog.vars[g].name << ";\n";
  for (const auto& p : prog.procs) {
    if (p.is_extern) {
      os << "extern proc " << p.name << "();\n";
      continue;
    }
    if (p.id == prog.entry && p.id != 0) os << "entry ";
    os << "proc " << p.name << '(';
    for (size_t i = 0; i < p.params.size(); ++i) {
      if (i) os << ", ";
      os << prog.vars[p.params[i]].name;
    }
    os << ") ";
    print_block(prog, p.body, 0, os);
    os << '\n';
  }
  return os.str();
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.entry != b.entry || a.procs.size() != b.procs.size() ||
      a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size() ||
      a.vars.size() != b.vars.size() || a.globals != b.globals)
    return false;
  for (size_t i = 0; i < a.vars.size(); ++i)
    if (a.vars[i].name != b.vars[i].name || a.vars[i].owner != b.vars[i].owner) return false;
  for (size_t i = 0; i < a.procs.size(); ++i) {
    const auto& p = a.procs[i];
    const auto& q = b.procs[i];
    if (p.name != q.name || p.is_extern != q.is_extern || p.params != q.params ||
        p.start != q.start || p.exit != q.exit || p.nodes != q.nodes || p.edges != q.edges)
      return false;
  }
  for (size_t i = 0; i < a.nodes.size(); ++i)
    if (a.nodes[i].proc != b.nodes[i].proc || !(a.nodes[i].stmt == b.nodes[i].stmt)) return false;
  for (size_t i = 0; i < a.edges.size(); ++i) {
    const auto& e = a.edges[i];
    const auto& f = b.edges[i];
    if (e.src != f.src || e.dst != f.dst || e.label != f.label || e.case_value != f.case_value)
      return false;
  }
  return true;
}

}  // namespace fpmfp
