// SPDX-License-Identifier: MIT
// MiniIR: syntax tree, per-procedure control flow graphs, program container.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpmfp {

using Int = boost::multiprecision::cpp_int;

enum class RelOp { Lt, Le, Gt, Ge, Eq, Ne };

RelOp negate(RelOp op);
// Operator obtained by exchanging the operands: a op b <=> b swap(op) a.
RelOp swap_operands(RelOp op);
const char* to_string(RelOp op);
bool evaluate(RelOp op, const Int& a, const Int& b);

struct Expr {
  enum class Kind { Const, Var, Add, Sub, Neg };
  Kind kind = Kind::Const;
  Int value;
  int var = -1;
  std::vector<Expr> args;

  static Expr constant(Int v);
  static Expr variable(int v);
  static Expr binary(Kind k, Expr a, Expr b);
  static Expr negation(Expr a);

  bool is_constant() const;  // no variable occurs
  bool operator==(const Expr& o) const;
};

struct BoolExpr;

// Condition carried by a single branch node.
struct Cond {
  enum class Kind { Compare, Truthy, Nondet, Opaque };
  Kind kind = Kind::Nondet;
  int lhs = -1;
  RelOp op = RelOp::Ne;
  bool rhs_is_var = false;
  int rhs_var = -1;
  Int rhs_const;
  // Opaque compound condition; evaluated only by the concrete executor.
  std::shared_ptr<const BoolExpr> opaque;

  bool operator==(const Cond& o) const;
};

struct BoolExpr {
  enum class Kind { Atom, And, Or, Not };
  Kind kind = Kind::Atom;
  Cond atom;
  std::vector<BoolExpr> args;

  bool operator==(const BoolExpr& o) const;
};

struct AstStmt {
  enum class Kind { Assign, Read, Print, Assert, If, Switch, While, Call, Skip };
  Kind kind = Kind::Skip;
  int line = 0;
  int var = -1;
  Expr expr;
  BoolExpr cond;
  bool atomic = false;
  int callee = -1;
  std::vector<AstStmt> then_body;
  std::vector<AstStmt> else_body;
  bool has_else = false;
  std::vector<std::pair<Int, std::vector<AstStmt>>> cases;
  std::vector<AstStmt> default_body;
};

struct Statement {
  enum class Kind { Start, Exit, Assign, Read, Print, Assert, Branch, Switch, Call, Skip };
  Kind kind = Kind::Skip;
  int var = -1;
  Expr expr;
  Cond cond;
  BoolExpr assertion;
  int callee = -1;
  std::vector<Int> cases;

  bool operator==(const Statement& o) const;
};

enum class EdgeLabel { None, True, False, Case, Default };
const char* to_string(EdgeLabel l);

struct Node {
  int id = -1;
  int proc = -1;
  int line = 0;
  Statement stmt;
  std::vector<int> in;   // edge ids
  std::vector<int> out;  // edge ids, ascending
};

struct Edge {
  int id = -1;
  int src = -1;
  int dst = -1;
  EdgeLabel label = EdgeLabel::None;
  Int case_value;
  bool back = false;  // closes a cycle in the depth-first order from Start
};

struct Variable {
  std::string name;
  int owner = -1;  // procedure id, -1 for globals
};

struct Procedure {
  int id = -1;
  std::string name;
  bool is_extern = false;
  std::vector<int> params;
  std::vector<int> locals;  // includes params
  int start = -1;
  int exit = -1;
  std::vector<int> nodes;  // ascending
  std::vector<int> edges;  // ascending
  std::vector<AstStmt> body;
};

struct Program {
  std::vector<Procedure> procs;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<Variable> vars;
  std::vector<int> globals;
  int entry = -1;

  int find_proc(const std::string& name) const;  // -1 if absent
  // Variable visible as `name` inside proc (local first, then global); -1 if absent.
  int find_var(int proc, const std::string& name) const;
  bool is_global(int var) const { return vars[var].owner < 0; }
  // Globals plus the procedure's locals, ascending.
  std::vector<int> scope(int proc) const;
  // Edges entering the source node of e.
  const std::vector<int>& pred_edges(int e) const { return nodes[edges[e].src].in; }
};

class FrontendError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnresolvedCall, UnreachableNode };
  FrontendError(Kind kind, int line, int col, const std::string& msg);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  Kind kind_;
  int line_;
  int col_;
};

// Parses MiniIR text and builds the CFGs. Throws FrontendError.
Program parse_program(const std::string& source);
Program parse_file(const std::string& path);

// Builds nodes and edges from the procedure bodies already stored in prog.
void build_cfgs(Program& prog);

std::string pretty_print(const Program& prog);
// Same procedures, variables, node statements and edge structure.
bool structurally_equal(const Program& a, const Program& b);

std::string to_string(const Program& prog, const Expr& e);
std::string to_string(const Program& prog, const Cond& c);
std::string to_string(const Program& prog, const BoolExpr& b);
std::string describe(const Program& prog, const Node& n);

// Value of e under env (indexed by variable id); constant expressions ignore env.
Int evaluate(const Expr& e, const std::vector<Int>& env);

// Variables read by the node's statement, ascending and unique.
std::vector<int> used_vars(const Node& n);
void collect_vars(const Expr& e, std::vector<int>& out);
void collect_vars(const BoolExpr& b, std::vector<int>& out);
// Variable written by the node's statement, or -1.
int defined_var(const Node& n);

}  // namespace fpmfp
