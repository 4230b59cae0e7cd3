// SPDX-License-Identifier: MIT
// Recursive-descent parser for MiniIR.
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fpmfp/ir.h"

namespace fpmfp {
namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
      size_t j = i + 1;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = c == '@' ? Token::Kind::Punct : Token::Kind::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Int;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      for (const char* p : two) {
        if (src.compare(i, 2, p) == 0) {
          t.text = p;
          break;
        }
      }
      if (std::string("(){};,=<>!+-*:&|").find(c) == std::string::npos)
        throw FrontendError(FrontendError::Kind::Syntax, line, col,
                            "unexpected character '" + std::string(1, c) + "'");
      if ((c == '&' || c == '|') && t.text.size() == 1)
        throw FrontendError(FrontendError::Kind::Syntax, line, col, "expected '&&' or '||'");
      advance(t.text.size());
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

const std::set<std::string> kKeywords = {"proc",   "global", "extern",  "entry", "read",
                                         "print",  "assert", "if",      "else",  "switch",
                                         "case",   "default", "while",  "skip"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run() {
    prescan();
    while (!at_end()) {
      if (accept_ident("global")) {
        do {
          expect_name();
        } while (accept(","));
        expect(";");
      } else if (accept_ident("extern")) {
        expect_keyword("proc");
        expect_name();
        expect("(");
        expect(")");
        expect(";");
      } else {
        accept_ident("entry");
        parse_proc();
      }
    }
    return std::move(prog_);
  }

 private:
  // Collects globals and procedure names so bodies can refer to them in any order.
  void prescan() {
    int entry = -1;
    for (size_t i = 0; i + 1 < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.kind != Token::Kind::Ident) continue;
      if (t.text == "global" && (i == 0 || toks_[i - 1].text == ";" || toks_[i - 1].text == "}")) {
        size_t j = i + 1;
        while (j < toks_.size() && toks_[j].kind == Token::Kind::Ident) {
          if (prog_.find_var(-1, toks_[j].text) >= 0)
            throw FrontendError(FrontendError::Kind::Syntax, toks_[j].line, toks_[j].col,
                                "duplicate global '" + toks_[j].text + "'");
          prog_.vars.push_back({toks_[j].text, -1});
          prog_.globals.push_back(static_cast<int>(prog_.vars.size()) - 1);
          if (toks_[j + 1].text != ",") break;
          j += 2;
        }
      } else if (t.text == "proc" && toks_[i + 1].kind == Token::Kind::Ident) {
        const std::string& name = toks_[i + 1].text;
        if (prog_.find_proc(name) >= 0)
          throw FrontendError(FrontendError::Kind::Syntax, toks_[i + 1].line, toks_[i + 1].col,
                              "duplicate procedure '" + name + "'");
        Procedure p;
        p.id = static_cast<int>(prog_.procs.size());
        p.name = name;
        p.is_extern = i > 0 && toks_[i - 1].text == "extern";
        if (i > 0 && toks_[i - 1].text == "entry") {
          if (entry >= 0)
            throw FrontendError(FrontendError::Kind::Syntax, t.line, t.col,
                                "more than one entry procedure");
          entry = p.id;
        }
        prog_.procs.push_back(std::move(p));
      }
    }
    if (prog_.procs.empty())
      throw FrontendError(FrontendError::Kind::Syntax, 1, 1, "program declares no procedure");
    if (entry < 0) {
      for (const auto& p : prog_.procs) {
        if (!p.is_extern) {
          entry = p.id;
          break;
        }
      }
    }
    if (entry < 0 || prog_.procs[entry].is_extern)
      throw FrontendError(FrontendError::Kind::Syntax, 1, 1, "no procedure with a body");
    prog_.entry = entry;
  }

  void parse_proc() {
    expect_keyword("proc");
    Token name = expect_name();
    proc_ = prog_.find_proc(name.text);
    expect("(");
    if (!peek_is(")")) {
      do {
        Token p = expect_name();
        for (int v : prog_.procs[proc_].params)
          if (prog_.vars[v].name == p.text)
            throw FrontendError(FrontendError::Kind::Syntax, p.line, p.col,
                                "duplicate parameter '" + p.text + "'");
        int v = new_local(p.text);
        prog_.procs[proc_].params.push_back(v);
      } while (accept(","));
    }
    expect(")");
    prog_.procs[proc_].body = parse_block();
    proc_ = -1;
  }

  int new_local(const std::string& name) {
    prog_.vars.push_back({name, proc_});
    int v = static_cast<int>(prog_.vars.size()) - 1;
    prog_.procs[proc_].locals.push_back(v);
    return v;
  }

  int var_ref(const Token& t) {
    if (kKeywords.count(t.text))
      throw FrontendError(FrontendError::Kind::Syntax, t.line, t.col,
                          "keyword '" + t.text + "' used as a variable");
    int v = prog_.find_var(proc_, t.text);
    return v >= 0 ? v : new_local(t.text);
  }

  std::vector<AstStmt> parse_block() {
    expect("{");
    std::vector<AstStmt> out;
    while (!accept("}")) {
      if (at_end()) fail("unterminated block");
      out.push_back(parse_stmt());
    }
    return out;
  }

  AstStmt parse_stmt() {
    AstStmt s;
    const Token& t = peek();
    s.line = t.line;
    bool atomic = accept("@atomic_cond");
    if (atomic && !(peek_is("if") || peek_is("while"))) fail("@atomic_cond must precede if or while");
    if (accept_ident("if")) {
      s.kind = AstStmt::Kind::If;
      s.atomic = atomic;
      expect("(");
      s.cond = parse_cond();
      expect(")");
      s.then_body = parse_block();
      if (accept_ident("else")) {
        s.has_else = true;
        if (peek_is("if") || peek_is("@atomic_cond"))
          s.else_body.push_back(parse_stmt());
        else
          s.else_body = parse_block();
      }
    } else if (accept_ident("while")) {
      s.kind = AstStmt::Kind::While;
      s.atomic = atomic;
      expect("(");
      s.cond = parse_cond();
      expect(")");
      s.then_body = parse_block();
    } else if (accept_ident("switch")) {
      s.kind = AstStmt::Kind::Switch;
      expect("(");
      s.var = var_ref(expect_name());
      expect(")");
      expect("{");
      std::set<Int> seen;
      while (accept_ident("case")) {
        Token at = peek();
        Int k = parse_int_literal();
        if (!seen.insert(k).second) {
          throw FrontendError(FrontendError::Kind::Syntax, at.line, at.col, "duplicate case label");
        }
        expect(":");
        s.cases.emplace_back(k, parse_block());
      }
      expect_keyword("default");
      expect(":");
      s.default_body = parse_block();
      expect("}");
    } else if (accept_ident("read")) {
      s.kind = AstStmt::Kind::Read;
      s.var = var_ref(expect_name());
      expect(";");
    } else if (accept_ident("print")) {
      s.kind = AstStmt::Kind::Print;
      s.expr = parse_expr();
      expect(";");
    } else if (accept_ident("assert")) {
      s.kind = AstStmt::Kind::Assert;
      expect("(");
      s.cond = parse_cond();
      expect(")");
      expect(";");
    } else if (accept_ident("skip")) {
      s.kind = AstStmt::Kind::Skip;
      expect(";");
    } else {
      Token name = expect_name();
      if (accept("(")) {
        expect(")");
        expect(";");
        s.kind = AstStmt::Kind::Call;
        s.callee = prog_.find_proc(name.text);
        if (s.callee < 0)
          throw FrontendError(FrontendError::Kind::UnresolvedCall, name.line, name.col,
                              "call to undeclared procedure '" + name.text + "'");
      } else {
        expect("=");
        s.kind = AstStmt::Kind::Assign;
        s.var = var_ref(name);
        s.expr = parse_expr();
        expect(";");
      }
    }
    return s;
  }

  Int parse_int_literal() {
    bool neg = accept("-");
    const Token& t = peek();
    if (t.kind != Token::Kind::Int) fail("expected integer literal");
    ++pos_;
    Int v(t.text);
    return neg ? Int(-v) : v;
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      if (accept("+"))
        e = Expr::binary(Expr::Kind::Add, std::move(e), parse_term());
      else if (accept("-"))
        e = Expr::binary(Expr::Kind::Sub, std::move(e), parse_term());
      else
        return e;
    }
  }

  Expr parse_term() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) return Expr::constant(parse_int_literal());
    if (accept("-")) {
      if (peek().kind == Token::Kind::Int) {
        Int v(peek().text);
        ++pos_;
        return Expr::constant(-v);
      }
      return Expr::negation(parse_term());
    }
    if (accept("(")) {
      Expr e = parse_expr();
      expect(")");
      return e;
    }
    return Expr::variable(var_ref(expect_name()));
  }

  BoolExpr parse_cond() {
    BoolExpr e = parse_conj();
    if (!peek_is("||")) return e;
    BoolExpr out;
    out.kind = BoolExpr::Kind::Or;
    out.args.push_back(std::move(e));
    while (accept("||")) out.args.push_back(parse_conj());
    return out;
  }

  BoolExpr parse_conj() {
    BoolExpr e = parse_unary();
    if (!peek_is("&&")) return e;
    BoolExpr out;
    out.kind = BoolExpr::Kind::And;
    out.args.push_back(std::move(e));
    while (accept("&&")) out.args.push_back(parse_unary());
    return out;
  }

  BoolExpr parse_unary() {
    if (accept("!")) {
      BoolExpr out;
      out.kind = BoolExpr::Kind::Not;
      out.args.push_back(parse_unary());
      return out;
    }
    if (accept("(")) {
      BoolExpr e = parse_cond();
      expect(")");
      return e;
    }
    BoolExpr out;
    out.kind = BoolExpr::Kind::Atom;
    if (accept("*")) {
      out.atom.kind = Cond::Kind::Nondet;
      return out;
    }
    out.atom.lhs = var_ref(expect_name());
    static const std::map<std::string, RelOp> ops = {{"<", RelOp::Lt},  {"<=", RelOp::Le},
                                                     {">", RelOp::Gt},  {">=", RelOp::Ge},
                                                     {"==", RelOp::Eq}, {"!=", RelOp::Ne}};
    auto it = ops.find(peek().text);
    if (peek().kind != Token::Kind::Punct || it == ops.end()) {
      out.atom.kind = Cond::Kind::Truthy;
      return out;
    }
    ++pos_;
    out.atom.kind = Cond::Kind::Compare;
    out.atom.op = it->second;
    if (peek().kind == Token::Kind::Ident) {
      out.atom.rhs_is_var = true;
      out.atom.rhs_var = var_ref(expect_name());
    } else {
      out.atom.rhs_const = parse_int_literal();
    }
    return out;
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool peek_is(const std::string& s) const {
    return peek().kind != Token::Kind::End && peek().kind != Token::Kind::Int && peek().text == s;
  }
  bool accept(const std::string& s) {
    if (peek().kind == Token::Kind::Punct && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_ident(const std::string& s) {
    if (peek().kind == Token::Kind::Ident && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& s) {
    if (!accept(s)) fail("expected '" + s + "'");
  }
  void expect_keyword(const std::string& s) {
    if (!accept_ident(s)) fail("expected '" + s + "'");
  }
  Token expect_name() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || kKeywords.count(t.text)) fail("expected identifier");
    ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw FrontendError(FrontendError::Kind::Syntax, t.line, t.col, msg + ", found " + found);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Program prog_;
  int proc_ = -1;
};

}  // namespace

Program parse_program(const std::string& source) {
  Program prog = Parser(tokenize(source)).run();
  build_cfgs(prog);
  return prog;
}

Program parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

}  // namespace fpmfp
