// SPDX-License-Identifier: MIT
#include "fpmfp/generator.h"

#include <random>
#include <sstream>
#include <vector>

namespace fpmfp {
namespace {

class Gen {
 public:
  Gen(const GenOptions& o, std::uint64_t seed) : o_(o), rng_(seed) {}

  std::string run() {
    std::ostringstream os;
    if (o_.globals > 0) {
      os << "global ";
      for (int g = 0; g < o_.globals; ++g) os << (g ? ", " : "") << "g" << g;
      os << ";\n";
    }
    for (int p = 0; p < o_.procs; ++p) {
      proc_ = p;
      os << "proc p" << p << "(";
      if (p == 0) os << "x";
      os << ") {\n";
      block(os, o_.stmts, 0, 1);
      os << "}\n";
    }
    return os.str();
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool chance(int percent) { return pick(100) < percent; }

  std::string var() {
    int total = o_.locals + o_.globals + (proc_ == 0 ? 1 : 0);
    int i = pick(total);
    if (i < o_.locals) return "v" + std::to_string(i);
    i -= o_.locals;
    if (i < o_.globals) return "g" + std::to_string(i);
    return "x";
  }
  int constant() { return pick(5) - 1; }

  std::string expr() {
    switch (pick(4)) {
      case 0:
      case 1: return std::to_string(constant());
      case 2: return var();
      default: return var() + (chance(50) ? " + " : " - ") + std::to_string(pick(3));
    }
  }

  std::string atom() {
    static const char* ops[] = {"<", "<=", ">", ">=", "==", "!="};
    int k = pick(20);
    if (k == 0) return "*";
    if (k == 1) return var();
    std::string lhs = var();
    std::string op = ops[pick(6)];
    if (k == 2) return lhs + " " + op + " " + var();
    return lhs + " " + op + " " + std::to_string(constant());
  }

  std::string cond() {
    int k = pick(12);
    if (k == 0) return atom() + " && " + atom();
    if (k == 1) return atom() + " || " + atom();
    if (k == 2) return "!(" + atom() + ")";
    return atom();
  }

  void indent(std::ostream& os, int d) { os << std::string(static_cast<size_t>(d) * 2, ' '); }

  void block(std::ostream& os, int n, int depth, int ind) {
    for (int i = 0; i < n; ++i) stmt(os, depth, ind);
  }

  void stmt(std::ostream& os, int depth, int ind) {
    indent(os, ind);
    int k = pick(100);
    bool nest = depth < o_.depth;
    if (k < 28) {
      os << var() << " = " << expr() << ";\n";
    } else if (k < 38) {
      os << "read " << var() << ";\n";
    } else if (k < 46) {
      os << "print " << var() << ";\n";
    } else if (k < 50) {
      os << "assert(" << atom() << ");\n";
    } else if (k < 56 && proc_ + 1 < o_.procs) {
      int callee = proc_ + 1 + pick(o_.procs - proc_ - 1);
      os << "p" << callee << "();\n";
    } else if (k < 58 && o_.recursion && proc_ > 0) {
      os << "p" << pick(o_.procs) << "();\n";
    } else if (k < 78 && nest) {
      if (chance(8)) os << "@atomic_cond ";
      os << "if (" << cond() << ") {\n";
      block(os, 1 + pick(2), depth + 1, ind + 1);
      indent(os, ind);
      if (chance(50)) {
        os << "} else {\n";
        block(os, 1 + pick(2), depth + 1, ind + 1);
        indent(os, ind);
      }
      os << "}\n";
    } else if (k < 84 && nest) {
      os << "switch (" << var() << ") {\n";
      int cases = 1 + pick(2);
      int base = constant();
      for (int c = 0; c < cases; ++c) {
        indent(os, ind + 1);
        os << "case " << base + c << ": {\n";
        block(os, 1, depth + 1, ind + 2);
        indent(os, ind + 1);
        os << "}\n";
      }
      indent(os, ind + 1);
      os << "default: {\n";
      block(os, pick(2), depth + 1, ind + 2);
      indent(os, ind + 1);
      os << "}\n";
      indent(os, ind);
      os << "}\n";
    } else if (k < 92 && nest && o_.loops) {
      std::string v = var();
      os << "while (" << v << " < " << pick(4) << ") {\n";
      block(os, 1 + pick(2), depth + 1, ind + 1);
      indent(os, ind + 1);
      os << v << " = " << v << " + 1;\n";
      indent(os, ind);
      os << "}\n";
    } else {
      os << "skip;\n";
    }
  }

  GenOptions o_;
  std::mt19937_64 rng_;
  int proc_ = 0;
};

}  // namespace

std::string generate_program(const GenOptions& opts, std::uint64_t seed) {
  return Gen(opts, seed).run();
}

std::string generate_perf_program(int nodes, int mips) {
  // Block i: 7 nodes, one MIPS (a_i = 0 makes a_i > 5 infeasible).
  int fill = mips > 0 ? (nodes - 2 - 7 * mips + mips - 1) / mips : nodes;
  if (fill < 0) fill = 0;
  std::ostringstream os;
  os << "proc main() {\n";
  for (int i = 0; i < mips; ++i) {
    os << "  read c" << i << ";\n"
       << "  if (c" << i << " > 0) { a" << i << " = 0; } else { read a" << i << "; }\n"
       << "  print a" << i << ";\n"
       << "  if (a" << i << " > 5) { print a" << i << "; }\n";
    for (int f = 0; f < fill; ++f) os << "  b" << i << " = a" << i << " + " << f << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fpmfp
