// SPDX-License-Identifier: MIT
// Seeded random MiniIR programs for property tests and benchmarks.
#pragma once

#include <cstdint>
#include <string>

namespace fpmfp {

struct GenOptions {
  int procs = 2;         // the first one is the entry
  int stmts = 7;         // statements per block at the top level
  int depth = 2;         // nesting of if/switch/while
  int locals = 3;
  int globals = 1;
  bool loops = false;
  bool recursion = false;
};

std::string generate_program(const GenOptions& opts, std::uint64_t seed);

// Straight-line chain of blocks, each contributing one MIPS; filler
// assignments pad the procedure to at least `nodes` nodes.
std::string generate_perf_program(int nodes, int mips);

}  // namespace fpmfp
