// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "fpmfp/ir.h"

namespace fpmfp {

struct CallGraph {
  std::vector<std::vector<int>> callees;  // sorted, unique
  std::vector<std::vector<int>> callers;  // sorted, unique
  // Strongly connected components, callees before callers.
  std::vector<std::vector<int>> sccs;
  std::vector<int> scc_of;
  std::vector<bool> recursive;
  // Globals a procedure may write, directly or through its callees.
  std::vector<std::vector<bool>> modifies;

  std::vector<int> bottom_up() const;
  std::vector<int> top_down() const;
  bool may_modify(int proc, int var) const { return proc >= 0 && modifies[proc][var]; }
};

CallGraph build_call_graph(const Program& prog);

}  // namespace fpmfp
