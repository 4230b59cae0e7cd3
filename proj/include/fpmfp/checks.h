// SPDX-License-Identifier: MIT
// Executable soundness properties, shared by the property tests and the
// oracle-check command.
#pragma once

#include <string>
#include <vector>

#include "fpmfp/ir.h"
#include "fpmfp/oracle.h"
#include "json.hpp"

namespace fpmfp {

struct CheckOptions {
  PathBounds bounds;
  // Programs beyond these budgets skip the witness check.
  ExecBox box = {-3, 3, 64, 64, 20000, 2000000};
  bool concrete = true;  // run the concrete executor for MIPS witnesses
  std::vector<std::string> analyses = {"rd", "uninit", "interval"};
};

struct Violation {
  std::string property, analysis, location, detail;
};

struct CheckReport {
  std::string name;
  std::vector<Violation> violations;
  bool acyclic = true;
  size_t universe = 0;
  size_t nodes_checked = 0;
  size_t distributive_checked = 0;
  size_t witness_checked = 0;
  size_t skipped_oracle = 0;    // path enumeration exploded
  size_t skipped_concrete = 0;  // concrete execution exploded
  size_t max_pairs = 0;

  bool ok() const { return violations.empty(); }
};

CheckReport check_program(const Program& prog, const std::string& name,
                          const CheckOptions& opts = {});
nlohmann::json to_json(const CheckReport& r);

bool is_acyclic(const Program& prog);

}  // namespace fpmfp
