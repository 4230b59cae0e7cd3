// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>

#include "fpmfp/ir.h"

namespace fpmfp {

// Graphviz text for one procedure's CFG. Edge labels read "e<id>[: annotation]".
std::string emit_dot(const Program& prog, int proc,
                     const std::map<int, std::string>& edge_annotations = {});

}  // namespace fpmfp
