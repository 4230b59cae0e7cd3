// SPDX-License-Identifier: MIT
#include "fpmfp/dot.h"

#include <sstream>

namespace fpmfp {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string emit_dot(const Program& prog, int proc,
                     const std::map<int, std::string>& edge_annotations) {
  const Procedure& p = prog.procs[proc];
  std::ostringstream os;
  os << "digraph \"" << escape(p.name) << "\" {\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (int n : p.nodes) {
    os << "  n" << n << " [label=\"n" << n << ": " << escape(describe(prog, prog.nodes[n]))
       << "\"];\n";
  }
  for (int id : p.edges) {
    const Edge& e = prog.edges[id];
    std::string label = "e" + std::to_string(id);
    auto it = edge_annotations.find(id);
    if (it != edge_annotations.end() && !it->second.empty()) label += ": " + it->second;
    os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << escape(label) << "\"";
    switch (e.label) {
      case EdgeLabel::True:
      case EdgeLabel::False:
      case EdgeLabel::Default:
        os << ", taillabel=\"" << to_string(e.label) << "\"";
        break;
      case EdgeLabel::Case:
        os << ", taillabel=\"case " << e.case_value << "\"";
        break;
      case EdgeLabel::None:
        break;
    }
    if (e.back) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fpmfp
