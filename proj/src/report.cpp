// SPDX-License-Identifier: MIT
#include "fpmfp/report.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fpmfp {

std::string mips_label(int id) { return "\u00b5" + std::to_string(id + 1); }

nlohmann::json mips_json(const Program& prog, const MipsUniverse& u) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& m : u.all()) {
    std::vector<int> inner(m.edges.begin() + 1, m.edges.end() - 1);
    out.push_back({{"id", m.id},
                   {"label", mips_label(m.id)},
                   {"proc", prog.procs[m.proc].name},
                   {"edges", m.edges},
                   {"start", m.start()},
                   {"inner", inner},
                   {"end", m.end()},
                   {"satisfies_p", m.satisfies_p},
                   {"end_condition", m.end_condition.str(prog)}});
  }
  return out;
}

std::string mips_table(const Program& prog, const MipsUniverse& u) {
  std::vector<std::vector<std::string>> rows = {{"id", "proc", "edges", "P", "end condition"}};
  for (const auto& m : u.all()) {
    std::string edges;
    for (size_t i = 0; i < m.edges.size(); ++i)
      edges += (i ? "->e" : "e") + std::to_string(m.edges[i]);
    rows.push_back({mips_label(m.id), prog.procs[m.proc].name, edges,
                    m.satisfies_p ? "yes" : "no", m.end_condition.str(prog)});
  }
  return format_table(rows);
}

std::map<int, std::string> mips_annotations(const Program&, const MipsUniverse& u) {
  std::map<int, std::string> out;
  auto add = [&](int e, const std::string& s) {
    auto& t = out[e];
    t += (t.empty() ? "" : ", ") + s;
  };
  for (const auto& m : u.all()) {
    std::string id = mips_label(m.id);
    add(m.start(), "start(" + id + ")");
    for (size_t i = 1; i + 1 < m.edges.size(); ++i) add(m.edges[i], "inner(" + id + ")");
    add(m.end(), "end(" + id + ")");
  }
  return out;
}

nlohmann::json def_use_json(const Program& prog, const std::vector<DefUse>& pairs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : pairs)
    out.push_back({{"var", prog.vars[p.var].name}, {"def", p.def_node}, {"use", p.use_node}});
  return out;
}

nlohmann::json alarms_json(const Program& prog, const std::vector<Alarm>& alarms) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : alarms) out.push_back({{"var", prog.vars[a.var].name}, {"node", a.node}});
  return out;
}

void write_atomically(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp);
    f << text;
    if (!f.flush()) throw std::runtime_error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot rename to " + path);
}

namespace {
// Display width: UTF-8 continuation bytes do not occupy a column.
size_t columns(const std::string& s) {
  size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}
}  // namespace

std::string format_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); ++i) {
      if (i >= width.size()) width.push_back(0);
      width[i] = std::max(width[i], columns(r[i]));
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - columns(r[i]) + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace fpmfp
