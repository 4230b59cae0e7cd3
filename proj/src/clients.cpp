// SPDX-License-Identifier: MIT
#include "fpmfp/clients.h"

#include <algorithm>

namespace fpmfp {

std::vector<DefUse> def_use_pairs(const Program& prog, const BitVectorAnalysis& rd,
                                  const std::vector<BitValue>& rd_in) {
  std::vector<DefUse> out;
  for (const auto& n : prog.nodes) {
    const BitValue& in = rd_in[n.id];
    if (in.top) continue;
    for (int v : used_vars(n))
      for (size_t f : rd.facts_of_var(v))
        if (in.bits.test(f)) out.push_back({rd.fact_node(f), n.id, v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Alarm> uninit_alarms(const Program& prog, const std::vector<BitValue>& md_in) {
  std::vector<Alarm> out;
  for (const auto& n : prog.nodes) {
    const BitValue& in = md_in[n.id];
    if (in.top) continue;
    for (int v : used_vars(n))
      if (!in.bits.test(static_cast<size_t>(v))) out.push_back({n.id, v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

double reduction_percent(size_t mfp, size_t fpmfp) {
  if (mfp == 0) return 0.0;
  return 100.0 * (double(mfp) - double(fpmfp)) / double(mfp);
}

ModePair<DefUse> def_use_report(const Program& prog, const CallGraph& cg, const MipsUniverse& u,
                                OptConfig opts) {
  auto rd = BitVectorAnalysis::reaching_definitions(prog);
  ModePair<DefUse> r;
  auto m = solve_program(prog, cg, rd, Mode::Mfp, u, opts);
  auto f = solve_program(prog, cg, rd, Mode::Fpmfp, u, opts);
  r.mfp = def_use_pairs(prog, rd, m.flow.in);
  r.fpmfp = def_use_pairs(prog, rd, f.flow.in);
  return r;
}

ModePair<Alarm> uninit_report(const Program& prog, const CallGraph& cg, const MipsUniverse& u,
                              OptConfig opts) {
  auto md = BitVectorAnalysis::must_defined(prog);
  ModePair<Alarm> r;
  r.mfp = uninit_alarms(prog, solve_program(prog, cg, md, Mode::Mfp, u, opts).flow.in);
  r.fpmfp = uninit_alarms(prog, solve_program(prog, cg, md, Mode::Fpmfp, u, opts).flow.in);
  return r;
}

}  // namespace fpmfp
