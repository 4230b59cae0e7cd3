// SPDX-License-Identifier: MIT
// fpmfp: command line front end.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "fpmfp/analyses.h"
#include "fpmfp/callgraph.h"
#include "fpmfp/checks.h"
#include "fpmfp/clients.h"
#include "fpmfp/dot.h"
#include "fpmfp/generator.h"
#include "fpmfp/log.h"
#include "fpmfp/mips.h"
#include "fpmfp/report.h"
#include "fpmfp/solve.h"

namespace fs = std::filesystem;
using namespace fpmfp;

namespace {

constexpr int kExitOk = 0, kExitError = 1, kExitViolation = 2, kExitUsage = 64;

struct Config {
  std::string program, dir, output, format = "json", analysis = "interval", mode = "fpmfp";
  std::string opts = "1,2,3", proc;
  std::vector<std::string> track;
  bool no_timing = false, annotate = false, loops = false;
  std::uint64_t seed = 1;
  int jobs = 1, generated = 0;
};

OptConfig parse_opts(const std::string& s) {
  if (s == "none") return OptConfig::none();
  OptConfig o = OptConfig::none();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "1") o.opt1 = true;
    else if (item == "2") o.opt2 = true;
    else if (item == "3") o.opt3 = true;
    else throw CLI::ValidationError("--opts", "expected a subset of 1,2,3 or none");
  }
  // The sparse representation always drops top pairs.
  o.opt3 = true;
  return o;
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty())
    std::cout << text;
  else
    write_atomically(c.output, text);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct Loaded {
  Program prog;
  CallGraph cg;
  MipsUniverse u;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.prog = parse_file(path);
  l.cg = build_call_graph(l.prog);
  l.u = detect_mips(l.prog, l.cg);
  spdlog::info("{}: {} nodes, {} edges, {} MIPS", path, l.prog.nodes.size(), l.prog.edges.size(),
               l.u.size());
  return l;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_detect(const Config& c) {
  Loaded l = load(c.program);
  if (c.format == "table") {
    emit(c, mips_table(l.prog, l.u));
  } else {
    emit(c, dump({{"schema", kSchemaVersion}, {"mips", mips_json(l.prog, l.u)}}));
  }
  return kExitOk;
}

std::vector<int> tracked_vars(const Program& prog, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names)
    for (size_t v = 0; v < prog.vars.size(); ++v)
      if (prog.vars[v].name == n) out.push_back(static_cast<int>(v));
  return out;
}

template <class A>
nlohmann::json analyze_one(const Config& c, const Loaded& l, const A& a, Mode mode, OptConfig o) {
  auto t0 = std::chrono::steady_clock::now();
  auto sol = solve_program(l.prog, l.cg, a, mode, l.u, o);
  double ms = ms_since(t0);
  nlohmann::json j = solution_json(l.prog, sol, mode == Mode::Fpmfp);
  j["analysis"] = c.analysis;
  j["mips"] = l.u.size();
  if constexpr (std::is_same_v<A, BitVectorAnalysis>) {
    if (c.analysis == "rd") j["def_use"] = def_use_json(l.prog, def_use_pairs(l.prog, sol.analysis, sol.flow.in));
    if (c.analysis == "uninit") j["alarms"] = alarms_json(l.prog, uninit_alarms(l.prog, sol.flow.in));
  }
  if (!c.no_timing) j["timing_ms"] = ms;
  if (c.format == "table") j["table"] = solution_table(l.prog, sol);
  return j;
}

int cmd_analyze(const Config& c) {
  Loaded l = load(c.program);
  Mode mode = c.mode == "mfp" ? Mode::Mfp : Mode::Fpmfp;
  OptConfig o = parse_opts(c.opts);
  nlohmann::json j;
  if (c.analysis == "rd")
    j = analyze_one(c, l, BitVectorAnalysis::reaching_definitions(l.prog), mode, o);
  else if (c.analysis == "uninit")
    j = analyze_one(c, l, BitVectorAnalysis::must_defined(l.prog), mode, o);
  else
    j = analyze_one(c, l, IntervalAnalysis(l.prog, l.cg, tracked_vars(l.prog, c.track)), mode, o);
  if (c.format == "table") {
    emit(c, j["table"].get<std::string>());
  } else {
    emit(c, dump(j));
  }
  return kExitOk;
}

template <class A>
nlohmann::json compare_one(const Loaded& l, const A& a, OptConfig o, Comparison& cmp) {
  auto t0 = std::chrono::steady_clock::now();
  auto m = solve_program(l.prog, l.cg, a, Mode::Mfp, l.u, o);
  double mms = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  auto f = solve_program(l.prog, l.cg, a, Mode::Fpmfp, l.u, o);
  double fms = ms_since(t0);
  cmp = compare_solutions(l.prog, m, f);
  cmp.mfp_ms = mms;
  cmp.fpmfp_ms = fms;
  nlohmann::json improved = nlohmann::json::array();
  for (int n : cmp.improved) {
    int p = l.prog.nodes[n].proc;
    improved.push_back({{"node", n},
                        {"mfp", a.to_json(p, m.flow.in[n])},
                        {"fpmfp", a.to_json(p, f.flow.in[n])}});
  }
  return improved;
}

int cmd_compare(const Config& c) {
  Loaded l = load(c.program);
  OptConfig o = parse_opts(c.opts);
  Comparison cmp;
  nlohmann::json improved;
  nlohmann::json j = {{"schema", kSchemaVersion}, {"analysis", c.analysis}, {"mips", l.u.size()}};
  if (c.analysis == "rd") {
    improved = compare_one(l, BitVectorAnalysis::reaching_definitions(l.prog), o, cmp);
    auto r = def_use_report(l.prog, l.cg, l.u, o);
    j["def_use"] = {{"mfp", r.mfp.size()}, {"fpmfp", r.fpmfp.size()}, {"reduction_percent", r.reduction()}};
  } else if (c.analysis == "uninit") {
    improved = compare_one(l, BitVectorAnalysis::must_defined(l.prog), o, cmp);
    auto r = uninit_report(l.prog, l.cg, l.u, o);
    j["alarms"] = {{"mfp", r.mfp.size()}, {"fpmfp", r.fpmfp.size()}, {"reduction_percent", r.reduction()}};
  } else {
    improved = compare_one(l, IntervalAnalysis(l.prog, l.cg, tracked_vars(l.prog, c.track)), o, cmp);
  }
  j["improved"] = improved;
  j["violations"] = cmp.violations;
  j["max_live_pairs"] = cmp.max_pairs;
  j["avg_live_pairs"] = cmp.avg_pairs;
  if (!c.no_timing) j["timing_ms"] = {{"mfp", cmp.mfp_ms}, {"fpmfp", cmp.fpmfp_ms}};
  if (c.format == "table") {
    std::vector<std::vector<std::string>> rows = {{"node", "mfp", "fpmfp"}};
    for (const auto& x : improved)
      rows.push_back({"n" + std::to_string(x["node"].get<int>()), x["mfp"].dump(), x["fpmfp"].dump()});
    emit(c, format_table(rows));
  } else {
    emit(c, dump(j));
  }
  if (!cmp.violations.empty()) {
    spdlog::error("MFP is not below FPMFP at {} nodes", cmp.violations.size());
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_oracle(const Config& c) {
  struct Job {
    std::string name, source;
    bool is_file;
  };
  std::vector<Job> jobs;
  if (!c.dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(c.dir))
      if (e.path().extension() == ".mir") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) jobs.push_back({f.filename().string(), f.string(), true});
  }
  if (!c.program.empty()) jobs.push_back({fs::path(c.program).filename().string(), c.program, true});
  GenOptions g;
  g.loops = c.loops;
  for (int i = 0; i < c.generated; ++i) {
    std::uint64_t s = c.seed + static_cast<std::uint64_t>(i);
    jobs.push_back({"generated-" + std::to_string(s), generate_program(g, s), false});
  }

  std::vector<nlohmann::json> results(jobs.size());
  std::vector<int> failed(jobs.size(), 0);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        Program prog = jobs[i].is_file ? parse_file(jobs[i].source) : parse_program(jobs[i].source);
        CheckReport r = check_program(prog, jobs[i].name);
        results[i] = to_json(r);
        failed[i] = r.ok() ? 0 : 1;
      } catch (const std::exception& e) {
        results[i] = {{"name", jobs[i].name}, {"ok", false}, {"error", e.what()}};
        failed[i] = 2;
      }
    }
  };
  int n = std::max(1, c.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  size_t violations = std::count(failed.begin(), failed.end(), 1);
  size_t errors = std::count(failed.begin(), failed.end(), 2);
  nlohmann::json j = {{"schema", kSchemaVersion},
                      {"programs", jobs.size()},
                      {"failed", violations},
                      {"errors", errors},
                      {"results", results}};
  if (c.format == "table") {
    std::vector<std::vector<std::string>> rows = {{"program", "ok", "mips", "violations"}};
    for (const auto& r : results)
      rows.push_back({r["name"].get<std::string>(), r["ok"].get<bool>() ? "yes" : "no",
                      r.contains("mips") ? r["mips"].dump() : "-",
                      r.contains("violations") ? std::to_string(r["violations"].size()) : "-"});
    emit(c, format_table(rows));
  } else {
    emit(c, dump(j));
  }
  if (errors) return kExitError;
  return violations ? kExitViolation : kExitOk;
}

int cmd_dot(const Config& c) {
  Loaded l = load(c.program);
  int proc = c.proc.empty() ? l.prog.entry : l.prog.find_proc(c.proc);
  if (proc < 0) throw std::runtime_error("no procedure named " + c.proc);
  std::map<int, std::string> ann;
  if (c.annotate) ann = mips_annotations(l.prog, l.u);
  emit(c, emit_dot(l.prog, proc, ann));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  Config c;
  CLI::App app{"Feasible-path data-flow analysis over MiniIR programs"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s, bool needs_program) {
    auto* o = s->add_option("--program", c.program, "MiniIR source file");
    if (needs_program) o->required();
    s->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    s->add_option("--output", c.output, "write the report here instead of stdout");
  };
  auto analysis_flags = [&](CLI::App* s) {
    s->add_option("--analysis", c.analysis, "rd, uninit or interval")
        ->check(CLI::IsMember({"rd", "uninit", "interval"}));
    s->add_option("--opts", c.opts, "optimizations: subset of 1,2,3 or none");
    s->add_flag("--no-timing", c.no_timing, "omit wall-clock timing");
    s->add_option("--track", c.track, "interval analysis: variables to track (default all)");
  };

  auto* detect = app.add_subcommand("detect-mips", "list minimal infeasible path segments");
  common(detect, true);
  auto* analyze = app.add_subcommand("analyze", "solve one analysis in one mode");
  common(analyze, true);
  analysis_flags(analyze);
  analyze->add_option("--mode", c.mode, "mfp or fpmfp")->check(CLI::IsMember({"mfp", "fpmfp"}));
  auto* compare = app.add_subcommand("compare", "compare MFP and FPMFP per node");
  common(compare, true);
  analysis_flags(compare);
  auto* oracle = app.add_subcommand("oracle-check", "run the property suite");
  common(oracle, false);
  oracle->add_option("--dir", c.dir, "directory of .mir fixtures");
  oracle->add_option("--generated", c.generated, "also check this many generated programs");
  oracle->add_option("--seed", c.seed, "seed of the first generated program");
  oracle->add_flag("--loops", c.loops, "generated programs may contain loops");
  oracle->add_option("--jobs", c.jobs, "programs checked in parallel");
  auto* dot = app.add_subcommand("dump-dot", "emit a procedure's CFG as Graphviz");
  common(dot, true);
  dot->add_option("--proc", c.proc, "procedure (default: entry)");
  dot->add_flag("--mips", c.annotate, "annotate edges with MIPS roles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*detect) return cmd_detect(c);
    if (*analyze) return cmd_analyze(c);
    if (*compare) return cmd_compare(c);
    if (*oracle) {
      if (c.dir.empty() && c.program.empty() && c.generated == 0) {
        std::cerr << "oracle-check needs --dir, --program or --generated\n" << oracle->help();
        return kExitUsage;
      }
      return cmd_oracle(c);
    }
    if (*dot) return cmd_dot(c);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const FrontendError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line() << ")\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
