// Command-line front end: monitor a recorded trace (centralised or
// decentralised), compare both modes on the same trace, or run the three
// benchmark sweeps and emit CSV.
//
// Exit codes follow the verdict for the monitoring commands: 0 for TOP,
// 1 for BOTTOM, 2 for UNKNOWN.  Usage errors exit with 64, bad input files
// or formulas with 65, and internal invariant violations with 70.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ltlmon/bench.hpp>
#include <ltlmon/generators.hpp>
#include <ltlmon/io.hpp>
#include <ltlmon/patterns.hpp>
#include <ltlmon/simulation.hpp>
#include <ltlmon/syntax.hpp>

namespace {

using namespace ltlmon;

struct MonitorArgs {
  std::string formula;
  std::string formula_file;
  std::string arch_path;
  std::string trace_path;
  std::string mode = "decentral";
  bool verbose = false;
};

struct BenchArgs {
  BenchSettings settings;  // runs=1000, cap=10000, jobs=1 are the defaults
  std::vector<std::size_t> sizes{1, 2, 3, 4, 5, 6};
  std::vector<std::string> patterns = pattern_kinds();
  std::vector<std::size_t> components{2, 3, 4, 5};
  std::string out;
};

Formula parse_spec(const MonitorArgs& args, const Architecture& arch) {
  const std::string text = args.formula_file.empty()
                               ? args.formula
                               : read_text_file(args.formula_file);
  return parse_formula(text, arch.alphabet());
}

int verdict_exit(Verdict3 v) {
  switch (v) {
    case Verdict3::Top:
      return 0;
    case Verdict3::Bottom:
      return 1;
    case Verdict3::Unknown:
      return 2;
  }
  return 2;
}

void print_central(const RunResult& r) {
  std::cout << "verdict=" << to_string(r.verdict);
  if (r.time) std::cout << " t=" << *r.time;
  std::cout << " msgs=" << r.messages << "\n";
}

void print_decentral(const Architecture& arch, const RunResult& r) {
  std::cout << "verdict=" << to_string(r.verdict);
  if (r.time) std::cout << " t=" << *r.time;
  if (r.reporter)
    std::cout << " monitor=" << arch.component(*r.reporter).name;
  std::cout << " msgs=" << r.messages << "\n";
}

int run_monitor(const MonitorArgs& args) {
  const Architecture arch = load_architecture_file(args.arch_path);
  const Formula spec = parse_spec(args, arch);
  const GlobalTrace trace = load_trace_file(args.trace_path, arch);

  if (args.mode == "central") {
    CentralisedRun run(arch, spec);
    for (std::size_t t = 0; t < trace.size() && !run.done(); ++t) {
      run.step(merge_locals(trace.steps[t]));
      if (args.verbose)
        std::cout << "t=" << t << " obligation: "
                  << print_formula(run.obligation()) << "\n";
    }
    const RunResult r = run.result();
    print_central(r);
    return verdict_exit(r.verdict);
  }

  DecentralisedRun run(arch, spec);
  for (std::size_t t = 0; t < trace.size() && !run.done(); ++t) {
    run.step(trace.steps[t]);
    if (args.verbose)
      for (std::size_t i = 0; i < arch.size(); ++i)
        std::cout << "t=" << t << " " << arch.component(i).name << ": "
                  << print_formula(run.progressed()[i]) << "\n";
  }
  const RunResult r = run.result();
  print_decentral(arch, r);
  return verdict_exit(r.verdict);
}

int run_compare(const MonitorArgs& args) {
  const Architecture arch = load_architecture_file(args.arch_path);
  const Formula spec = parse_spec(args, arch);
  const GlobalTrace trace = load_trace_file(args.trace_path, arch);

  const CompareResult c = compare_run(arch, spec, trace);
  std::cout << "central: ";
  print_central(c.central);
  std::cout << "decentral: ";
  print_decentral(arch, c.decentralised);
  if (c.central.verdict != Verdict3::Unknown) {
    std::cout << "delay=" << (*c.decentralised.time - *c.central.time)
              << " ratio_msg="
              << (c.central.messages
                      ? static_cast<double>(c.decentralised.messages) /
                            static_cast<double>(c.central.messages)
                      : 0.0)
              << "\n";
  }
  return verdict_exit(c.central.verdict);
}

int emit_csv(const std::vector<BenchRow>& rows, const std::string& out) {
  const std::string csv = csv_report(rows);
  if (out.empty()) {
    std::cout << csv;
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error(out + ": cannot open for writing");
  file << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralised monitoring of LTL specifications"};
  app.require_subcommand(1);

  MonitorArgs mon;
  // One argument set per benchmark so each keeps its own event-density
  // default: random formulas need busy traces, patterns need sparse ones.
  BenchArgs brandom_args;
  BenchArgs bpattern_args;
  bpattern_args.settings.prob = 0.01;
  BenchArgs barch_args;
  barch_args.settings.prob = 0.01;

  const auto add_spec_options = [&](CLI::App* cmd) {
    CLI::Option* f = cmd->add_option("--formula,-f", mon.formula,
                                     "specification formula text");
    CLI::Option* ff = cmd->add_option("--formula-file", mon.formula_file,
                                      "file holding the formula");
    f->excludes(ff);
    ff->excludes(f);
    cmd->add_option("--arch", mon.arch_path, "architecture JSON file")
        ->required();
    cmd->add_option("--trace", mon.trace_path, "trace JSONL file")->required();
    cmd->callback([f, ff] {
      if (f->count() + ff->count() != 1)
        throw CLI::RequiredError("exactly one of --formula/--formula-file");
    });
  };

  CLI::App* monitor =
      app.add_subcommand("monitor", "monitor one recorded trace");
  add_spec_options(monitor);
  monitor
      ->add_option("--mode", mon.mode, "monitoring mode")
      ->check(CLI::IsMember({"central", "decentral"}));
  monitor->add_flag("--verbose,-v", mon.verbose,
                    "print per-round obligations");

  CLI::App* compare = app.add_subcommand(
      "compare", "run both modes on one trace and report the delay");
  add_spec_options(compare);

  const auto add_bench_options = [](CLI::App* cmd, BenchArgs& args) {
    cmd->add_option("--seed", args.settings.seed, "random seed");
    cmd->add_option("--runs", args.settings.runs, "runs per label");
    cmd->add_option("--prob", args.settings.prob,
                    "per-proposition event probability");
    cmd->add_option("--cap", args.settings.cap,
                    "trace cap before a run counts as inconclusive");
    cmd->add_option("--jobs", args.settings.jobs, "worker threads");
    cmd->add_option("--out", args.out, "CSV output file (default stdout)");
  };

  CLI::App* brandom = app.add_subcommand(
      "bench-random", "random formulas of increasing temporal size");
  add_bench_options(brandom, brandom_args);
  brandom->add_option("--sizes", brandom_args.sizes,
                      "temporal sizes to sweep")
      ->delimiter(',');

  CLI::App* bpattern = app.add_subcommand(
      "bench-pattern", "specification pattern instantiations");
  add_bench_options(bpattern, bpattern_args);
  bpattern
      ->add_option("--pattern", bpattern_args.patterns,
                   "pattern kinds to sweep")
      ->delimiter(',');

  CLI::App* barch = app.add_subcommand(
      "bench-arch", "the absence pattern over growing architectures");
  add_bench_options(barch, barch_args);
  barch
      ->add_option("--components", barch_args.components,
                   "component counts to sweep")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (monitor->parsed()) return run_monitor(mon);
    if (compare->parsed()) return run_compare(mon);
    if (brandom->parsed())
      return emit_csv(bench_random(brandom_args.settings, brandom_args.sizes),
                      brandom_args.out);
    if (bpattern->parsed())
      return emit_csv(
          bench_patterns(bpattern_args.settings, bpattern_args.patterns),
          bpattern_args.out);
    if (barch->parsed())
      return emit_csv(
          bench_architectures(barch_args.settings, barch_args.components),
          barch_args.out);
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  }
  return 64;
}
