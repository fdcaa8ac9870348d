// fsmforge: netlist FSM cut extraction and topology enumeration.
//
// Exit codes: 0 ok, 1 usage/parse/I/O error, 2 unknown state register,
// 3 guard tripped or incomplete result.

#include "fsmforge/bench.hpp"
#include "fsmforge/cnf.hpp"
#include "fsmforge/enumsat.hpp"
#include "fsmforge/recut.hpp"
#include "fsmforge/refsmlite.hpp"
#include "fsmforge/testkit.hpp"
#include "fsmforge/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fsmforge;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_unknown_register = 2;
constexpr int exit_incomplete = 3;

class Timer
{
public:
  [[nodiscard]] double ms() const
  {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_file(const fs::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  out << text;
}

std::string format_ms(double ms)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

// "1..5", "3,7,9" or "2..4,10"; FSMFORGE_SEED replaces the whole list.
std::vector<std::uint64_t> parse_seeds(const std::string& text)
{
  if (const char* env = std::getenv("FSMFORGE_SEED"); env != nullptr && *env != '\0') {
    return {std::stoull(env)};
  }
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      continue;
    }
    if (auto dots = item.find(".."); dots != std::string::npos) {
      const auto lo = std::stoull(item.substr(0, dots));
      const auto hi = std::stoull(item.substr(dots + 2));
      for (auto s = lo; s <= hi; ++s) {
        seeds.push_back(s);
      }
    } else {
      seeds.push_back(std::stoull(item));
    }
  }
  return seeds;
}

std::uint64_t env_seed_or(std::uint64_t fallback)
{
  if (const char* env = std::getenv("FSMFORGE_SEED"); env != nullptr && *env != '\0') {
    return std::stoull(env);
  }
  return fallback;
}

// --------------------------------------------------------------------------
// cut

struct CutArgs
{
  std::string netlist;
  std::string state_regs;
  std::string out;
  std::string json_out;
};

int cmd_cut(const CutArgs& args)
{
  const Netlist nl = read_bench_file(args.netlist);
  FsmSpec spec;
  spec.state_registers = split_register_list(args.state_regs);
  spec.reset = StateWord(spec.state_registers.size());
  const Cut cut = fsm_cut(nl, spec);
  if (!args.out.empty()) {
    write_file(args.out, write_bench(cut.netlist));
  }
  if (!args.json_out.empty()) {
    write_file(args.json_out, to_json(cut.netlist).dump(2) + "\n");
  }
  std::cout << format_stats(cut_stats(cut)) << "\n";
  return exit_ok;
}

// --------------------------------------------------------------------------
// enum

struct EnumArgs
{
  std::string netlist;
  std::string state_regs;
  std::string reset;
  std::string engine = "sat";
  bool no_cut = false;
  std::string dot;
  std::string json_out;
  std::string report;
  std::size_t max_states = std::size_t{1} << 20;
  std::size_t max_inputs = 24;
  unsigned threads = 1;
  std::vector<std::string> starts;
  std::optional<std::uint64_t> conflict_budget;
};

int cmd_enum(const EnumArgs& args)
{
  FsmSpec spec;
  spec.state_registers = split_register_list(args.state_regs);
  try {
    spec.reset = StateWord::parse(args.reset);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  if (spec.reset.width() != spec.state_registers.size()) {
    std::cerr << "error: --reset has " << spec.reset.width() << " bit(s) but --state-regs names "
              << spec.state_registers.size() << " register(s)\n";
    return exit_usage;
  }
  std::vector<StateWord> starts;
  for (const auto& s : args.starts) {
    starts.push_back(StateWord::parse(s));
    if (starts.back().width() != spec.reset.width()) {
      std::cerr << "error: --start '" << s << "' has the wrong width\n";
      return exit_usage;
    }
  }

  Timer t_parse;
  const Netlist nl = read_bench_file(args.netlist);
  const double parse_ms = t_parse.ms();

  Timer t_cut;
  const Cut cut = args.no_cut ? whole_netlist(nl, spec) : fsm_cut(nl, spec);
  const double cut_ms = args.no_cut ? 0.0 : t_cut.ms();

  json report{
    {"version", std::string(version)},
    {"netlist", fs::path(args.netlist).filename().string()},
    {"engine", args.engine},
    {"cut_used", !args.no_cut},
  };
  const auto stats = cut_stats(cut);
  report["cut_stats"] = {{"inputs", stats.inputs}, {"regs", stats.regs}, {"gates", stats.gates}};

  Timer t_enum;
  TransitionGraph graph;
  json graph_json;
  std::optional<double> acpt;
  std::uint64_t cubes = 0;
  if (args.engine == "sat") {
    SatEnumOptions opt;
    opt.max_states = args.max_states;
    opt.threads = args.threads;
    opt.extra_starts = starts;
    opt.conflict_budget = args.conflict_budget;
    graph = enumerate_topology(cut, spec, opt);
    graph_json = to_json(graph);
  } else if (args.engine == "brute") {
    RefsmOptions opt;
    opt.max_states = args.max_states;
    opt.threads = args.threads;
    opt.extra_starts = starts;
    opt.max_inputs = args.max_inputs;
    auto conditioned = enumerate_with_conditions(cut, spec, opt);
    acpt = conditioned.acpt();
    cubes = conditioned.cube_count;
    graph_json = to_json(conditioned, cut.netlist);
    graph = std::move(conditioned.base);
  } else {
    std::cerr << "error: unknown engine '" << args.engine << "'\n";
    return exit_usage;
  }
  const double enum_ms = t_enum.ms();

  if (!args.dot.empty()) {
    write_file(args.dot, to_dot(graph));
  }
  if (!args.json_out.empty()) {
    write_file(args.json_out, graph_json.dump(2) + "\n");
  }

  report["states"] = graph.states.size();
  report["edges"] = graph.edges.size();
  report["solve_calls"] = graph.solve_calls;
  report["complete"] = graph.complete;
  if (acpt) {
    report["acpt"] = *acpt;
    report["cubes"] = cubes;
  }
  report["timings_ms"] = {{"parse", parse_ms}, {"cut", cut_ms}, {"enumerate", enum_ms}};
  report["config"] = {
    {"state_regs", spec.state_registers},
    {"reset", spec.reset.str()},
    {"threads", args.threads},
    {"max_states", args.max_states},
  };
  if (!args.report.empty()) {
    write_file(args.report, report.dump(2) + "\n");
  }

  std::cout << "engine=" << args.engine << " cut=" << (args.no_cut ? "no" : "yes") << " " << format_stats(stats)
            << " states=" << graph.states.size() << " edges=" << graph.edges.size();
  if (args.engine == "sat") {
    std::cout << " solve_calls=" << graph.solve_calls;
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", *acpt);
    std::cout << " cubes=" << cubes << " acpt=" << buf;
  }
  std::cout << " enumerate_ms=" << format_ms(enum_ms) << "\n";

  if (!graph.complete) {
    std::cerr << "warning: enumeration stopped early; the graph is partial\n";
    return exit_incomplete;
  }
  return exit_ok;
}

// --------------------------------------------------------------------------
// bench

struct BenchCase
{
  std::string name;
  Netlist netlist;
  FsmSpec spec;
};

struct BenchArgs
{
  std::string suite;
  std::string generate;
  std::string family = "random";
  std::size_t pad_gates = 2000;
  std::size_t pad_regs = 200;
  std::uint32_t xor_inputs = 16;
  std::string out;
};

FsmSpec read_spec_json(const fs::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open '" + path.string() + "'");
  }
  const json doc = json::parse(in);
  FsmSpec spec;
  spec.state_registers = doc.at("state_regs").get<std::vector<std::string>>();
  spec.reset = StateWord::parse(doc.at("reset").get<std::string>());
  return spec;
}

json spec_json(const FsmSpec& spec)
{
  return json{{"state_regs", spec.state_registers}, {"reset", spec.reset.str()}};
}

testkit::Design make_design(const std::string& family, std::uint64_t seed, std::uint32_t xor_inputs)
{
  if (family == "random") {
    return testkit::synthesize(testkit::generate_random(seed));
  }
  if (family == "xor") {
    return testkit::xor_fsm(seed, 2, xor_inputs);
  }
  if (family == "counter") {
    return testkit::counter(static_cast<std::uint32_t>(1 + seed % 6));
  }
  throw Error("unknown family '" + family + "' (random, xor, counter)");
}

std::vector<BenchCase> load_suite(const BenchArgs& args)
{
  std::vector<BenchCase> cases;
  if (!args.suite.empty()) {
    if (!fs::is_directory(args.suite)) {
      throw Error("suite directory '" + args.suite + "' does not exist");
    }
    std::vector<fs::path> benches;
    for (const auto& entry : fs::directory_iterator(args.suite)) {
      if (entry.path().extension() == ".bench") {
        benches.push_back(entry.path());
      }
    }
    std::sort(benches.begin(), benches.end());
    for (const auto& p : benches) {
      auto spec_path = p;
      spec_path.replace_extension(".spec.json");
      if (!fs::exists(spec_path)) {
        continue;
      }
      cases.push_back({p.stem().string(), read_bench_file(p), read_spec_json(spec_path)});
    }
  } else {
    for (auto seed : parse_seeds(args.generate)) {
      auto design = make_design(args.family, seed, args.xor_inputs);
      auto padded = testkit::pad_with_noise(design.netlist, args.pad_gates, args.pad_regs, seed);
      cases.push_back({args.family + "_" + std::to_string(seed), std::move(padded), design.spec});
    }
  }
  return cases;
}

int cmd_bench(const BenchArgs& args)
{
  if (args.suite.empty() == args.generate.empty()) {
    std::cerr << "error: give exactly one of --suite or --generate\n";
    return exit_usage;
  }
  const auto cases = load_suite(args);
  if (cases.empty()) {
    std::cerr << "error: the suite contains no (bench, spec) pairs\n";
    return exit_usage;
  }

  std::ostringstream csv;
  csv << "netlist,recut_ms,full_brute_ms,full_sat_ms,cut_brute_ms,cut_sat_ms,states,edges,cubes,acpt,status\n";
  bool any_error = false;
  for (const auto& c : cases) {
    std::string status = "ok";
    double recut_ms = 0;
    double full_brute_ms = 0;
    double full_sat_ms = 0;
    double cut_brute_ms = 0;
    double cut_sat_ms = 0;
    std::size_t states = 0;
    std::size_t edges = 0;
    std::uint64_t cubes = 0;
    double acpt = 0;
    try {
      const Cut full = whole_netlist(c.netlist, c.spec);
      Timer t_cut;
      const Cut cut = fsm_cut(c.netlist, c.spec);
      recut_ms = t_cut.ms();

      const auto sat_full = enumerate_topology(full, c.spec);
      full_sat_ms = sat_full.wall_time_ms();
      const auto sat_cut = enumerate_topology(cut, c.spec);
      cut_sat_ms = sat_cut.wall_time_ms();
      const auto brute_full = enumerate_with_conditions(full, c.spec);
      full_brute_ms = brute_full.base.wall_time_ms();
      const auto brute_cut = enumerate_with_conditions(cut, c.spec);
      cut_brute_ms = brute_cut.base.wall_time_ms();

      states = sat_cut.states.size();
      edges = sat_cut.edges.size();
      cubes = brute_cut.cube_count;
      acpt = brute_cut.acpt();
      const bool agree = same_topology(sat_full, sat_cut) && same_topology(sat_cut, brute_cut.base)
                         && same_topology(brute_cut.base, brute_full.base);
      if (!agree) {
        status = "mismatch";
        any_error = true;
      }
    } catch (const std::exception& e) {
      status = std::string("error: ") + e.what();
      for (auto& ch : status) {
        if (ch == ',' || ch == '\n') {
          ch = ';';
        }
      }
      any_error = true;
    }
    char acpt_buf[64];
    std::snprintf(acpt_buf, sizeof acpt_buf, "%.2f", acpt);
    csv << c.name << ',' << format_ms(recut_ms) << ',' << format_ms(full_brute_ms) << ',' << format_ms(full_sat_ms)
        << ',' << format_ms(cut_brute_ms) << ',' << format_ms(cut_sat_ms) << ',' << states << ',' << edges << ','
        << cubes << ',' << acpt_buf << ',' << status << '\n';
  }
  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(args.out, csv.str());
  }
  return any_error ? exit_usage : exit_ok;
}

// --------------------------------------------------------------------------
// generate

struct GenerateArgs
{
  std::uint64_t seed = 1;
  std::uint32_t states = 8;
  std::uint32_t inputs = 2;
  double density = 0.5;
  std::string family = "random";
  std::uint32_t xor_inputs = 16;
  std::size_t pad_gates = 0;
  std::size_t pad_regs = 0;
  std::string out_dir = ".";
  std::string name;
};

int cmd_generate(const GenerateArgs& args)
{
  const auto seed = env_seed_or(args.seed);
  testkit::Design design;
  std::optional<testkit::FsmTruth> truth;
  if (args.family == "random") {
    truth = testkit::generate(seed, args.states, args.inputs, args.density);
    design = testkit::synthesize(*truth);
  } else {
    design = make_design(args.family, seed, args.xor_inputs);
  }
  const Netlist nl = testkit::pad_with_noise(design.netlist, args.pad_gates, args.pad_regs, seed);
  const std::string name = args.name.empty() ? args.family + "_" + std::to_string(seed) : args.name;
  fs::create_directories(args.out_dir);
  const fs::path dir(args.out_dir);
  write_file(dir / (name + ".bench"), write_bench(nl));
  write_file(dir / (name + ".spec.json"), spec_json(design.spec).dump(2) + "\n");
  if (truth) {
    write_file(dir / (name + ".truth.json"), testkit::to_json(*truth).dump(2) + "\n");
  }
  std::cout << (dir / (name + ".bench")).string() << "\n";
  return exit_ok;
}

// --------------------------------------------------------------------------
// cnf

struct CnfArgs
{
  std::string netlist;
  std::string state_regs;
  std::string state;
  bool no_cut = false;
  std::string out;
};

int cmd_cnf(const CnfArgs& args)
{
  const Netlist nl = read_bench_file(args.netlist);
  FsmSpec spec;
  spec.state_registers = split_register_list(args.state_regs);
  spec.reset = StateWord(spec.state_registers.size());
  const Cut cut = args.no_cut ? whole_netlist(nl, spec) : fsm_cut(nl, spec);
  CnfProblem problem = encode(cut);
  if (!args.state.empty()) {
    const auto s = StateWord::parse(args.state);
    if (s.width() != cut.width()) {
      std::cerr << "error: --state has the wrong width\n";
      return exit_usage;
    }
    set_equal(problem, problem.varmap().q_vars, s);
  }
  const auto text = to_dimacs(problem);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    write_file(args.out, text);
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"fsmforge: FSM cut extraction and topology enumeration for gate-level netlists"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);

  CutArgs cut_args;
  auto* cut = app.add_subcommand("cut", "extract the state registers' fan-in cut");
  cut->add_option("--netlist", cut_args.netlist, ".bench netlist")->required();
  cut->add_option("--state-regs", cut_args.state_regs, "comma-separated state registers")->required();
  cut->add_option("--out", cut_args.out, "write the cut as .bench");
  cut->add_option("--json", cut_args.json_out, "write the cut as netlist JSON");

  EnumArgs enum_args;
  auto* en = app.add_subcommand("enum", "enumerate the FSM topology");
  en->add_option("--netlist", enum_args.netlist, ".bench netlist")->required();
  en->add_option("--state-regs", enum_args.state_regs, "comma-separated state registers")->required();
  en->add_option("--reset", enum_args.reset, "reset state, bit 0 first")->required();
  en->add_option("--engine", enum_args.engine, "sat or brute")->check(CLI::IsMember({"sat", "brute"}));
  en->add_flag("--no-cut", enum_args.no_cut, "enumerate on the full netlist");
  en->add_option("--dot", enum_args.dot, "write Graphviz DOT");
  en->add_option("--json", enum_args.json_out, "write graph JSON");
  en->add_option("--report", enum_args.report, "write the run report JSON");
  en->add_option("--max-states", enum_args.max_states, "state-count guard");
  en->add_option("--max-inputs", enum_args.max_inputs, "brute engine input guard");
  en->add_option("--threads", enum_args.threads, "frontier workers")->check(CLI::PositiveNumber);
  en->add_option("--start", enum_args.starts, "extra start state (repeatable)");
  en->add_option("--conflict-budget", enum_args.conflict_budget, "per-solve conflict cap");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "time both engines with and without the cut, CSV out");
  bench->add_option("--suite", bench_args.suite, "directory of NAME.bench + NAME.spec.json");
  bench->add_option("--generate", bench_args.generate, "seeds=1..10 (FSMFORGE_SEED overrides)");
  bench->add_option("--family", bench_args.family, "random, xor or counter");
  bench->add_option("--pad-gates", bench_args.pad_gates, "noise gates per generated case");
  bench->add_option("--pad-regs", bench_args.pad_regs, "noise registers per generated case");
  bench->add_option("--xor-inputs", bench_args.xor_inputs, "inputs of the xor family");
  bench->add_option("--out", bench_args.out, "CSV path (default stdout)");

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "write a synthetic FSM netlist, spec and truth");
  gen->add_option("--seed", gen_args.seed, "generator seed (FSMFORGE_SEED overrides)");
  gen->add_option("--states", gen_args.states, "number of states (1..64)");
  gen->add_option("--inputs", gen_args.inputs, "number of inputs (0..6)");
  gen->add_option("--density", gen_args.density, "successor density in [0,1]");
  gen->add_option("--family", gen_args.family, "random, xor or counter");
  gen->add_option("--xor-inputs", gen_args.xor_inputs, "inputs of the xor family");
  gen->add_option("--pad-gates", gen_args.pad_gates, "noise gates");
  gen->add_option("--pad-regs", gen_args.pad_regs, "noise registers");
  gen->add_option("--out-dir", gen_args.out_dir, "output directory");
  gen->add_option("--name", gen_args.name, "file stem");

  CnfArgs cnf_args;
  auto* cnf = app.add_subcommand("cnf", "dump the cut's CNF encoding as DIMACS");
  cnf->add_option("--netlist", cnf_args.netlist, ".bench netlist")->required();
  cnf->add_option("--state-regs", cnf_args.state_regs, "comma-separated state registers")->required();
  cnf->add_option("--state", cnf_args.state, "also fix Q to this state");
  cnf->add_flag("--no-cut", cnf_args.no_cut, "encode the full netlist");
  cnf->add_option("--out", cnf_args.out, "DIMACS path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*cut) {
      return cmd_cut(cut_args);
    }
    if (*en) {
      return cmd_enum(enum_args);
    }
    if (*bench) {
      return cmd_bench(bench_args);
    }
    if (*gen) {
      return cmd_generate(gen_args);
    }
    if (*cnf) {
      return cmd_cnf(cnf_args);
    }
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_unknown_register;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_incomplete;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
