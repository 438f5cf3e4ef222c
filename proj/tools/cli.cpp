#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "ntcc/dsl/spec.hpp"
#include "ntcc/engine.hpp"
#include "ntcc/errors.hpp"
#include "ntcc/fo/factor_oracle.hpp"
#include "ntcc/io/json.hpp"
#include "ntcc/models/ccfomi.hpp"
#include "ntcc/models/graph_path.hpp"
#include "ntcc/models/knets.hpp"

namespace ntcc::cli {

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kUsage = 2;

/// Raised for bad arguments detected after CLI11 parsing.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Raised for files that cannot be opened.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::int64_t> int_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (item.empty() || used != item.size()) throw Usage(std::string("invalid ") + what + " '" + text + "'");
    out.push_back(v);
  }
  return out;
}

std::string where(const std::string& file, const SyntaxError& e) { return file + ":" + e.what(); }

struct RunArgs {
  std::string spec;
  int units = 1;
  std::uint64_t seed = 0;
  std::string input;
  std::string args;
  std::optional<int> fixed_ms;
  bool no_timing = false;
};

int run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const std::string text = slurp(a.spec);
  dsl::SpecAst ast;
  try {
    ast = dsl::parse(text);
  } catch (const SyntaxError& e) {
    err << "error: " << where(a.spec, e) << '\n';
    return kUsage;
  }
  Program prog = dsl::elaborate(ast, a.args.empty() ? std::vector<std::int64_t>{} : int_list(a.args, "--args"));
  EngineOptions opts;
  opts.horizon = a.units;
  opts.seed = a.seed;
  opts.fixed_unit_ms = a.fixed_ms;
  Engine eng(std::move(prog), opts);
  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) throw IoFailure("cannot read '" + a.input + "'");
    try {
      eng.set_input(io::make_input_hook(io::read_input_script(in, eng.program().registry)));
    } catch (const SyntaxError& e) {
      err << "error: " << where(a.input, e) << '\n';
      return kUsage;
    }
  }
  io::TraceWriter trace(out, !a.no_timing);
  eng.set_output([&](const UnitReport& r) {
    trace.unit(r);
    if (r.overrun)
      err << "warning: unit " << r.tu << " overran the fixed length of " << *a.fixed_ms << " ms (work took "
          << r.elapsed_us << " us)\n";
  });
  trace.header(a.seed, a.units);
  try {
    eng.simulate();
  } catch (const InconsistentUnit& e) {
    trace.inconsistent(e.unit());
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return out ? kOk : kRuntime;
}

void print_fo_table(const fo::FactorOracle& o, std::ostream& out) {
  out << "state  suffix  links\n";
  for (int s = 0; s <= o.size(); ++s) {
    std::string links;
    for (const auto& [sym, to] : o.transitions(s)) links += (links.empty() ? "" : " ") + std::to_string(sym) + "->" + std::to_string(to);
    std::ostringstream row;
    row << std::left << std::setw(7) << s << std::setw(8) << o.suffix(s) << links;
    std::string line = row.str();
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  }
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpreter for timed concurrent constraint programs", "ntcc"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Simulate a .ntcc spec and print a JSON-lines trace");
  run_cmd->add_option("spec", run_args.spec, "Spec file")->required();
  run_cmd->add_option("--units", run_args.units, "Time units to simulate")->required()->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run_args.seed, "Random seed")->capture_default_str();
  run_cmd->add_option("--input", run_args.input, "JSON-lines input script");
  run_cmd->add_option("--args", run_args.args, "Comma-separated arguments for main");
  run_cmd->add_option("--fixed-unit-ms", run_args.fixed_ms, "Minimum wall length of each unit")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_flag("--no-timing", run_args.no_timing, "Write elapsed_us as 0");

  std::string fo_input;
  std::string fo_dot;
  bool fo_as_json = false;
  auto* fo_cmd = app.add_subcommand("fo", "Build a factor oracle from a comma-separated word");
  fo_cmd->add_option("--input", fo_input, "Symbols, e.g. 60,62,62")->required();
  fo_cmd->add_option("--dot", fo_dot, "Write Graphviz output to this file ('-' for stdout)");
  fo_cmd->add_flag("--json", fo_as_json, "Print JSON instead of the table");

  std::string edges_file;
  int from = 0;
  int to = 0;
  auto* gp_cmd = app.add_subcommand("graph-path", "Find a path with concurrent forward and back signals");
  gp_cmd->add_option("--edges", edges_file, "Edge list: one 'i j' pair per line")->required();
  gp_cmd->add_option("--from", from, "Source vertex")->required()->check(CLI::NonNegativeNumber);
  gp_cmd->add_option("--to", to, "Target vertex")->required()->check(CLI::NonNegativeNumber);

  std::string pitches;
  int k = 0;
  std::size_t limit = 0;
  bool knets_as_json = false;
  bool connected = false;
  auto* kn_cmd = app.add_subcommand("knets", "Enumerate k-nets for a pitch-class set");
  kn_cmd->add_option("--pitches", pitches, "Pitch classes, e.g. 3,10,11")->required();
  kn_cmd->add_option("--k", k, "Number of inversions")->required()->check(CLI::NonNegativeNumber);
  kn_cmd->add_option("--limit", limit, "Stop after this many solutions (0: all)");
  kn_cmd->add_flag("--json", knets_as_json, "Print JSON");
  kn_cmd->add_flag("--connected", connected, "Only connected networks (extension)");

  int processes = 880;
  int bench_units = 200;
  std::uint64_t bench_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmarks");
  bench_cmd->require_subcommand(1);
  auto* ccfomi_cmd = bench_cmd->add_subcommand("ccfomi", "Time per unit of the improvisation model");
  ccfomi_cmd->add_option("--processes-per-unit", processes, "Target process terms per unit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ccfomi_cmd->add_option("--units", bench_units, "Time units")->capture_default_str()->check(CLI::PositiveNumber);
  ccfomi_cmd->add_option("--seed", bench_seed, "Random seed")->capture_default_str();

  std::string lint_file;
  auto* lint_cmd = app.add_subcommand("lint", "Report patterns the engine cannot run faithfully");
  lint_cmd->add_option("spec", lint_file, "Spec file")->required();

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return run(run_args, out, err);

    if (*fo_cmd) {
      std::vector<int> word;
      if (!fo_input.empty())
        for (auto v : int_list(fo_input, "--input")) word.push_back(static_cast<int>(v));
      const fo::FactorOracle o(word);
      if (fo_as_json) out << io::fo_json(o) << '\n';
      else print_fo_table(o, out);
      if (!fo_dot.empty()) {
        const auto dot = fo::to_dot(o);
        if (fo_dot == "-") {
          out << dot;
        } else {
          std::ofstream f(fo_dot);
          if (!(f << dot)) throw IoFailure("cannot write '" + fo_dot + "'");
        }
      }
      return kOk;
    }

    if (*gp_cmd) {
      std::ifstream in(edges_file);
      if (!in) throw IoFailure("cannot read '" + edges_file + "'");
      models::GraphSpec spec;
      try {
        spec.edges = models::read_edges(in);
      } catch (const SyntaxError& e) {
        err << "error: " << where(edges_file, e) << '\n';
        return kUsage;
      }
      spec.a = from;
      spec.b = to;
      const auto r = models::graph_path_run(spec);
      if (!r.found) {
        out << "unreachable\n";
        return kOk;
      }
      out << "path";
      for (int v : r.path) out << ' ' << v;
      out << '\n';
      return kOk;
    }

    if (*kn_cmd) {
      models::KnetProblem p;
      for (auto v : int_list(pitches, "--pitches")) p.pitches.push_back(static_cast<int>(v));
      p.k = k;
      p.connected = connected;
      const auto sols = models::knets_solve(p, limit);
      if (knets_as_json) {
        out << models::knets_json(sols) << '\n';
      } else {
        for (const auto& s : sols) out << models::knet_rows(s) << '\n';
        out << sols.size() << " solution" << (sols.size() == 1 ? "" : "s") << '\n';
      }
      return kOk;
    }

    if (*ccfomi_cmd) {
      const auto cfg = models::ccfomi_bench_config(processes, bench_units, bench_seed);
      const auto r = models::ccfomi_run(cfg);
      out << std::fixed << std::setprecision(1);
      out << "units " << bench_units << '\n';
      out << "states " << cfg.states << '\n';
      out << "processes_per_unit " << r.mean_scheduled << '\n';
      out << "mean_ms " << std::setprecision(3) << r.mean_elapsed_us / 1000.0 << '\n';
      out << "max_ms " << r.max_elapsed_us / 1000.0 << '\n';
      return kOk;
    }

    if (*lint_cmd) {
      const std::string text = slurp(lint_file);
      dsl::SpecAst ast;
      try {
        ast = dsl::parse(text);
      } catch (const SyntaxError& e) {
        err << "error: " << where(lint_file, e) << '\n';
        return kUsage;
      }
      bool errors = false;
      for (const auto& f : dsl::lint(ast)) {
        out << (f.error ? "error" : "warning") << ": " << f.rule << ": " << f.message << '\n';
        errors = errors || f.error;
      }
      return errors ? kRuntime : kOk;
    }
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  } catch (const UnknownName& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArityError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace ntcc::cli
