#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = NTCC_SOURCE_DIR;
const fs::path kGolden = kRoot / "tests" / "golden";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

// "@" at the start of an argument stands for the source root.
Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ntcc");
  std::vector<const char*> argv;
  for (auto& a : args) {
    if (a.starts_with("@")) a = (kRoot / a.substr(1)).string();
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int code = ntcc::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Set NTCC_UPDATE_GOLDEN=1 to rewrite the files instead of comparing.
void check_golden(const std::string& name, const std::string& actual) {
  const fs::path file = kGolden / name;
  if (std::getenv("NTCC_UPDATE_GOLDEN")) {
    std::ofstream(file) << actual;
    return;
  }
  REQUIRE_MESSAGE(fs::exists(file), "missing golden " << file);
  CHECK(slurp(file) == actual);
}

struct Case {
  const char* golden;
  std::vector<std::string> args;
  int code;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("end to end against golden output") {
  const std::vector<Case> cases = {
      {"run_tell_ask.out", {"run", "@specs/tell_ask.ntcc", "--units", "2", "--seed", "3", "--no-timing"}, 0},
      {"run_input.out",
       {"run", "@specs/tell_ask.ntcc", "--units", "3", "--no-timing", "--input", "@tests/golden/tell_ask_input.jsonl"},
       0},
      {"run_args.out", {"run", "@specs/countdown.ntcc", "--units", "4", "--args", "3", "--no-timing"}, 0},
      {"run_cells.out", {"run", "@specs/cells.ntcc", "--units", "4", "--no-timing"}, 0},
      {"run_ccfomi.out",
       {"run", "@specs/ccfomi.ntcc", "--units", "9", "--no-timing", "--input", "@specs/ccfomi_input.jsonl"},
       0},
      {"run_clash.out", {"run", "@tests/golden/clash.ntcc", "--units", "3", "--no-timing"}, 1},
      {"fo_table.out", {"fo", "--input", "60,62,62"}, 0},
      {"fo_json.out", {"fo", "--input", "60,62,62", "--json"}, 0},
      {"fo_dot.out", {"fo", "--input", "1,2,2", "--dot", "-"}, 0},
      {"graph_path.out", {"graph-path", "--edges", "@tests/golden/edges.txt", "--from", "4", "--to", "5"}, 0},
      {"graph_path_unreachable.out", {"graph-path", "--edges", "@tests/golden/edges.txt", "--from", "5", "--to", "1"}, 0},
      {"knets.out", {"knets", "--pitches", "3,10,11", "--k", "1"}, 0},
      {"knets_json.out", {"knets", "--pitches", "3,10,11", "--k", "1", "--json", "--limit", "2"}, 0},
      {"lint_clean.out", {"lint", "@specs/sync.ntcc"}, 0},
      {"lint_forbidden.out", {"lint", "@tests/golden/forbidden.ntcc"}, 1},
  };
  for (const auto& c : cases) {
    CAPTURE(c.golden);
    const auto r = run_cli(c.args);
    CHECK(r.code == c.code);
    check_golden(c.golden, r.out);
  }
}

TEST_CASE("inconsistent unit reports the error object") {
  const auto r = run_cli({"run", "@tests/golden/clash.ntcc", "--units", "3", "--no-timing"});
  CHECK(r.code == 1);
  CHECK(r.out.ends_with("{\"error\":\"inconsistent\",\"tu\":1}\n"));
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("same seed gives byte-identical traces") {
  const std::vector<std::string> args = {"run", "@specs/star_delay.ntcc", "--units", "6", "--seed", "5", "--no-timing"};
  const auto a = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == run_cli(args).out);

  std::istringstream lines(run_cli({"run", "@specs/choice.ntcc", "--units", "3", "--no-timing"}).out);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 4);
  for (int tu = 0; tu < 3; ++tu) CHECK(all[tu + 1].starts_with("{\"tu\":" + std::to_string(tu) + ","));
}

TEST_CASE("dot output to a file") {
  const fs::path file = fs::temp_directory_path() / "ntcc_cli_test.dot";
  const auto r = run_cli({"fo", "--input", "1,2,2", "--dot", file.string()});
  CHECK(r.code == 0);
  const auto stdout_run = run_cli({"fo", "--input", "1,2,2", "--dot", "-"});
  CHECK(r.out + slurp(file) == stdout_run.out);
  fs::remove(file);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"run", "@specs/tell_ask.ntcc", "--units", "0"}).code == 2);
  CHECK(run_cli({"run", "@specs/tell_ask.ntcc"}).code == 2);
  CHECK(run_cli({"run", "@specs/countdown.ntcc", "--units", "2"}).code == 2);
  CHECK(run_cli({"run", "@specs/countdown.ntcc", "--units", "2", "--args", "x"}).code == 2);
  CHECK(run_cli({"knets", "--pitches", "3,,11", "--k", "1"}).code == 2);
  CHECK(run_cli({"fo", "--input", "a,b"}).code == 2);
  CHECK(run_cli({"bench"}).code == 2);

  const auto parse = run_cli({"run", "@tests/golden/unbalanced.ntcc", "--units", "1"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("unbalanced.ntcc:") != std::string::npos);
  CHECK(parse.out.empty());

  const auto input = run_cli({"run", "@specs/tell_ask.ntcc", "--units", "1", "--input", "@tests/golden/bad_input.jsonl"});
  CHECK(input.code == 2);
  CHECK(input.err.find("bad_input.jsonl:1") != std::string::npos);

  CHECK(run_cli({"lint", "@tests/golden/unbalanced.ntcc"}).code == 2);
  CHECK(run_cli({"graph-path", "--edges", "@tests/golden/clash.ntcc", "--from", "1", "--to", "2"}).code == 2);
}

TEST_CASE("io failures exit with 1") {
  CHECK(run_cli({"run", "@no/such/file.ntcc", "--units", "1"}).code == 1);
  CHECK(run_cli({"run", "@specs/tell_ask.ntcc", "--units", "1", "--input", "@no/such.jsonl"}).code == 1);
  CHECK(run_cli({"graph-path", "--edges", "@no/such.txt", "--from", "1", "--to", "2"}).code == 1);
  CHECK(run_cli({"lint", "@no/such/file.ntcc"}).code == 1);
  CHECK(run_cli({"fo", "--input", "1", "--dot", "/no/such/dir/x.dot"}).code == 1);
}

TEST_CASE("help exits with 0") {
  const auto r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("graph-path") != std::string::npos);
}

TEST_CASE("bench ccfomi prints its measurements") {
  const auto r = run_cli({"bench", "ccfomi", "--processes-per-unit", "60", "--units", "10", "--seed", "2"});
  CHECK(r.code == 0);
  for (const char* key : {"units 10\n", "states ", "processes_per_unit ", "mean_ms ", "max_ms "})
    CHECK(r.out.find(key) != std::string::npos);
}

TEST_CASE("timing fields are present when enabled") {
  const auto r = run_cli({"run", "@specs/bang_clock.ntcc", "--units", "2", "--fixed-unit-ms", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"elapsed_us\":") != std::string::npos);
}

}  // TEST_SUITE
