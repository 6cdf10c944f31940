#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "markov/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

// Runs the binary through the shell; `env` is prepended verbatim, so it can
// carry VAR=value assignments.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string(MARKOV_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string data_file(const char* name) {
  return (fs::path(MARKOV_DATA_DIR) / name).string();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("markov_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_file(const char* name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("cli requires a subcommand and rejects unknown flags") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("generate --matrix x.csv --n 10 --frobnicate").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli generate emits a chain over the matrix's states") {
  const RunResult r = run_cli("generate --matrix " + data_file("eq8.csv") +
                              " --n 10 --seed 1");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.output);
  const markov::StateSequence seq = markov::io::parse_sequence_csv(in, 4);
  CHECK(seq.size() == 10);
}

TEST_CASE("cli generate from an absorbing point mass repeats the state") {
  const std::string id3 = write_file("id3.csv", "1,0,0\n0,1,0\n0,0,1\n");
  const RunResult r = run_cli("generate --matrix " + id3 + " --n 4 --initial 3 --seed 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output == "3,3,3,3\n");
}

TEST_CASE("cli generate rejects a matrix whose rows do not sum to 1") {
  const std::string bad = write_file("bad_rows.csv", "0.6,0.5\n0.5,0.5\n");
  const RunResult r = run_cli("generate --matrix " + bad + " --n 10");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("row 0 sums to 1.1") != std::string::npos);
}

TEST_CASE("cli estimate reproduces the hand-counted matrix") {
  const RunResult r = run_cli("estimate --sequence " + data_file("table1_sample1.csv") +
                              " --d 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output ==
        "1.000000,0.000000,0.000000,0.000000\n"
        "0.000000,0.000000,0.000000,1.000000\n"
        "0.000000,0.000000,0.000000,1.000000\n"
        "0.200000,0.200000,0.400000,0.200000\n");
}

TEST_CASE("cli estimate with --u smooths every entry positive") {
  const RunResult r = run_cli("estimate --sequence " + data_file("table1_sample1.csv") +
                              " --d 4 --u 0.5");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> rows = lines_of(r.output);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "0.581139,0.139620,0.139620,0.139620");
  CHECK(r.output.find("0.000000") == std::string::npos);
}

TEST_CASE("cli estimate emits JSON on request") {
  const RunResult r = run_cli("estimate --sequence " + data_file("table1_sample1.csv") +
                              " --d 4 --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j.at("d") == 4);
  CHECK(j.at("rows")[3][2] == 0.4);
}

TEST_CASE("cli estimate fails cleanly on a single observation") {
  const std::string one = write_file("one_obs.csv", "2\n");
  const RunResult r = run_cli("estimate --sequence " + one + " --d 2");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("cli bootstrap reports a sparse cell as a degenerate interval") {
  const RunResult r = run_cli("bootstrap --matrix " + data_file("sec7_phat.csv") +
                              " --n 100 --B 200 --seed 4");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j.at("d") == 4);
  CHECK(j.at("B") == 200);
  CHECK(j.at("alpha") == 0.05);
  // Cell (3,1) is structurally unreachable under this generator.
  const auto& mean_31 = j.at("mean")[8];
  CHECK(mean_31.at("i") == 3);
  CHECK(mean_31.at("j") == 1);
  CHECK(mean_31.at("value") == 0.0);
  CHECK(j.at("cis")[8].at("lower") == 0.0);
  CHECK(j.at("cis")[8].at("upper") == 0.0);
}

TEST_CASE("cli bootstrap needs at least two resamples") {
  const RunResult r = run_cli("bootstrap --matrix " + data_file("sec7_phat.csv") +
                              " --n 100 --B 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("at least 2 resamples") != std::string::npos);
}

TEST_CASE("cli bootstrap output does not depend on the worker count") {
  const std::string args = "bootstrap --matrix " + data_file("pII.csv") +
                           " --n 50 --B 64 --seed 11";
  const RunResult serial = run_cli(args + " --workers 1");
  const RunResult parallel = run_cli(args + " --workers 4");
  REQUIRE(serial.exit_code == 0);
  CHECK(serial.output == parallel.output);
  // And repeated runs are byte-identical.
  CHECK(run_cli(args + " --workers 4").output == parallel.output);
}

TEST_CASE("cli seed can come from the environment") {
  const std::string args = "generate --matrix " + data_file("eq8.csv") + " --n 25";
  const RunResult flagged = run_cli(args + " --seed 7");
  const RunResult from_env = run_cli(args, "MARKOV_SMOOTH_SEED=7");
  REQUIRE(flagged.exit_code == 0);
  REQUIRE(from_env.exit_code == 0);
  CHECK(flagged.output == from_env.output);
  CHECK(run_cli(args + " --seed 8").output != flagged.output);
}

TEST_CASE("cli study prints one CSV row per (matrix, n, u)") {
  const RunResult r = run_cli("study " + data_file("table5_desk.json") +
                              " --R 3 --B 50 --workers 4");
  REQUIRE(r.exit_code == 0);
  const std::vector<std::string> rows = lines_of(r.output);
  REQUIRE(rows.size() == 25);
  CHECK(rows[0] == "matrix,n,u,coverage_11,width_11,coverage_12,width_12,R");
  CHECK(rows[1].rfind("P_I,25,0.5,", 0) == 0);
  CHECK(rows[24].rfind("P_II,100,inf,", 0) == 0);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].substr(rows[k].size() - 2) == ",3");
  }
}

TEST_CASE("cli study with --out writes CSV and prints the table") {
  const std::string out = (scratch_dir() / "report.csv").string();
  const RunResult r = run_cli("study " + data_file("table5_desk.json") +
                              " --R 2 --B 50 --workers 4 --out " + out);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("P_I P11") != std::string::npos);
  CHECK(r.output.find("P_II P12") != std::string::npos);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "matrix,n,u,coverage_11,width_11,coverage_12,width_12,R");
}

TEST_CASE("cli study fails cleanly on a missing config") {
  const RunResult r = run_cli("study " + (scratch_dir() / "nope.json").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("cli steady prints the stationary distribution") {
  const RunResult sym = run_cli("steady --matrix " + data_file("pI.csv"));
  REQUIRE(sym.exit_code == 0);
  CHECK(sym.output == "0.333333,0.333333,0.333333\n");

  const std::string two = write_file("two_state.csv", "0.8,0.2\n0.2,0.8\n");
  const RunResult half = run_cli("steady --matrix " + two);
  REQUIRE(half.exit_code == 0);
  CHECK(half.output == "0.5,0.5\n");
}

TEST_CASE("cli steady reports NoLimit for a chain without one") {
  const std::string id2 = write_file("id2.csv", "1,0\n0,1\n");
  const RunResult r = run_cli("steady --matrix " + id2);
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("NoLimit") != std::string::npos);

  const std::string swap = write_file("swap.csv", "0,1\n1,0\n");
  CHECK(run_cli("steady --matrix " + swap).exit_code == 3);
}

TEST_CASE("cli generate then estimate recovers the matrix") {
  const std::string chain = (scratch_dir() / "chain.csv").string();
  const RunResult gen = run_cli("generate --matrix " + data_file("eq8.csv") +
                                " --n 100000 --seed 1 --out " + chain);
  REQUIRE(gen.exit_code == 0);
  // JSON output keeps full precision, so it re-validates; 6-decimal CSV
  // rows can sum to 0.999999 and be rejected on re-ingestion.
  const RunResult est = run_cli("estimate --sequence " + chain + " --d 4 --format json");
  REQUIRE(est.exit_code == 0);

  std::istringstream in(est.output);
  const markov::TransitionMatrix p_hat = markov::io::parse_matrix_json(in);
  const markov::TransitionMatrix truth = markov::io::read_matrix(data_file("eq8.csv"));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(p_hat(i, j) - truth(i, j)) < 0.02);
    }
  }
}
