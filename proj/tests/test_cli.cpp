#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

const std::string kCli = SGQVI_CLI_PATH;

int run(const std::string& args, const std::string& out = "cli_out.txt") {
  const int status =
      std::system((kCli + " " + args + " > " + out + " 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream s(line);
  std::string cell;
  while (std::getline(s, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("generate then verify") {
  REQUIRE(run("generate --dims 3 2 --seed 7 -o cli_p.json") == 0);
  CHECK(run("verify cli_p.json") == 0);
  CHECK(slurp("cli_out.txt").find("PASS") != std::string::npos);
  CHECK(run("verify cli_p.json --json") == 0);
  CHECK(slurp("cli_out.txt").find("\"contraction_violations\": 0") !=
        std::string::npos);
  CHECK(run("certify cli_p.json") == 0);
}

TEST_CASE("certify rejects a gamma outside the interval") {
  REQUIRE(run("generate --dims 3 2 --seed 7 -o cli_p.json") == 0);
  CHECK(run("certify cli_p.json --gamma 99") == 3);
  CHECK(slurp("cli_out.txt").find("γ outside (0, 2/‖A‖²)") !=
        std::string::npos);
  CHECK(run("solve cli_p.json --gamma 99 --strict") == 3);
}

TEST_CASE("solve writes a bounded trace") {
  REQUIRE(run("generate --dims 3 2 --seed 7 -o cli_p.json") == 0);
  REQUIRE(run("solve cli_p.json --trace cli_t.csv --x0 3 -2 1") == 0);
  std::istringstream in(slurp("cli_t.csv"));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);
  REQUIRE(line == "iter,residual,error,bound_factor");
  double prev_error = -1, prev_factor = 0;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    REQUIRE(cells.size() == 4);
    const double error = std::stod(cells[2]);
    const double factor = std::stod(cells[3]);
    if (prev_error >= 0) CHECK(error <= prev_factor * prev_error + 1e-9);
    prev_error = error;
    prev_factor = factor;
    ++rows;
  }
  CHECK(rows > 2);
}

TEST_CASE("exit codes") {
  {
    std::ofstream bad("cli_bad.json");
    bad << "{\"dims\": [1,\n";
  }
  CHECK(run("solve cli_bad.json") == 2);
  CHECK(slurp("cli_out.txt").find("line 2") != std::string::npos);
  {
    std::ofstream missing("cli_missing.json");
    missing << R"({"dims": [1, 1], "A": [[1]], "sets": {"C1": {"type": "whole"}}})";
  }
  CHECK(run("certify cli_missing.json") == 2);
  CHECK(slurp("cli_out.txt").find("/sets/C2") != std::string::npos);
  CHECK(run("") == 1);
  CHECK(run("solve") == 1);
  CHECK(run("solve cli_p.json --rho1 -1") == 1);
  CHECK(run("solve cli_p.json --max-iters 3") == 4);
}

TEST_CASE("runs are byte-identical") {
  REQUIRE(run("generate --family boundary --dims 4 3 --seed 11 -o cli_a.json") ==
          0);
  REQUIRE(run("generate --family boundary --dims 4 3 --seed 11 -o cli_b.json") ==
          0);
  CHECK(slurp("cli_a.json") == slurp("cli_b.json"));
  REQUIRE(run("solve cli_a.json --trace cli_a.csv --dump-coords") == 0);
  REQUIRE(run("solve cli_b.json --trace cli_b.csv --dump-coords") == 0);
  CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
  CHECK_FALSE(slurp("cli_a.csv").empty());
}
