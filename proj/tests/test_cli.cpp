#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(BGRD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {status, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("bounds sweep is deterministic") {
  const std::string args = "bounds --p 0.1 --d-min 0.01 --d-max 0.05 --points 4";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  const auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 5);  // header + 4 points
  CHECK(rows[0][0] == "D");
  CHECK(rows[0][4] == "lb_improved");
}

TEST_CASE("bounds columns are invariant under variance scaling") {
  const RunResult unit = run_cli("bounds --p 0.1 --d-min 0.01 --d-max 0.05 --points 3");
  const RunResult scaled =
      run_cli("bounds --p 0.1 --sigma2 4 --d-min 0.04 --d-max 0.2 --points 3");
  REQUIRE(unit.status == 0);
  REQUIRE(scaled.status == 0);
  const auto u = parse_csv(unit.out);
  const auto s = parse_csv(scaled.out);
  REQUIRE(u.size() == s.size());
  for (std::size_t r = 1; r < u.size(); ++r)
    for (std::size_t c = 1; c < u[r].size(); ++c) CHECK(u[r][c] == s[r][c]);
}

TEST_CASE("single-point sweep at D = p gives the degenerate row") {
  const RunResult res = run_cli("bounds --p 0.1 --d-min 0.1 --d-max 0.1 --points 1");
  REQUIRE(res.status == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][2] == "0");  // ub2
  CHECK(rows[1][3] == "0");  // lb_trivial
}

TEST_CASE("ri sweep emits the asymptote column and non-increasing values") {
  const RunResult res =
      run_cli("ri --p 0.1 --d-min 1e-4 --d-max 1e-2 --points 5 --spacing log");
  REQUIRE(res.status == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0][2] == "asymptote");
  double prev = 1e9;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double ri = std::stod(rows[r][1]);
    CHECK(ri <= prev + 1e-5);
    prev = ri;
    CHECK(std::stod(rows[r][2]) == doctest::Approx(0.33219281).epsilon(1e-6));
  }
}

TEST_CASE("json output is parseable and deterministic") {
  const std::string args = "--format json typicality --n 100 --trials 5 --seed 3";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.front() == '[');
  CHECK(a.out.find("\"fraction_typical\"") != std::string::npos);
}

TEST_CASE("simulate-codec reports the sandwich columns") {
  const std::string args =
      "simulate-codec --n 2000 --blocks 5 --target-d 0.025 --seed 7";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const auto rows = parse_csv(a.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].back() == "ub2");
  CHECK(rows[0][10] == "lb_improved");
}

TEST_CASE("simulate-channel runs end to end") {
  const RunResult res = run_cli(
      "simulate-channel --n 200 --rate-tilde 0.02 --d 0.01 --trials 10 --seed 2");
  REQUIRE(res.status == 0);
  const auto rows = parse_csv(res.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][3] == "error_rate");
  const double err = std::stod(rows[1][3]);
  CHECK(err >= 0.0);
  CHECK(err <= 1.0);
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(run_cli("").status != 0);                       // missing subcommand
  CHECK(run_cli("bounds --no-such-flag 1").status != 0);
  CHECK(run_cli("bounds --points 0").status != 0);      // empty grid
  CHECK(run_cli("simulate-codec --blocks 0").status != 0);
  CHECK(run_cli("--format yaml bounds").status != 0);   // unknown format
  CHECK(run_cli("--p 2.0 bounds").status != 0);         // invalid probability
}

TEST_CASE("config file supplies defaults but flags win") {
  const std::string path = "/tmp/bgrd_cli_test_cfg.ini";
  FILE* f = fopen(path.c_str(), "w");
  REQUIRE(f != nullptr);
  fputs("p=0.2\n", f);
  fclose(f);

  const std::string sweep = "bounds --d-min 0.02 --d-max 0.02 --points 1";
  const RunResult from_cfg = run_cli("--config " + path + " " + sweep);
  const RunResult from_flag = run_cli("--p 0.2 " + sweep);
  REQUIRE(from_cfg.status == 0);
  CHECK(from_cfg.out == from_flag.out);

  // an explicit flag overrides the config value
  const RunResult overridden = run_cli("--config " + path + " --p 0.1 " + sweep);
  const RunResult plain = run_cli("--p 0.1 " + sweep);
  CHECK(overridden.out == plain.out);
  std::remove(path.c_str());
}

TEST_CASE("output file sink matches stdout") {
  const std::string path = "/tmp/bgrd_cli_test_out.csv";
  const RunResult direct = run_cli("bounds --d-min 0.02 --d-max 0.02 --points 1");
  const RunResult sunk =
      run_cli("bounds --d-min 0.02 --d-max 0.02 --points 1 --out " + path);
  REQUIRE(sunk.status == 0);
  CHECK(sunk.out.empty());
  FILE* f = fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::string file_text;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), f)) > 0) file_text.append(buf, got);
  fclose(f);
  std::remove(path.c_str());
  CHECK(file_text == direct.out);
}
