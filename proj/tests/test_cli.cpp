// End-to-end checks of the gcqw binary. The test runner passes the binary
// path through the GCQW_BIN environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string binary_path() {
  const char* env = std::getenv("GCQW_BIN");
  REQUIRE_MESSAGE(env != nullptr, "GCQW_BIN must point at the gcqw binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) result.output += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> trailing_meta;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      (seen_header ? csv.trailing_meta : csv.meta).push_back(line);
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) cells.push_back(tok);
    if (!seen_header) {
      csv.header = cells;
      seen_header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        row.push_back(std::stod(c));
      } catch (...) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    csv.rows.push_back(row);
  }
  return csv;
}

std::filesystem::path tmp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("multi-recurrence").exit_code != 0);         // missing required
  CHECK(run("does-not-exist --p 3").exit_code != 0);     // unknown subcommand
}

TEST_CASE("invalid physics parameters exit nonzero with a JSON diagnostic") {
  const auto r = run("multi-recurrence --p 4 --D 1.5 --k-max 3");
  CHECK(r.exit_code != 0);
  const auto pos = r.output.find('{');
  REQUIRE(pos != std::string::npos);
  const auto j = nlohmann::json::parse(r.output.substr(pos));
  CHECK(j.contains("error"));
}

TEST_CASE("identical invocations produce byte-identical files") {
  const auto f1 = tmp_file("gcqw_test_det_1.csv");
  const auto f2 = tmp_file("gcqw_test_det_2.csv");
  const std::string args = "multi-recurrence --p 4 --D 0.5 --k-max 5 --out ";
  CHECK(run(args + f1.string()).exit_code == 0);
  CHECK(run(args + f2.string()).exit_code == 0);
  const auto a = slurp(f1);
  const auto b = slurp(f2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::filesystem::remove(f1);
  std::filesystem::remove(f2);
}

TEST_CASE("recurrence-sweep endpoints") {
  const auto f = tmp_file("gcqw_test_sweep.csv");
  CHECK(run("recurrence-sweep --p 4 --q 1 --D 0 --D 1 --out " + f.string())
            .exit_code == 0);
  const auto csv = parse_csv(slurp(f));
  REQUIRE(csv.header ==
          std::vector<std::string>{"D", "P_T_simulated", "P_T_formula"});
  REQUIRE(csv.rows.size() == 2);
  CHECK(std::abs(csv.rows[0][1] - 1.0) < 1e-12);  // D = 0: both columns 1
  CHECK(csv.rows[0][2] == 1.0);
  CHECK(csv.rows[1][1] == 0.0);  // D = 1: both exactly 0 (disjoint supports)
  CHECK(csv.rows[1][2] == 0.0);
  std::filesystem::remove(f);
}

TEST_CASE("multi-recurrence table") {
  const auto f = tmp_file("gcqw_test_multi.csv");
  CHECK(run("multi-recurrence --p 10 --D 0.5 --k-max 8 --out " + f.string())
            .exit_code == 0);
  const auto csv = parse_csv(slurp(f));
  REQUIRE(csv.rows.size() == 9);
  CHECK(std::abs(csv.rows[0][1] - 1.0) < 1e-12);  // k = 0
  CHECK(csv.rows[0][2] == 1.0);
  for (const auto& row : csv.rows) {
    CHECK(std::abs(row[1] - row[2]) < 0.05);  // simulation tracks the law
  }
  std::filesystem::remove(f);
}

TEST_CASE("json format is well-formed and carries the same data") {
  const auto r = run("multi-recurrence --p 4 --D 0.5 --k-max 3 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["meta"]["tool"].get<std::string>().find("gcqw") == 0);
  CHECK(j["columns"].size() == 3);
  CHECK(j["rows"].size() == 4);
  CHECK(std::abs(j["rows"][0][1].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("sigma-dynamics emits the ballistic column") {
  const auto f = tmp_file("gcqw_test_sigma.csv");
  CHECK(run("sigma-dynamics --p 4 --D 1 --t-max 10 --out " + f.string())
            .exit_code == 0);
  const auto csv = parse_csv(slurp(f));
  REQUIRE(csv.rows.size() == 11);
  // D = 1 walks ballistically: sigma = t exactly in both columns
  for (const auto& row : csv.rows) {
    CHECK(std::abs(row[1] - row[0]) < 1e-10);
    CHECK(std::abs(row[2] - row[0]) < 1e-12);
  }
  std::filesystem::remove(f);
}

TEST_CASE("spectrum emits closed form plus numeric for odd p, numeric only for even") {
  const auto odd = run("spectrum --p 3 --N 21 --d 0.5 --q 1");
  CHECK(odd.exit_code == 0);
  CHECK(odd.output.find("closed_form") != std::string::npos);
  CHECK(odd.output.find("numeric") != std::string::npos);
  const auto csv = parse_csv(odd.output);
  REQUIRE(csv.rows.size() == 2 * 42);  // both sources, 2N levels each

  const auto even = run("spectrum --p 4 --N 24 --d 0.5 --q 1");
  CHECK(even.exit_code == 0);
  CHECK(even.output.find("closed_form_unit_modulus_error") != std::string::npos);
  const auto even_csv = parse_csv(even.output);
  REQUIRE(even_csv.rows.size() == 48);  // numeric only
}

TEST_CASE("localization summary lines") {
  const auto r = run("localization --D 0.5 --phi 0.5 --t-max 60");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("# max_sigma=") != std::string::npos);
  CHECK(r.output.find("# sigma_max_formula=") != std::string::npos);
}

TEST_CASE("bloch-compare reports peaks and ODE gates") {
  const auto r = run("bloch-compare --D 0.25 --q 1 --p 10 --t-max 40");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("peak_1_discrete_t") != std::string::npos);
  CHECK(r.output.find("ode_step_doubling_delta") != std::string::npos);
  const auto csv = parse_csv(r.output);
  REQUIRE(csv.header == std::vector<std::string>{"t", "P_discrete", "P_ode",
                                                 "P_closed_form"});
  REQUIRE(csv.rows.size() == 21);  // even t only
}

TEST_CASE("bloch-compare with a frozen coin") {
  // d = 0 decouples the continuum modes (both continuum columns stay at 1);
  // the discrete walk still accrues site phases between recurrences, giving
  // P(t) = cos^2(t Phi / 2) with perfect recurrences at t = k T~.
  const auto r = run("bloch-compare --D 0 --q 1 --p 10 --t-max 20");
  CHECK(r.exit_code == 0);
  const auto csv = parse_csv(r.output);
  const double Phi = 2.0 * std::acos(-1.0) / 10.0;
  for (const auto& row : csv.rows) {
    const double t = row[0];
    CHECK(std::abs(row[1] - std::pow(std::cos(t * Phi / 2.0), 2)) < 1e-12);
    CHECK(std::abs(row[2] - 1.0) < 1e-12);
    CHECK(row[3] == 1.0);
  }
  CHECK(std::abs(csv.rows[5][1] - 1.0) < 1e-12);  // t = T~ = 10
}

TEST_CASE("evolve honors explicit N and rejects sigma-breaking choices") {
  const auto ok = run("evolve --D 0.5 --t-max 10 --N 64");
  CHECK(ok.exit_code == 0);
  const auto bad = run("evolve --D 0.5 --t-max 40 --N 64");
  CHECK(bad.exit_code != 0);
  CHECK(bad.output.find("sigma undefined") != std::string::npos);
  const auto both = run("evolve --D 0.5 --d 0.5 --t-max 4");
  CHECK(both.exit_code != 0);
}

TEST_CASE("custom initial state flag") {
  const auto r = run("evolve --D 0.5 --t-max 6 --initial 0:1,0,0,0");
  CHECK(r.exit_code == 0);
  const auto csv = parse_csv(r.output);
  REQUIRE(!csv.rows.empty());
  CHECK(csv.rows[0][1] == 1.0);
}
