#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lcap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = lcap::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("column headers match the golden files") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"table1", {"table1", "--trials", "20"}},
      {"table2", {"table2", "--trials", "20"}},
      {"fig1", {"fig1", "--grid", "3"}},
      {"fig3", {"fig3", "--grid", "3"}},
      {"capacity", {"capacity", "--m", "3"}},
      {"sqrt-law", {"sqrt-law", "--m", "5"}},
      {"check", {"check", "--trials", "5"}},
  };
  for (const auto& [name, args] : cases) {
    const Run r = run(args);
    CHECK_MESSAGE(r.code == 0, name << ": " << r.err);
    CHECK(first_line(r.out) == first_line(read_file(std::string(LCAP_GOLDEN_DIR) + "/" + name + ".header")));
  }
}

TEST_CASE("deterministic outputs match golden files") {
  CHECK(run({"fig1", "--grid", "11"}).out == read_file(std::string(LCAP_GOLDEN_DIR) + "/fig1_grid11.csv"));
  CHECK(run({"sqrt-law", "--alphabet", "2", "--m", "10", "--m", "25"}).out ==
        read_file(std::string(LCAP_GOLDEN_DIR) + "/sqrt_law_n2.csv"));
}

TEST_CASE("table1 contains the fair-coin capacity") {
  const Run r = run({"table1", "--trials", "1000", "--seed", "42"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[1].rfind("10,", 0) == 0);
  CHECK(rows[1].find(",0.123046875") != std::string::npos);
}

TEST_CASE("fig1 at s = 0.5") {
  const Run r = run({"fig1", "--grid", "101"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 102);
  CHECK(rows[51].rfind("0.5,0,0.5,", 0) == 0);
}

TEST_CASE("same arguments give byte-identical output") {
  const auto a = run({"table2", "--trials", "300", "--seed", "9", "--format", "json"});
  const auto b = run({"table2", "--trials", "300", "--seed", "9", "--format", "json"});
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc.at("m").size() == 5);
  CHECK(doc.at("true_risk").at(0) == 0.5);
  std::vector<std::string> keys;
  const auto ordered = nlohmann::ordered_json::parse(a.out);
  for (auto it = ordered.begin(); it != ordered.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"m", "R_emp_mc", "stderr", "bound_det", "bound_rand", "true_risk"});
}

TEST_CASE("writes to --out") {
  const auto path = (std::filesystem::temp_directory_path() / "lcap_cli_test.csv").string();
  const Run r = run({"fig3", "--m", "11", "--grid", "3", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(lines(read_file(path)).size() == 4);
  std::remove(path.c_str());
}

TEST_CASE("check passes") {
  const Run r = run({"check", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",fail\n") == std::string::npos);
  CHECK(lines(r.out).size() == 12);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"table3"}).code == 2);
  CHECK(run({"table1", "--trials", "0"}).code == 2);
  CHECK(run({"table1", "--m", "-4"}).code == 2);
  CHECK(run({"table1", "--format", "xml"}).code == 2);
  CHECK(run({"fig1", "--phi", "1.5"}).code == 2);
  CHECK(run({"fig3", "--m", "10"}).code == 2);
  CHECK(run({"capacity", "--machine", "majority", "--alphabet", "3"}).code == 2);
  CHECK(run({"capacity", "--machine", "psychic"}).code == 2);
  CHECK(run({"table1", "--trials", "abc"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("resource limits exit with 3") {
  const Run r = run({"capacity", "--machine", "lazy", "--alphabet", "4", "--m", "200"});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());
}
