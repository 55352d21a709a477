#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sphint/report_io.hpp"

using namespace sphint;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sphint");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  int code = 0;
  const auto cfg = cli::parse_args(static_cast<int>(argv.size()), argv.data(), code);
  if (!cfg) return {code, "", ""};
  std::ostringstream out, err;
  code = cli::run(*cfg, out, err);
  return {code, out.str(), err.str()};
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.rfind("# generated: ", 0) == 0 || line.find("\"generated\":") != std::string::npos) continue;
    kept += line + "\n";
  }
  return kept;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("poincare artifact matches the beta oracle") {
  const auto r = invoke({"poincare", "--function", "x4", "--k", "1", "--n-grid", "10,100,1000,10000"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto doc = parse_csv(in);
  CHECK(doc.meta_value("version") == "0.1.0");
  CHECK(doc.has_meta("config"));
  CHECK(nlohmann::json::parse(doc.meta_value("config"))["function"] == "x4");
  const auto report = convergence_report_from_csv(doc);
  REQUIRE(report.n_grid.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(report.abs_errors[i] - 6.0 / (static_cast<double>(report.n_grid[i]) + 2.0)) < 1e-6);
  }
}

TEST_CASE("counterexample tail is not certified") {
  const auto r = invoke({"tail", "--function", "counterexample", "--m-grid", "1,2,4", "--n-grid", "10,100"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto doc = parse_csv(in);
  CHECK(doc.meta_value("double_limit_zero") == "false");
  CHECK(doc.meta_value("diagnosis").rfind("column limit = 1 for every m", 0) == 0);
}

TEST_CASE("exit codes") {
  const auto unknown = invoke({"poincare", "--function", "nope"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("x4") != std::string::npos);
  CHECK(unknown.err.find("exp_half_abs") != std::string::npos);
  CHECK(invoke({"poincare", "--k", "abc"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"inequality", "--function", "abs", "--p", "1"}).code == 2);
  CHECK(invoke({"sample", "--n-grid", "3", "--k", "2"}).code == 2);
  CHECK(invoke({"epsilon-dim", "--p", "2", "--epsilon", "1e-9"}).code == 3);
}

TEST_CASE("determinism across every subcommand") {
  const std::vector<std::vector<std::string>> runs = {
      {"poincare", "--function", "unit_interval", "--n-grid", "10,100"},
      {"tail", "--function", "x4", "--m-grid", "1,16,81", "--n-grid", "100,1000,10000"},
      {"inequality", "--function", "abs", "--p", "2"},
      {"epsilon-dim", "--p", "2", "--epsilon", "1"},
      {"rl", "--function", "abs", "--n-grid", "1,2,3"},
      {"gas", "--particles", "50", "--samples", "2000", "--seed", "9"},
      {"sample", "--n-grid", "40", "--k", "2", "--count", "500", "--seed", "3", "--format", "json"},
      {"wlln", "--n-grid", "10,100", "--trials", "2000", "--threads", "2"},
  };
  for (const auto& args : runs) {
    const auto a = invoke(args);
    const auto b = invoke(args);
    CAPTURE(args.front());
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
    const bool tagged = a.out.find("# schema-version: 1") != std::string::npos || a.out.find("\"schema_version\"") != std::string::npos;
    CHECK(tagged);
  }
}

TEST_CASE("artifact files are written atomically and round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "sphint_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "wlln.csv";
  const auto bin = dir / "points.bin";
  REQUIRE(invoke({"wlln", "--n-grid", "10,100", "--trials", "500", "-o", csv.string()}).code == 0);
  std::ifstream in(csv);
  const auto rows = wlln_rows_from_csv(parse_csv(in));
  CHECK(rows.size() == 2);
  REQUIRE(invoke({"sample", "--n-grid", "30", "--k", "1", "--count", "64", "--dump", bin.string(), "-o",
                  (dir / "points.csv").string()})
              .code == 0);
  CHECK(std::filesystem::file_size(bin) == 32 + 64 * 8);
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    CHECK(e.path().string().find(".tmp.") == std::string::npos);
  }
  const auto json_out = dir / "gas.json";
  REQUIRE(invoke({"gas", "--particles", "5", "--samples", "10", "--format", "json", "-o", json_out.string()}).code == 0);
  const auto j = nlohmann::json::parse(slurp(json_out));
  CHECK(j["schema_version"] == 1);
  CHECK(j["result"]["velocities"].size() == 10);
  std::filesystem::remove_all(dir);
}
