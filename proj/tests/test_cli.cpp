#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fmpartners/mukai.hpp"

using namespace fmpartners;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"fmpartners"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("count") {
  const auto r54 = invoke({"count", "--d", "54"});
  CHECK(r54.code == cli::kExitOk);
  CHECK(r54.out.find("FM=3") != std::string::npos);
  CHECK(r54.out.find("by_type=(0,2,2,2)") != std::string::npos);
  CHECK(r54.out.find("agree=true") != std::string::npos);

  const auto r18 = invoke({"count", "--d", "18", "--format", "csv"});
  REQUIRE(r18.code == cli::kExitOk);
  const auto rows = lines(r18.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == cli::csv_header());
  CHECK(rows[1] == "18,1,4,0,2,0,0,2,1,1,true");

  const auto r8 = invoke({"count", "--d", "8", "--format", "csv"});
  CHECK(lines(r8.out).at(1) == "8,,4,,,,,,1,,true");

  const auto bad = invoke({"count", "--d", "10"});
  CHECK(bad.code == cli::kExitUsage);
  CHECK(bad.err.find("not admissible") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
  CHECK(invoke({"count"}).code == cli::kExitUsage);
  CHECK(invoke({"count", "--d", "abc"}).code == cli::kExitUsage);
  CHECK(invoke({"table", "--d-max", "60", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(invoke({"verify", "--d-max", "60", "--depth", "deep"}).code == cli::kExitUsage);
  CHECK(invoke({"roots", "--n", "0"}).code == cli::kExitUsage);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
}

TEST_CASE("roots") {
  const auto r = invoke({"roots", "--n", "4", "--list"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "2: [1,3]\n");
  CHECK(invoke({"roots", "--n", "36", "--list"}).out == "4: [1,17,19,35]\n");
  CHECK(invoke({"roots", "--n", "1000000007"}).out == "2\n");
}

TEST_CASE("glue") {
  const auto r = invoke({"glue", "--d", "54"});
  CHECK(r.code == cli::kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].find("descriptors=6") != std::string::npos);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].rfind("TypeII", 0) == 0);
  CHECK(invoke({"glue", "--d", "20"}).code == cli::kExitUsage);
  CHECK(invoke({"glue", "--d", "36"}).out.find("TypeI  b1=") != std::string::npos);
}

TEST_CASE("table") {
  const auto r = invoke({"table", "--d-min", "8", "--d-max", "60"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = lines(r.out);
  std::size_t admissible = 0;
  for (std::uint64_t d = 8; d <= 60; ++d) admissible += mukai::SpecialDiscriminant::admissible(d);
  REQUIRE(rows.size() == admissible + 1);
  bool saw54 = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv(rows[i]);
    REQUIRE(cells.size() == 11);
    CHECK(cells[10] == "true");
    if (cells[0] == "54") {
      saw54 = true;
      CHECK(cells[3] == "0");
      CHECK(cells[4] == "2");
      CHECK(cells[5] == "2");
      CHECK(cells[6] == "2");
      CHECK(cells[8] == "3");
    }
  }
  CHECK(saw54);

  const auto empty = invoke({"table", "--d-min", "9", "--d-max", "11"});
  CHECK(empty.code == cli::kExitOk);
  CHECK(empty.out == cli::csv_header() + "\n");

  CHECK(invoke({"table", "--d-min", "60", "--d-max", "8"}).code == cli::kExitUsage);
  CHECK(invoke({"table", "--d-min", "2", "--d-max", "8"}).code == cli::kExitUsage);
}

TEST_CASE("CSV and JSON carry the same fields") {
  const auto csv = lines(invoke({"table", "--d-min", "8", "--d-max", "200"}).out);
  const auto json = nlohmann::json::parse(invoke({"table", "--d-min", "8", "--d-max", "200", "--format", "json"}).out);
  REQUIRE(json.is_array());
  REQUIRE(json.size() + 1 == csv.size());
  const auto header = split_csv(csv[0]);
  for (std::size_t i = 0; i < json.size(); ++i) {
    const auto cells = split_csv(csv[i + 1]);
    REQUIRE(json[i]["schema_version"] == cli::kSchemaVersion);
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto& value = json[i][header[c]];
      if (value.is_null())
        REQUIRE(cells[c].empty());
      else if (value.is_boolean())
        REQUIRE(cells[c] == (value.get<bool>() ? "true" : "false"));
      else
        REQUIRE(cells[c] == std::to_string(value.get<std::uint64_t>()));
    }
  }
}

TEST_CASE("output does not depend on --jobs") {
  const auto one = invoke({"table", "--d-max", "2000", "--jobs", "1"});
  const auto four = invoke({"table", "--d-max", "2000", "--jobs", "4"});
  CHECK(one.code == cli::kExitOk);
  CHECK(one.out == four.out);
  const auto v1 = invoke({"verify", "--d-max", "900", "--jobs", "1"});
  const auto v4 = invoke({"verify", "--d-max", "900", "--jobs", "4"});
  CHECK(v1.out == v4.out);
}

TEST_CASE("verify") {
  const auto oracle = invoke({"verify", "--d-max", "3600"});
  CHECK(oracle.code == cli::kExitOk);
  CHECK(oracle.out == "verified 200 discriminants (18 | d <= 3600) at depth oracle: 0 mismatches\n");

  const auto gram = invoke({"verify", "--d-max", "360", "--depth", "gram"});
  CHECK(gram.code == cli::kExitOk);
  CHECK(gram.out.find("lattices assembled: 0 mismatches") != std::string::npos);

  const auto vacuous = invoke({"verify", "--d-max", "17"});
  CHECK(vacuous.code == cli::kExitOk);
  CHECK(vacuous.out.rfind("verified 0 discriminants", 0) == 0);

  const auto skipped = invoke({"verify", "--d-max", "180", "--depth", "gram", "--gram-max-dprime", "5"});
  CHECK(skipped.code == cli::kExitOk);
  CHECK(skipped.err.find("skipped: gram") != std::string::npos);
}

TEST_CASE("--out writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "fmpartners_cli_test.csv";
  std::filesystem::remove(path);
  const auto r = invoke({"table", "--d-max", "40", "--out", path.c_str()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream contents;
  contents << in.rdbuf();
  CHECK(contents.str() == invoke({"table", "--d-max", "40"}).out);
  std::filesystem::remove(path);
}
