#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using kempner::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::ordered_json json_of(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Result r = call(args);
  REQUIRE(r.code == 0);
  return nlohmann::ordered_json::parse(r.out);
}

}  // namespace

TEST_CASE("sum prints the guaranteed digits") {
  const auto j = json_of({"sum", "--base", "10", "--digit", "0", "--count", "0", "--digits", "15"});
  REQUIRE(j.size() == 1);
  CHECK(j[0]["value"] == "23.103447909420542");
  CHECK(j[0]["method"] == "D0K0");
  CHECK(j[0]["b"] == "10");
  const Result t = call({"sum", "--base", "10", "--digit", "0", "--count", "0", "--digits", "15"});
  CHECK(t.code == 0);
  CHECK(t.out.find("23.103447909420542") != std::string::npos);
}

TEST_CASE("moments of the degenerate base-2 spec") {
  const auto j = json_of({"moments", "--base", "2", "--digit", "1", "--count", "0", "--max-order", "3"});
  REQUIRE(j.size() == 4);
  CHECK(j[0]["value"] == "2");
  for (int m = 1; m <= 3; ++m) CHECK(j[m]["value"] == "0");
  const auto w = json_of({"moments", "--base", "10", "--digit", "9", "--count", "0", "--max-order", "1", "--kind", "w"});
  CHECK(w[1]["value"] == "95/91");
}

TEST_CASE("series coefficients as fractions") {
  const auto j = json_of({"series-coeffs", "--count", "0", "--order", "2", "--digit", "1", "--trunc", "4"});
  REQUIRE(j.size() == 5);
  CHECK(j[2]["value"] == "23/6");
  CHECK(j[3]["value"] == "0");
  CHECK(j[4]["value"] == "-2/3");
  const auto z = json_of({"series-coeffs", "--count", "1", "--order", "1", "--digit", "2", "--family", "z"});
  CHECK(z.size() == 9);
  CHECK(z[3]["value"] == "5/2");
}

TEST_CASE("asymptotic breakdown") {
  const auto j =
      json_of({"asymptotic", "--base", "10", "--digit", "0", "--count", "0", "--digits", "15", "--terms", "5"});
  REQUIRE(j.size() == 7);
  CHECK(j.back()["item"] == "total");
  CHECK(j.back()["value"] == "23.103447618168191");
  CHECK(j[1]["detail"].get<std::string>().find("zeta(2)") != std::string::npos);
}

TEST_CASE("delta table grid") {
  const Result r = call({"delta-table", "--bases", "10,100", "--digits-list", "0", "--count", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("-0.13") != std::string::npos);
  CHECK(r.out.find("b=100") != std::string::npos);
  const Result low = call({"delta-table", "--bases", "1000", "--digits-list", "1", "--count", "2", "--digits", "5"});
  CHECK(low.code == 2);
}

TEST_CASE("json rows share one key set across subcommands") {
  const std::vector<std::vector<std::string>> runs = {
      {"sum", "--base", "7", "--digit", "3", "--count", "1", "--digits", "10"},
      {"moments", "--base", "7", "--digit", "3", "--count", "1", "--max-order", "2"},
      {"series-coeffs", "--count", "1", "--order", "2", "--digit", "3"},
      {"asymptotic", "--base", "7", "--digit", "3", "--count", "1", "--digits", "10"},
      {"delta-table", "--bases", "10", "--digits-list", "3", "--count", "1"},
  };
  for (const auto& args : runs) {
    const auto j = json_of(args);
    REQUIRE(j.is_array());
    for (const auto& row : j) {
      std::vector<std::string> keys;
      for (auto it = row.begin(); it != row.end(); ++it) {
        keys.push_back(it.key());
        CHECK(it.value().is_string());
      }
      CHECK(keys == kempner::cli::record_keys());
    }
  }
}

TEST_CASE("csv output quotes fields") {
  const Result r = call({"asymptotic", "--base", "10", "--digit", "1", "--count", "0", "--digits", "10", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("command,b,d,k,item,value,errorBound,termsUsed,method,detail,elapsedMillis\r\n", 0) == 0);
  CHECK(r.out.find("\"b log b - b log(1+1/d)\"") == std::string::npos);
  CHECK(r.out.find("b log b - b log(1+1/d)") != std::string::npos);
}

TEST_CASE("--out writes the file") {
  const std::string path = "cli_out_test.json";
  std::remove(path.c_str());
  const Result r = call({"sum", "--base", "10", "--digit", "1", "--count", "1", "--digits", "8", "--format", "json",
                         "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  const auto j = nlohmann::json::parse(in);
  CHECK(j[0]["item"] == "I(10,1,1)");
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(call({"sum", "--base", "10", "--digit", "10", "--count", "0"}).code == 2);
  CHECK(call({"sum", "--base", "1", "--digit", "0", "--count", "0"}).code == 2);
  CHECK(call({"sum", "--base", "10", "--digit", "1", "--count", "-1"}).code == 2);
  CHECK(call({"sum", "--base", "10", "--digit", "1"}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"sum", "--base", "10", "--digit", "1", "--count", "0", "--format", "xml"}).code == 2);
  CHECK(call({"sum", "--base", "2", "--digit", "1", "--count", "0", "--digits", "10"}).code == 3);
  CHECK(call({"moments", "--base", "10", "--digit", "1", "--count", "0", "--max-order", "80"}).code == 3);
  CHECK(call({"--help"}).code == 0);
}
