#include "fracvel/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

using fracvel::cli::run;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');)
    out.push_back(f);
  return out;
}

// Decimal comma and digit grouping, to catch locale-dependent formatting.
struct CommaPunct : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

} // namespace

TEST_CASE("velocity of the square root as JSON") {
  const Result r = invoke({"velocity", "--fn", "powser:0;1,0,0.5", "--x", "0", "--beta", "0.5", "--side", "forward"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "velocity");
  CHECK(doc["classification"] == "finite");
  CHECK(doc["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("velocity sweep lists one row per point") {
  const Result r = invoke({"velocity", "--fn", "power(0.5)", "--x", "0,0.25", "--beta", "0.5"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["classification"] == "finite");
  CHECK(doc["rows"][1]["classification"] == "zero");
}

TEST_CASE("Neidinger curve as CSV") {
  const Result r =
      invoke({"ifs", "--family", "neidinger", "--a", "0.3", "--depth", "8", "--grid", "1024", "--format", "csv"});
  REQUIRE(r.code == 0);
  const std::vector<std::string> rows = lines(r.out);
  REQUIRE(rows.size() == 1026);
  CHECK(rows.front() == "x,value");
  CHECK(rows[1] == "0,0");
  CHECK(rows.back() == "1,1");
  CHECK(r.out.find('\r') == std::string::npos);
  // Midpoint of the curve is 1 - a with the default parity.
  CHECK(rows[513] == "0.5,0.69999999999999996");
}

TEST_CASE("CSV numbers round-trip with 17 significant digits") {
  const Result r = invoke({"eval", "--fn", "power(0.5)", "--grid", "7", "--format", "csv"});
  REQUIRE(r.code == 0);
  const std::vector<std::string> rows = lines(r.out);
  REQUIRE(rows.size() == 9);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const std::vector<std::string> f = fields(rows[k]);
    REQUIRE(f.size() == 2);
    const double x = std::stod(f[0]);
    CHECK(x == doctest::Approx((k - 1) / 7.0));
    CHECK(std::stod(f[1]) == std::sqrt(x));
  }
  CHECK(rows[3] == "0.2857142857142857,0.53452248382484879");
}

TEST_CASE("CSV output ignores the global locale") {
  const std::locale previous = std::locale::global(std::locale(std::locale::classic(), new CommaPunct));
  const Result r = invoke({"eval", "--fn", "power(0.5)", "--x", "1234.5", "--format", "csv"});
  std::locale::global(previous);
  REQUIRE(r.code == 0);
  const std::vector<std::string> f = fields(lines(r.out).at(1));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == "1234.5");
  CHECK(std::stod(f[1]) == std::sqrt(1234.5));
}

TEST_CASE("exact dyadic evaluation") {
  const Result r = invoke({"eval", "--fn", "derham(0.7)", "--exact", "--dyadic", "3/2^2,1/2^60", "--format", "csv"});
  REQUIRE(r.code == 0);
  const std::vector<std::string> rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::stod(fields(rows[1]).back()) == doctest::Approx(0.7 + 0.3 * 0.7));
  CHECK(std::stod(fields(rows[2]).back()) == doctest::Approx(std::pow(0.7, 60)));
}

TEST_CASE("output file") {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "fracvel_cli_test.csv";
  std::filesystem::remove(path);
  const Result r = invoke({"eval", "--fn", "power(0.5)", "--x", "4", "--format", "csv", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "x,value\n4,2\n");
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"velocity", "--x", "0"}).code == 2);
  CHECK(invoke({"velocity", "--fn", "power(0.5)", "--beta", "0.5", "--format", "xml"}).code == 2);
  const Result bad = invoke({"velocity", "--fn", "powser:0;1,0,", "--x", "0", "--beta", "0.5"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("offset 13") != std::string::npos);
  CHECK(invoke({"velocity", "--fn", "power(0.5)", "--x", "0", "--beta", "1.5"}).code == 2);
  CHECK(invoke({"velocity", "--help"}).code == 0);
}

TEST_CASE("domain errors exit with 1") {
  const Result depth = invoke({"ifs", "--family", "derham", "--a", "0.7", "--depth", "100"});
  CHECK(depth.code == 1);
  CHECK(depth.err.find("exceeds") != std::string::npos);
  CHECK(invoke({"eval", "--fn", "counterexample_h(0.6)", "--x", "-1"}).code == 1);
  CHECK(invoke({"rl", "--fn", "power(0.5)", "--a", "1", "--x", "0.5", "--beta", "0.5"}).code == 1);
}

TEST_CASE("local fractional derivative") {
  const Result r = invoke({"lfd", "--fn", "power(0.5)", "--a", "0", "--beta", "0.5"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["lfd"]["value"].get<double>() == doctest::Approx(std::tgamma(1.5)).epsilon(1e-6));
  CHECK(doc["gamma_ratio"].get<double>() == doctest::Approx(std::tgamma(1.5)).epsilon(1e-6));
}

TEST_CASE("Riemann-Liouville operations") {
  const Result i = invoke({"rl", "--fn", "counterexample_h(0.6)", "--x", "0.5", "--beta", "0.4"});
  REQUIRE(i.code == 0);
  CHECK(json::parse(i.out)["value"].get<double>() == doctest::Approx(std::tgamma(0.6)).epsilon(1e-8));
  const Result d =
      invoke({"rl", "--fn", "counterexample_h(0.6)", "--x", "0.5", "--beta", "0.6", "--op", "derivative"});
  REQUIRE(d.code == 0);
  CHECK(std::abs(json::parse(d.out)["value"].get<double>()) <= 1e-6);
}

TEST_CASE("Langevin path and summary") {
  const Result csv = invoke({"langevin", "--steps", "64", "--format", "csv"});
  REQUIRE(csv.code == 0);
  const std::vector<std::string> rows = lines(csv.out);
  CHECK(rows.front() == "t,x");
  CHECK(rows.size() == 66);
  const Result summary = invoke({"langevin", "--steps", "4096", "--partition", "4,9", "--oscillation", "constant"});
  REQUIRE(summary.code == 0);
  const json doc = json::parse(summary.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["exponent"].get<double>() == doctest::Approx(0.5).epsilon(0.1));
  REQUIRE(doc["scaling"].size() == 2);
  CHECK(doc["scaling"][1]["ratio"].get<double>() == doctest::Approx(3.0));
}

TEST_CASE("verify runs selected criteria") {
  const Result r = invoke({"verify", "--criterion", "1,2", "--format", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["passed"] == true);
  CHECK(doc["rows"][0]["id"] == 1);
  CHECK(doc["rows"][1]["status"] == "PASS");
  CHECK(invoke({"verify", "--criterion", "99"}).code == 2);
}
