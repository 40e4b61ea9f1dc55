#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using hypermono::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hypermono::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("classify the Dwork pair", "[cli]") {
  const auto r = call({"classify", "--alpha", "0,0,0,0", "--beta", "1/5,2/5,3/5,4/5"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["verdict"] == "Symplectic");
  CHECK(j["n"] == 4);
  CHECK(j["c"] == "1");
  CHECK(j["f_spec"] == "C1^4");
  CHECK(j["g_spec"] == "C5");
  CHECK(j["interlacing_pattern"] == "ααααββββ");
  CHECK(j["arithmeticity"]["status"] == "KnownThin");
  CHECK(j["omega"].size() == 4);
  CHECK_FALSE(j.contains("generators"));

  // Same pair by polynomials, with generators.
  const auto p = call({"classify", "--f", "C1^4", "--g", "[1,1,1,1,1]", "--generators"});
  REQUIRE(p.code == 0);
  CHECK(p.json()["omega"] == j["omega"]);
  CHECK(p.json()["generators"]["A"].size() == 4);
}

TEST_CASE("output is deterministic", "[cli]") {
  const std::vector<std::string> args{"monodromy", "--alpha", "0.25,0.75", "--beta", "1,0.5"};
  const auto a = call(args), b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = a.json();
  CHECK(j["loop_relation_residual"].get<double>() < 1e-8);
  CHECK(j["M0"]["rows"] == 2);
}

TEST_CASE("families and closure", "[cli]") {
  const auto f = call({"families"});
  REQUIRE(f.code == 0);
  const auto fj = f.json();
  CHECK(fj["count"] == 14);
  int thin = 0;
  for (const auto& e : fj["families"]) thin += e["status"] == "Thin";
  CHECK(thin == 1);

  const auto c = call({"closure", "--f", "C4", "--g", "C1*C2"});
  REQUIRE(c.code == 0);
  CHECK(c.json()["order"] == 8);
  CHECK(c.json()["status"] == "Finite");
  const auto capped = call({"closure", "--f", "C1^4", "--g", "C5", "--cap", "500"});
  REQUIRE(capped.code == 0);
  CHECK(capped.json()["status"] == "ExceededCap");
  CHECK(capped.json()["order"].is_null());

  const auto i = call({"--output", "text", "interlace", "--alpha", "1/3,2/3", "--beta", "0,1/2"});
  REQUIRE(i.code == 0);
  CHECK(i.out == "interlacing: βαβα\n");
}

TEST_CASE("usage errors exit with 2", "[cli]") {
  CHECK(call({}).code == 2);
  CHECK(call({"nonsense"}).code == 2);
  CHECK(call({"classify", "--alpha", "0", "--f", "C1"}).code == 2);
  CHECK(call({"monodromy", "--alpha", "0.5"}).code == 2);
  CHECK(call({"--output", "yaml", "families"}).code == 2);
  CHECK(call({"--max-order", "3", "families"}).code == 2);
  const auto r = call({"normal-form", "--a", "[[1]]"});
  CHECK(r.code == 2);
  CHECK(r.err.find("usage error") != std::string::npos);
}

TEST_CASE("domain errors exit with 1 and a JSON error object", "[cli]") {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"classify", "--alpha", "1/5,2/5", "--beta", "0,1/2"}, "NotGaloisStable"},
      {{"classify", "--f", "C5", "--g", "C5"}, "EqualPolynomials"},
      {{"classify", "--f", "[1,0,-2]", "--g", "C3"}, "NotCyclotomicProduct"},
      {{"classify", "--f", "C7x", "--g", "C3"}, "ParseError"},
      {{"normal-form", "--a", "[[0,-1],[1,0]]", "--b", "[[2,0],[0,3]]"}, "NotReflection"},
      {{"continue", "--alpha", "0.25,0.75", "--beta", "1,0.5", "--path", "1:0"}, "ClearanceViolated"},
      {{"--basepoint", "1.5", "monodromy", "--alpha", "0.25", "--beta", "1"}, "InvalidArgument"},
  };
  for (const auto& [args, kind] : cases) {
    INFO(kind);
    const auto r = call(args);
    CHECK(r.code == 1);
    const auto j = r.json();
    CHECK(j.size() == 1);
    CHECK(j["error"]["kind"] == kind);
    CHECK_FALSE(j["error"]["message"].get<std::string>().empty());
  }
  const auto text = call({"--output", "text", "classify", "--f", "C5", "--g", "C5"});
  CHECK(text.code == 1);
  CHECK(text.out.empty());
  CHECK(text.err.find("EqualPolynomials") != std::string::npos);
}

TEST_CASE("text output", "[cli]") {
  const auto r = call({"--output", "text", "classify", "--alpha", "0,0,0,0", "--beta", "1/5,2/5,3/5,4/5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("verdict: Symplectic\n", 0) == 0);
  CHECK(r.out.find("KnownThin") != std::string::npos);
}

TEST_CASE("normal form through the CLI", "[cli]") {
  const auto r = call({"normal-form", "--f", "C1^4", "--g", "C5", "--conjugate-seed", "7"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  const auto c = call({"classify", "--f", "C1^4", "--g", "C5", "--generators"}).json();
  CHECK(j["A"] == c["generators"]["A"]);
  CHECK(j["B"] == c["generators"]["B"]);
  CHECK(j["input"]["a"] != j["A"]);
}

TEST_CASE("continuation through the CLI", "[cli]") {
  const auto r = call({"continue", "--alpha", "0.3333333333333333", "--beta", "1", "--path", "0.5:0.5;-0.3:0.4"});
  REQUIRE(r.code == 0);
  const auto t = r.json()["transport"]["entries"][0];
  const std::complex<double> expected =
      std::pow(std::complex<double>(1.3, -0.4), -1.0 / 3.0) / std::pow(0.5, -1.0 / 3.0);
  CHECK(std::abs(std::complex<double>(t[0].get<double>(), t[1].get<double>()) - expected) < 1e-9);

  const auto loop = call({"continue", "--alpha", "0.25,0.75", "--beta", "1,0.5", "--path",
                          "0.25:0;0:0.25;-0.25:0;0:-0.25;0.25:0", "--closed"});
  REQUIRE(loop.code == 0);
  CHECK(loop.json()["steps"].get<int>() > 4);
}

TEST_CASE("monodromy validation through the CLI", "[cli]") {
  const auto r = call({"monodromy", "--alpha", "0,0,0,0", "--beta", "1/5,2/5,3/5,4/5", "--validate"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["validation"]["passed"] == true);
}

TEST_CASE("batch mode", "[cli]") {
  const auto file = temp_file("hypermono_batch.txt",
                              "# comment\n"
                              "families\n"
                              "classify --f C5 --g C5\n"
                              "closure --f C4 --g C1*C2 --output text\n"
                              "classify --bogus\n");
  const auto r = call({"batch", file.string()});
  CHECK(r.code == 2);
  const auto j = r.json();
  REQUIRE(j["requests"] == 4);
  CHECK(j["results"][0]["exit_code"] == 0);
  CHECK(j["results"][0]["result"]["count"] == 14);
  CHECK(j["results"][1]["error"]["kind"] == "EqualPolynomials");
  CHECK(j["results"][2]["result"]["order"] == 8);
  CHECK(j["results"][3]["error"]["kind"] == "UsageError");

  const auto nested = temp_file("hypermono_nested.txt", "batch " + file.string() + "\n");
  const auto n = call({"batch", nested.string()});
  CHECK(n.json()["results"][0]["exit_code"] == 2);
  CHECK(call({"batch", "/nonexistent/requests"}).code == 1);
}

TEST_CASE("catalog override", "[cli]") {
  const auto cat = temp_file("hypermono_catalog.json",
                             R"({"version": 1, "reported_arithmetic": 0, "reported_thin": 0, "records": [)"
                             R"({"g": "C5", "status": "Unknown", "provenance": "test override"}]})");
  const auto r = call({"--catalog", cat.string(), "classify", "--alpha", "0,0,0,0", "--beta", "1/5,2/5,3/5,4/5"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["arithmeticity"]["status"] == "Undetermined");
  const auto bad = temp_file("hypermono_bad_catalog.json", "{");
  const auto b = call({"--catalog", bad.string(), "families"});
  CHECK(b.code == 1);
  CHECK(b.json()["error"]["kind"] == "ParseError");
}

TEST_CASE("maximum order from the environment", "[cli]") {
  const std::vector<std::string> args{"--tol", "1e-9", "monodromy", "--alpha", "0.25,0.75", "--beta", "1,0.5"};
  ::setenv("HYPERMONO_MAX_ORDER", "8", 1);
  const auto low = call(args);
  const auto flag = call({"--max-order", "256", "--tol", "1e-9", "monodromy", "--alpha", "0.25,0.75", "--beta", "1,0.5"});
  ::unsetenv("HYPERMONO_MAX_ORDER");
  CHECK(low.code == 1);
  CHECK(low.json()["error"]["kind"] == "ToleranceUnreachable");
  CHECK(flag.code == 0);
  CHECK(call(args).code == 0);
}
