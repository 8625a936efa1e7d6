#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nilcert/cli.hpp"

using nilcert::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("expand") {
  Result r = cli({"expand", "--class", "3", "[a,[a,b]]"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["c_max"] == 3);
  // degree-3 terms aab:+1, aba:-2, baa:+1
  int found = 0;
  for (const auto& t : j["terms"]) {
    auto m = t["mono"].get<std::vector<std::string>>();
    if (m == std::vector<std::string>{"a", "a", "b"}) {
      CHECK(t["coef"] == "1");
      ++found;
    }
    if (m == std::vector<std::string>{"a", "b", "a"}) {
      CHECK(t["coef"] == "-2");
      ++found;
    }
    if (m == std::vector<std::string>{"b", "a", "a"}) {
      CHECK(t["coef"] == "1");
      ++found;
    }
  }
  CHECK(found == 3);
}

TEST_CASE("gamma-test and wn") {
  Result r = cli({"gamma-test", "--class", "2", "[a,b]"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["member"] == true);

  r = cli({"gamma-test", "--class", "3", "[a,b]"});
  CHECK(json::parse(r.out)["member"] == false);

  r = cli({"wn", "--r", "3", "--n", "2", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "a^2 b^2 a^-2 b^-2\n");
}

TEST_CASE("area-lb") {
  Result r = cli({"area-lb", "--r", "4", "--n", "10", "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "1000\n");

  r = cli({"area-lb", "--class", "2", "[a^5,b^5]"});
  CHECK(json::parse(r.out)["area_lb"] == "25");
}

TEST_CASE("area-bf and certificates") {
  Result r = cli({"area-bf", "--class", "2", "[a^2,b^2]"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["area"] == 4);
  CHECK(j["exact"] == true);

  // budget exhaustion -> exit 3
  r = cli({"area-bf", "--class", "2", "--budget-nodes", "1", "[a^3,b^3]"});
  CHECK(r.code == 3);
  CHECK(json::parse(r.out).contains("error"));
}

TEST_CASE("fill-abelian feeds verify-filling") {
  Result r = cli({"fill-abelian", "[a^3,b^3]"});
  REQUIRE(r.code == 0);
  json cert = json::parse(r.out);
  CHECK(cert["steps"].size() == 9);

  std::string path = "cli_cert_roundtrip.json";
  {
    std::ofstream f(path);
    f << r.out;
  }
  Result v = cli({"verify-filling", path});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["verified"] == true);

  // tamper with the word: verification must fail with exit 1
  cert["word"] = "a b";
  {
    std::ofstream f(path);
    f << cert.dump();
  }
  v = cli({"verify-filling", path});
  CHECK(v.code == 1);
  CHECK(json::parse(v.out)["verified"] == false);
  std::remove(path.c_str());
}

TEST_CASE("gens, vsp, verify-identity") {
  Result r = cli({"gens", "--r", "3"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["Z"][2] == "a1 ; a2^2 ; a3^3");
  CHECK(j["size"] == 7);

  r = cli({"vsp", "--r", "4"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["k"] == 6);
  CHECK(j["verified"] == true);
  CHECK(j["x"][0]["tuple"] == "a1^6 ; 1 ; a3^-6 ; a4^-12");

  r = cli({"verify-identity", "--r", "3", "--n", "2", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "identity holds\n");

  r = cli({"verify-identity", "--r", "4", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["passed"] == true);
}

TEST_CASE("bfs-length") {
  Result r = cli({"bfs-length", "--r", "3", "[a1,b1] ; 1 ; 1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["length"] == 1);

  r = cli({"bfs-length", "--r", "3", "--budget-nodes", "10", "a1^2 b1^2 a1^-2 b1^-2 ; 1 ; 1"});
  CHECK(r.code == 3);
}

TEST_CASE("rewrite-012 and transfer") {
  Result r = cli({"rewrite-012", "[a,b]", "1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["q"] == 1);
  CHECK(j["coord1"] == "a b a^-1 b^-1");
  CHECK(j["coord2"] == "1");

  r = cli({"rewrite-012", "a", "b"});
  CHECK(r.code == 2);  // fibre condition fails: usage-level input error

  r = cli({"transfer", "[a^2,b^2]"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["q"] == 4);
  CHECK(j["k"] == 0);
  CHECK(j["l"] == 0);
  CHECK(j["holds"] == true);
}

TEST_CASE("report") {
  Result r = cli({"report", "--r", "3", "--n", "6", "--budget-nodes", "1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["entries"].size() == 6);
  CHECK(j["entries"][1]["area_lb"] == "16");
  CHECK(j["target_exponent"] == 2);
  double slope = j["slope"].get<double>();
  CHECK(slope == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("usage errors and determinism") {
  CHECK(cli({"expand"}).code == 2);                       // missing word
  CHECK(cli({"expand", "--class", "2", "a c"}).code == 2);  // unknown generator
  CHECK(cli({"nonsense"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"wn", "--r", "3"}).code == 2);  // missing --n

  json err = json::parse(cli({"expand", "--class", "2", "a ^"}).out);
  CHECK(err.contains("error"));

  Result a = cli({"report", "--r", "3", "--n", "8", "--budget-nodes", "1"});
  Result b = cli({"report", "--r", "3", "--n", "8", "--budget-nodes", "1", "--threads", "1"});
  CHECK(a.out == b.out);  // byte-identical across thread counts

  // --out writes the payload to a file instead of stdout
  std::string path = "cli_out_test.json";
  Result c = cli({"wn", "--r", "3", "--n", "1", "--out", path});
  CHECK(c.code == 0);
  CHECK(c.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(json::parse(ss.str())["word"] == "a b a^-1 b^-1");
  std::remove(path.c_str());
}
