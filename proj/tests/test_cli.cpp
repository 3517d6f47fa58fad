#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using treecount::cli::run_cli;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json parse(const Run& r) { return Json::parse(r.out); }

}  // namespace

TEST_CASE("count examples") {
  const Run a = run({"count", "circulant-scaled", "--beta", "3", "--gammas", "1", "--n", "2", "--mode", "exact"});
  REQUIRE(a.code == 0);
  CHECK(parse(a)["value"] == "384");
  CHECK(parse(a)["engine"] == "closed-form");

  const Run b = run({"count", "torus", "--alphas", "2", "--n", "2"});
  REQUIRE(b.code == 0);
  CHECK(parse(b)["value"] == "32");

  const Run c = run({"count", "circulant-scaled", "--beta", "1", "--n", "7"});
  REQUIRE(c.code == 0);
  CHECK(parse(c)["value"] == "7");

  const Run d = run({"count", "circulant-scaled", "--beta", "3", "--gammas", "1", "--n", "2", "--engine", "oracle"});
  CHECK(parse(d)["value"] == "384");

  const Run e = run({"count", "circulant-fixed", "--generators", "1,2", "--n", "5"});
  CHECK(parse(e)["value"] == "125");
  const Run f = run({"count", "circulant-fixed", "--generators", "2", "--n", "4"});
  CHECK(parse(f)["value"] == "0");
}

TEST_CASE("log mode and factors") {
  const Run a = run({"count", "circulant-scaled", "--beta", "12", "--gammas", "2,3", "--n", "1000000000", "--mode", "log"});
  REQUIRE(a.code == 0);
  const Json j = parse(a);
  CHECK(j["ln_tau"]["mid"].get<std::string>().size() > 10);
  CHECK(j.contains("ln_tau_per_vertex"));

  const Run b = run({"count", "circulant-scaled", "--beta", "3", "--gammas", "1", "--n", "4", "--factors"});
  const Json k = parse(b);
  REQUIRE(k["factors"].size() == 2);
  CHECK(k["factors"][0]["omega"] == "1/3");
  CHECK(k["factors"][0].contains("theta"));
}

TEST_CASE("JSON output round-trips") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"count", "circulant-scaled", "--beta", "6", "--gammas", "2,3", "--n", "3", "--factors"},
           {"entropy", "circulant-scaled", "--beta", "2", "--gammas", "1"},
           {"verify", "torus", "--alpha-range", "1..2", "--n-range", "1..3"}}) {
    const Run r = run(args);
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).dump(2) + "\n" == r.out);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"count"}).code == 1);
  CHECK(run({"count", "circulant-scaled", "--bogus"}).code == 1);
  CHECK(run({"count", "helix"}).code == 1);

  const Run bad = run({"count", "circulant-scaled", "--beta", "4", "--gammas", "3", "--n", "2"});
  CHECK(bad.code == 1);
  CHECK(parse(bad)["error"]["kind"] == "invalid-input");

  const Run big = run({"count", "circulant-scaled", "--beta", "12", "--gammas", "2,3", "--n", "1000000000"});
  CHECK(big.code == 1);
  CHECK(parse(big)["error"]["kind"] == "result-too-large");

  CHECK(run({"count", "circulant-scaled", "--beta", "3", "--n", "2", "--mode", "log", "--engine", "oracle"}).code == 1);
  CHECK(run({"count", "circulant-scaled", "--beta", "3", "--n", "2", "--initial-bits", "20"}).code == 1);
  CHECK(run({"--help"}).code == 0);

  const Run blurred = run({"count", "circulant-scaled", "--beta", "3", "--gammas", "1", "--n", "4", "--initial-bits", "64",
                           "--max-bits", "512", "--blur-factors"});
  CHECK(blurred.code == 3);
  CHECK(parse(blurred)["error"]["kind"] == "precision-exhausted");
}

TEST_CASE("verify sweeps") {
  const Run ok = run({"verify", "circulant-scaled", "--beta-range", "2..6", "--n-range", "1..8"});
  REQUIRE(ok.code == 0);
  const Json j = parse(ok);
  CHECK(j["all_equal"] == true);
  CHECK(j["mismatches"] == 0);
  CHECK(j["minimal_failing"].is_null());
  CHECK(j["total"].get<int>() > 100);

  const Run torus = run({"verify", "torus", "--alpha-range", "1..3", "--n-range", "1..6"});
  CHECK(torus.code == 0);

  const Run broken = run({"verify", "circulant-scaled", "--beta-range", "2..4", "--n-range", "1..3", "--corrupt-factor", "0"});
  CHECK(broken.code == 2);
  const Json b = parse(broken);
  CHECK(b["all_equal"] == false);
  CHECK(b["minimal_failing"]["key"] == "beta=2;gammas=1;n=1");
  CHECK(broken.err.find("beta=2;gammas=1;n=1") != std::string::npos);

  const Run broken_torus = run({"verify", "torus", "--alpha-range", "2..2", "--n-range", "1..2", "--corrupt-factor", "0"});
  CHECK(broken_torus.code == 2);
}

TEST_CASE("instances are ordered by key") {
  const Json j = parse(run({"verify", "circulant-scaled", "--beta-range", "2..11", "--n-range", "1..2", "--max-gammas", "1"}));
  std::vector<std::uint64_t> betas;
  for (const Json& row : j["instances"]) betas.push_back(row["instance"]["beta"].get<std::uint64_t>());
  CHECK(std::is_sorted(betas.begin(), betas.end()));
  CHECK(betas.back() == 11);
}

TEST_CASE("entropy commands") {
  const Json a = parse(run({"entropy", "circulant-scaled", "--beta", "2", "--gammas", "1"}));
  CHECK(std::stod(a["value"]["mid"].get<std::string>()) == doctest::Approx(0.5 * std::acosh(3.0)).epsilon(1e-15));
  CHECK(a["representations"].size() == 2);
  CHECK(a["gap"].get<double>() < 1e-8);

  const Json b = parse(run({"entropy", "circulant-scaled", "--beta", "1"}));
  CHECK(std::stod(b["value"]["mid"].get<std::string>()) == 0.0);

  const Run c = run({"entropy", "compare", "--gammas", "1", "--gamma-d", "2", "--beta-range", "2..64"});
  REQUIRE(c.code == 0);
  const Json cj = parse(c);
  CHECK(cj["rows"].size() == 63);
  CHECK(cj.contains("observed_B"));

  const Json d = parse(run({"entropy", "circulant-fixed", "--generators", "1,1"}));
  CHECK(std::stod(d["value"]["mid"].get<std::string>()) == doctest::Approx(std::log(2.0)).epsilon(1e-10));

  const Json e = parse(run({"entropy", "limit"}));
  CHECK(e["gap"].get<double>() < 1e-9);
}

TEST_CASE("csv, plain and file output") {
  const Run csv = run({"verify", "torus", "--alpha-range", "2..2", "--n-range", "1..2", "--format", "csv"});
  CHECK(csv.out.rfind("key,vertices,closed_form,oracle,equal\n", 0) == 0);
  CHECK(csv.out.find("\"alphas=2;n=2\"") == std::string::npos);

  const Run plain = run({"count", "circulant-scaled", "--beta", "3", "--gammas", "1", "--n", "2", "--format", "plain"});
  CHECK(plain.out.find("value: 384\n") != std::string::npos);

  const Run kv = run({"count", "torus", "--alphas", "2", "--n", "2", "--format", "csv"});
  CHECK(kv.out.find("value,32\n") != std::string::npos);

  const std::string path = "treecount_cli_test_output.json";
  const Run file = run({"count", "torus", "--alphas", "2", "--n", "2", "--output", path});
  CHECK(file.code == 0);
  CHECK(file.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(Json::parse(content.str())["value"] == "32");
  std::remove(path.c_str());
}

TEST_CASE("precision environment variable") {
  setenv("TREECOUNT_PRECISION_BITS", "256", 1);
  const Json ok = parse(run({"count", "circulant-scaled", "--beta", "3", "--gammas", "1", "--n", "2"}));
  CHECK(ok["precision_bits"].get<long>() > 256);
  setenv("TREECOUNT_PRECISION_BITS", "lots", 1);
  CHECK(run({"count", "circulant-scaled", "--beta", "3", "--gammas", "1", "--n", "2"}).code == 1);
  unsetenv("TREECOUNT_PRECISION_BITS");
}

TEST_CASE("bench") {
  const Run r = run({"bench", "circulant-scaled", "--beta", "3", "--gammas", "1", "--n", "50", "--repeat", "2"});
  REQUIRE(r.code == 0);
  const Json j = parse(r);
  CHECK(j["command"] == "bench");
  CHECK(j["timing"]["repeat"] == 2);
  CHECK_FALSE(j.contains("value"));
}
