#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {
struct Run {
  int code;
  std::string out, err;
};
Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "backflow");
  std::ostringstream o, e;
  const int c = backflow::cli::run(args, o, e);
  return {c, o.str(), e.str()};
}
int lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}
}  // namespace

TEST_CASE("current table") {
  const auto r = run({"current", "--state", "guess2", "--a", "0.6", "--b", "2.8", "--samples", "41"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == 42);
  CHECK(r.out.rfind("t,J,excluded\n", 0) == 0);
  CHECK(r.out.find("\r") == std::string::npos);
  // byte-identical on a rerun
  CHECK(run({"current", "--state", "guess2", "--a", "0.6", "--b", "2.8", "--samples", "41"}).out == r.out);
}

TEST_CASE("eigen json carries metadata") {
  const auto r = run({"eigen", "--n", "100", "--umax", "10"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["most_negative"].get<double>() < -0.03);
  CHECK(j["meta"]["version"] == BACKFLOW_VERSION);
  CHECK(j["meta"]["config_hash"].get<std::string>().size() == 16);
  const auto r2 = run({"eigen", "--n", "120", "--umax", "10"});
  CHECK(nlohmann::json::parse(r2.out)["meta"]["config_hash"] != j["meta"]["config_hash"]);
}

TEST_CASE("flux and config files") {
  const std::string path = "cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"command": "flux", "state": {"family": "guess2", "a": 0.6, "b": 2.8}, "format": "json"})";
  }
  const auto r = run({"--config", path});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["F"].get<double>() == doctest::Approx(-0.0275632).epsilon(1e-5));
  {
    std::ofstream f(path);
    f << R"({"command": "flux", "bogus": 1})";
  }
  CHECK(run({"--config", path}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"eigen", "--n", "4"}).code == 2);
  CHECK(run({"current", "--state", "guess2", "--a", "0.6"}).code == 2);  // missing b
  CHECK(run({"current", "--state", "guess2", "--a", "0.6", "--b", "-1"}).code == 2);
  CHECK(run({"current", "--state", "nope"}).code == 2);
  CHECK(run({"smear", "--state", "guess2", "--a", "0.6", "--b", "2.8", "--samples", "4", "--deconvolve"}).code == 1);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({"verify", "--only", "4"}).code == 0);
}

TEST_CASE("later flags override earlier ones") {
  const auto a = run({"current", "--state", "guess1", "--a", "0.1", "--a", "0.4", "--samples", "5"});
  const auto b = run({"current", "--state", "guess1", "--a", "0.4", "--samples", "5"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}
