#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CommandResult {
  int exitCode = -1;
  std::string output;
};

CommandResult runCli(const std::string& args, const std::string& envPrefix = "") {
  const std::string cmd = envPrefix + " \"" + RENDEZVOUS_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult result;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) result.output.append(buf, n);
  const int status = pclose(pipe);
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("certify prints the exact bound and passes") {
  const CommandResult r = runCli("certify --k 2");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "bound: 2/1"));
  CHECK(contains(r.output, "certificate: PASS"));
}

TEST_CASE("certify rejects a zero horizon as a usage error") {
  const CommandResult r = runCli("certify --k 0");
  CHECK(r.exitCode == 2);
}

TEST_CASE("certify json report and certificate file") {
  const std::string certPath = "cli_cert_k3.json";
  const CommandResult r =
      runCli("certify --k 3 --json --emit-certificate " + certPath);
  CHECK(r.exitCode == 0);
  const nlohmann::json report = nlohmann::json::parse(r.output);
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("certificate").at("bound").get<std::string>() == "20/9");
  CHECK(report.at("certificate").at("checks").at("spectrum").at("ok").get<bool>());

  std::ifstream in(certPath);
  REQUIRE(in.good());
  nlohmann::json file;
  in >> file;
  CHECK(file.at("k").get<int>() == 3);
  CHECK(file.at("a")[0].get<std::string>() == "2/1");
  CHECK(file.at("bound").get<std::string>() == "20/9");
  // Run-length pairs reconstruct 27 entries.
  std::int64_t total = 0;
  for (const auto& run : file.at("x")) total += run[1].get<std::int64_t>();
  CHECK(total == 27);
  std::remove(certPath.c_str());
}

TEST_CASE("the level cap honors the environment override") {
  const CommandResult r = runCli("certify --k 3", "RENDEZVOUS_MAX_K=2");
  CHECK(r.exitCode == 3);
}

TEST_CASE("evaluate reports the block strategy values") {
  const CommandResult r = runCli("evaluate --k 4 --strategy aw");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "value: 7/3"));
  CHECK(contains(r.output, "tail 4: 1/9"));
}

TEST_CASE("evaluate reports the uniform strategy value") {
  const CommandResult r = runCli("evaluate --k 2 --strategy uniform");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "value: 19/9"));
  CHECK(contains(r.output, "tail 2: 4/9"));
}

TEST_CASE("evaluate accepts an overlook weight") {
  const CommandResult r = runCli("evaluate --k 2 --strategy aw --epsilon 1/4 --json");
  CHECK(r.exitCode == 0);
  const nlohmann::json report = nlohmann::json::parse(r.output);
  CHECK(report.at("inputs").at("epsilon").get<std::string>() == "1/4");
  // With overlook weight 1/4 the block strategy's truncated meeting time
  // rises above the clean-game value 2.
  CHECK(report.at("value").get<std::string>() != "2/1");
}

TEST_CASE("evaluate reads strategy files and validates them") {
  const std::string good = "cli_strategy_good.json";
  {
    std::ofstream out(good);
    out << R"({"schema_version":1,"k":2,"p":["1/3","0","0","0","0","1/3","0","1/3","0"]})";
  }
  const CommandResult ok = runCli("evaluate --k 2 --strategy file --file " + good);
  CHECK(ok.exitCode == 0);
  CHECK(contains(ok.output, "value: 2/1"));
  std::remove(good.c_str());

  const std::string bad = "cli_strategy_bad.json";
  {
    std::ofstream out(bad);
    out << R"({"schema_version":1,"k":1,"p":["2/3","2/3","2/3"]})";
  }
  const CommandResult rejected = runCli("evaluate --k 1 --strategy file --file " + bad);
  CHECK(rejected.exitCode == 2);
  std::remove(bad.c_str());

  const CommandResult missing = runCli("evaluate --k 2 --strategy file --file no_such.json");
  CHECK(missing.exitCode == 2);
}

TEST_CASE("lp solves the primal relaxation") {
  const CommandResult r = runCli("lp --k 2");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "primal optimum: 18/1"));
  CHECK(contains(r.output, "bound: 2/1"));
}

TEST_CASE("lp solves the distribution side") {
  const CommandResult r = runCli("lp --k 2 --dual");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "dual optimum: 2/1"));
}

TEST_CASE("lp exports and re-reads the semidefinite form") {
  const std::string path = "cli_sdpa_k3.dat-s";
  const CommandResult r = runCli("lp --k 3 --export-sdpa " + path);
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "parse-back: OK"));
  std::ifstream dat(path);
  CHECK(dat.good());
  std::ifstream side(path + ".exact.json");
  CHECK(side.good());
  std::remove(path.c_str());
  std::remove((path + ".exact.json").c_str());
}

TEST_CASE("search finds the flat one-step optimum deterministically") {
  const CommandResult a = runCli("search --k 1 --restarts 10 --seed 1");
  CHECK(a.exitCode == 0);
  CHECK(contains(a.output, "best value: 2/3"));
  const CommandResult b = runCli("search --k 1 --restarts 10 --seed 1");
  CHECK(b.output == a.output);
}

TEST_CASE("kn optimizes the three-location block family") {
  const CommandResult r = runCli("kn --n 3 --optimize");
  CHECK(r.exitCode == 0);
  CHECK(contains(r.output, "stay: 0.333"));
  CHECK(contains(r.output, "expected time: 2.5"));
}

TEST_CASE("kn rejects out-of-range location counts") {
  CHECK(runCli("kn --n 7 --optimize").exitCode == 2);
  CHECK(runCli("kn --n 3").exitCode == 2);  // neither --optimize nor --stay
}

TEST_CASE("unknown subcommands and missing arguments are usage errors") {
  CHECK(runCli("frobnicate").exitCode == 2);
  CHECK(runCli("certify").exitCode == 2);
  CHECK(runCli("").exitCode == 2);
  CHECK(runCli("--help").exitCode == 0);
}
