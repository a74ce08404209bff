#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rendezvous/certificate.hpp"
#include "rendezvous/errors.hpp"
#include "rendezvous/game.hpp"
#include "rendezvous/kn.hpp"
#include "rendezvous/lp.hpp"
#include "rendezvous/relaxation.hpp"
#include "rendezvous/search.hpp"
#include "rendezvous/serialization.hpp"

namespace {

using rendezvous::Rational;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

int defaultThreads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string floatStr(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string pathDigits(int k, std::int64_t i) {
  std::string s(static_cast<std::size_t>(k), '0');
  for (int j = 1; j <= k; ++j)
    s[static_cast<std::size_t>(j - 1)] =
        static_cast<char>('0' + rendezvous::digitAt(i, j, k));
  return s;
}

int runCertify(int k, int threads, bool json, const std::string& emitPath) {
  const Timer timer;
  const rendezvous::Certificate cert = rendezvous::certify(k, threads);
  if (!emitPath.empty()) rendezvous::writeCertificateFile(cert, emitPath);
  if (json) {
    nlohmann::json report = {{"schema_version", rendezvous::kSchemaVersion},
                             {"command", "certify"},
                             {"inputs", {{"k", k}, {"threads", threads}}},
                             {"certificate", rendezvous::certificateJson(cert)},
                             {"pass", cert.pass},
                             {"elapsed_seconds", timer.seconds()}};
    if (!emitPath.empty()) report["certificate_file"] = emitPath;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "k: " << cert.k << "\n";
    std::cout << "bound: " << cert.bound.str() << " (~" << floatStr(cert.bound.toDouble())
              << ")\n";
    std::cout << "w: " << cert.w.str() << "\n";
    std::cout << "domination: " << (cert.domination.ok ? "ok" : "VIOLATED") << " over "
              << cert.domination.entries << " paths";
    if (!cert.domination.ok) std::cout << ", first violation at " << cert.domination.firstViolation;
    std::cout << "\n";
    std::cout << "spectrum: " << (cert.spectrum.ok ? "ok" : "NEGATIVE") << ", min "
              << cert.spectrum.minValue.str() << ", zeros " << cert.spectrum.zeroCount
              << ", three-halves " << cert.spectrum.threeHalvesCount << "\n";
    if (cert.t)
      std::cout << "t-values: " << (cert.t->consistent ? "consistent" : "INCONSISTENT") << "\n";
    if (!emitPath.empty()) std::cout << "certificate written: " << emitPath << "\n";
    if (cert.pass) {
      std::cout << "certificate: PASS\n";
    } else {
      std::cout << "certificate: FAIL:";
      if (!cert.domination.ok) std::cout << " domination";
      if (!cert.spectrum.ok) std::cout << " spectrum";
      if (!cert.boundMatches) std::cout << " bound";
      std::cout << "\n";
    }
  }
  return cert.pass ? kExitPass : kExitFail;
}

int runEvaluate(int k, const std::string& source, const std::string& filePath,
                const std::string& epsilonStr, const std::optional<std::string>& stayStr,
                bool json) {
  rendezvous::MeetingModel model;
  model.overlook = Rational::fromString(epsilonStr);
  if (model.overlook.sign() < 0 || Rational(1) < model.overlook)
    throw std::invalid_argument("evaluate: --epsilon must lie in [0, 1]");

  std::string label = source;
  std::optional<rendezvous::SimplexStrategy> strategy;
  if (stayStr) {
    const Rational stay = Rational::fromString(*stayStr);
    if (stay.sign() < 0 || Rational(1) < stay)
      throw std::invalid_argument("evaluate: --stay must lie in [0, 1]");
    strategy = rendezvous::parametricAwDistribution(k, stay);
    label = "block(stay=" + stay.str() + ")";
  } else if (source == "aw") {
    strategy = rendezvous::awDistribution(k);
  } else if (source == "uniform") {
    strategy = rendezvous::uniformStrategy(k);
  } else {
    if (filePath.empty())
      throw std::invalid_argument("evaluate: --strategy file requires --file PATH");
    strategy = rendezvous::readStrategyFile(filePath);
    if (strategy->level() != k)
      throw std::invalid_argument("evaluate: strategy file is level " +
                                  std::to_string(strategy->level()) + ", expected " +
                                  std::to_string(k));
    label = filePath;
  }

  const Rational value = rendezvous::quadFormM(*strategy, model);
  std::vector<Rational> tail;
  tail.reserve(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j)
    tail.push_back(rendezvous::tailProb(rendezvous::marginalStrategy(*strategy, j), model));

  if (json) {
    nlohmann::json tails = nlohmann::json::array();
    nlohmann::json tailFloats = nlohmann::json::array();
    for (const Rational& t : tail) {
      tails.push_back(t.str());
      tailFloats.push_back(t.toDouble());
    }
    const nlohmann::json report = {
        {"schema_version", rendezvous::kSchemaVersion},
        {"command", "evaluate"},
        {"inputs",
         {{"k", k}, {"strategy", label}, {"epsilon", model.overlook.str()}}},
        {"value", value.str()},
        {"value_float", value.toDouble()},
        {"tail", tails},
        {"tail_float", tailFloats}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "k: " << k << "\n";
    std::cout << "strategy: " << label << "\n";
    std::cout << "epsilon: " << model.overlook.str() << "\n";
    std::cout << "value: " << value.str() << " (~" << floatStr(value.toDouble()) << ")\n";
    for (int j = 1; j <= k; ++j) {
      const Rational& t = tail[static_cast<std::size_t>(j - 1)];
      std::cout << "tail " << j << ": " << t.str() << " (~" << floatStr(t.toDouble()) << ")\n";
    }
  }
  return kExitPass;
}

int runLp(int k, bool dual, const std::string& sdpaPath, bool json) {
  const Timer timer;
  if (!sdpaPath.empty()) {
    rendezvous::exportSdpa(k, sdpaPath);
    const rendezvous::SdpaProblem parsed = rendezvous::parseSdpa(sdpaPath);
    const rendezvous::SdpaProblem built = rendezvous::buildSdpa(k);
    const bool roundTrip = rendezvous::sdpaSameDecimal(parsed, built);
    if (json) {
      const nlohmann::json report = {{"schema_version", rendezvous::kSchemaVersion},
                                     {"command", "lp"},
                                     {"inputs", {{"k", k}, {"export_sdpa", sdpaPath}}},
                                     {"n_vars", built.nVars},
                                     {"block_struct", built.blockStruct},
                                     {"entries", built.entries.size()},
                                     {"round_trip", roundTrip},
                                     {"elapsed_seconds", timer.seconds()}};
      std::cout << report.dump(2) << "\n";
    } else {
      std::cout << "sdpa: wrote " << sdpaPath << " and " << sdpaPath << ".exact.json\n";
      std::cout << "variables: " << built.nVars << ", blocks: " << built.blockStruct[0] << " "
                << built.blockStruct[1] << ", entries: " << built.entries.size() << "\n";
      std::cout << "parse-back: " << (roundTrip ? "OK" : "MISMATCH") << "\n";
    }
    return roundTrip ? kExitPass : kExitFail;
  }

  const rendezvous::LpProblem problem =
      dual ? rendezvous::buildDualLp(k) : rendezvous::buildPrimalLp(k);
  const rendezvous::LpSolution sol = rendezvous::solveLpExact(problem);
  if (sol.status != rendezvous::LpStatus::Optimal) {
    const char* status =
        sol.status == rendezvous::LpStatus::Infeasible ? "infeasible" : "unbounded";
    if (json) {
      const nlohmann::json report = {{"schema_version", rendezvous::kSchemaVersion},
                                     {"command", "lp"},
                                     {"inputs", {{"k", k}, {"dual", dual}}},
                                     {"status", status}};
      std::cout << report.dump(2) << "\n";
    } else {
      std::cout << "status: " << status << "\n";
    }
    return kExitFail;
  }

  const Rational bound =
      dual ? sol.objective : sol.objective / rendezvous::pow3Rational(k);
  if (json) {
    const nlohmann::json report = {{"schema_version", rendezvous::kSchemaVersion},
                                   {"command", "lp"},
                                   {"inputs", {{"k", k}, {"dual", dual}}},
                                   {"optimum", sol.objective.str()},
                                   {"bound", bound.str()},
                                   {"pivots", sol.pivots},
                                   {"elapsed_seconds", timer.seconds()}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "k: " << k << "\n";
    std::cout << (dual ? "dual optimum: " : "primal optimum: ") << sol.objective.str() << " (~"
              << floatStr(sol.objective.toDouble()) << ")\n";
    std::cout << "bound: " << bound.str() << " (~" << floatStr(bound.toDouble()) << ")\n";
    std::cout << "pivots: " << sol.pivots << "\n";
  }
  return kExitPass;
}

int runSearch(int k, int restarts, std::uint64_t seed, bool json) {
  rendezvous::SearchConfig config;
  config.k = k;
  config.restarts = restarts;
  config.seed = seed;
  const rendezvous::SearchResult result = rendezvous::searchTail(config);

  if (json) {
    const nlohmann::json report = {
        {"schema_version", rendezvous::kSchemaVersion},
        {"command", "search"},
        {"inputs", {{"k", k}, {"restarts", restarts}, {"seed", seed}}},
        {"value", result.exactValue.str()},
        {"value_float", result.floatValue},
        {"restarts_used", result.restartsUsed},
        {"strategy", rendezvous::strategyJson(result.bestStrategy)}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "k: " << k << ", restarts: " << restarts << ", seed: " << seed << "\n";
    std::cout << "best value: " << result.exactValue.str() << " (~"
              << floatStr(result.floatValue) << ")\n";
    std::cout << "strategy (path: probability):\n";
    const rendezvous::PathVector& p = result.bestStrategy.dist;
    for (std::int64_t i = 0; i < p.size(); ++i)
      if (!p[i].isZero())
        std::cout << "  " << pathDigits(k, i) << ": " << p[i].str() << "\n";
  }
  return kExitPass;
}

int runKn(int n, bool optimize, double stay, bool json) {
  const rendezvous::KnAwResult result =
      optimize ? rendezvous::knAwOptimize(n) : rendezvous::knAwEvaluate(n, stay);
  if (json) {
    nlohmann::json report = {{"schema_version", rendezvous::kSchemaVersion},
                             {"command", "kn"},
                             {"inputs", {{"n", n}, {"optimize", optimize}}},
                             {"stay", result.stayProb},
                             {"never_meets", result.neverMeets},
                             {"block_meeting_distribution", result.perBlockMeetDist}};
    if (!optimize) report["inputs"]["stay"] = stay;
    if (!result.neverMeets) report["expected_time"] = result.expectedTime;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "n: " << result.n << "\n";
    std::cout << "stay: " << floatStr(result.stayProb, 6) << "\n";
    if (result.neverMeets)
      std::cout << "expected time: infinite (both players stay forever)\n";
    else
      std::cout << "expected time: " << floatStr(result.expectedTime, 8) << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates, relaxations and searches for the symmetric\n"
               "three-location rendezvous game."};
  app.require_subcommand(1);

  int rc = kExitPass;

  // certify
  int certK = 1;
  int certThreads = defaultThreads();
  bool certJson = false;
  std::string certEmit;
  CLI::App* certify = app.add_subcommand("certify", "verify the optimality certificate at level k");
  certify->add_option("--k", certK, "horizon (number of steps)")
      ->required()
      ->check(CLI::Range(1, 19));
  certify->add_option("--threads", certThreads, "worker threads for the spectrum scan")
      ->check(CLI::Range(1, 64));
  certify->add_flag("--json", certJson, "emit a JSON report");
  certify->add_option("--emit-certificate", certEmit, "write the certificate JSON to this path");
  certify->callback([&] { rc = runCertify(certK, certThreads, certJson, certEmit); });

  // evaluate
  int evalK = 1;
  std::string evalSource = "aw";
  std::string evalFile;
  std::string evalEpsilon = "0";
  std::optional<std::string> evalStay;
  bool evalJson = false;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "expected meeting time and tail sequence of a strategy");
  evaluate->add_option("--k", evalK, "horizon (number of steps)")
      ->required()
      ->check(CLI::Range(1, 19));
  CLI::Option* evalSourceOpt =
      evaluate->add_option("--strategy", evalSource, "strategy source")
          ->check(CLI::IsMember({"aw", "uniform", "file"}));
  evaluate->add_option("--file", evalFile, "strategy JSON path (with --strategy file)");
  evaluate->add_option("--epsilon", evalEpsilon, "overlook weight, a rational like 1/4");
  CLI::Option* evalStayOpt =
      evaluate->add_option("--stay", evalStay,
                           "evaluate the block family at this stay probability (rational)");
  evalStayOpt->excludes(evalSourceOpt);
  evaluate->add_flag("--json", evalJson, "emit a JSON report");
  evaluate->callback(
      [&] { rc = runEvaluate(evalK, evalSource, evalFile, evalEpsilon, evalStay, evalJson); });

  // lp
  int lpK = 1;
  bool lpDual = false;
  std::string lpSdpa;
  bool lpJson = false;
  CLI::App* lp = app.add_subcommand("lp", "exact linear relaxations and the SDPA export");
  lp->add_option("--k", lpK, "horizon (number of steps)")->required()->check(CLI::Range(1, 4));
  lp->add_flag("--dual", lpDual, "solve the distribution-side program instead");
  lp->add_option("--export-sdpa", lpSdpa, "write the semidefinite form here instead of solving");
  lp->add_flag("--json", lpJson, "emit a JSON report");
  lp->callback([&] { rc = runLp(lpK, lpDual, lpSdpa, lpJson); });

  // search
  int searchK = 4;
  int searchRestarts = 100;
  std::uint64_t searchSeed = 1;
  bool searchJson = false;
  CLI::App* search =
      app.add_subcommand("search", "random-restart descent on the no-meet probability");
  search->add_option("--k", searchK, "horizon (number of steps)")
      ->required()
      ->check(CLI::Range(1, 6));
  search->add_option("--restarts", searchRestarts, "descent restarts")
      ->check(CLI::Range(1, 100000));
  search->add_option("--seed", searchSeed, "random seed");
  search->add_flag("--json", searchJson, "emit a JSON report");
  search->callback([&] { rc = runSearch(searchK, searchRestarts, searchSeed, searchJson); });

  // kn
  int knN = 3;
  bool knOptimize = false;
  double knStay = 0.0;
  bool knJson = false;
  CLI::App* kn =
      app.add_subcommand("kn", "block strategies on the complete graph with n locations");
  kn->add_option("--n", knN, "number of locations")->required()->check(CLI::Range(3, 6));
  CLI::Option_group* knMode = kn->add_option_group("mode", "what to compute");
  knMode->add_flag("--optimize", knOptimize, "minimize the expected time over the stay probability");
  knMode->add_option("--stay", knStay, "evaluate at this stay probability")
      ->check(CLI::Range(0.0, 1.0));
  knMode->require_option(1);
  kn->add_flag("--json", knJson, "emit a JSON report");
  kn->callback([&] { rc = runKn(knN, knOptimize, knStay, knJson); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const rendezvous::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return rc;
}
