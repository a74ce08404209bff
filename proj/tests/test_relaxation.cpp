#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rendezvous/certificate.hpp"
#include "rendezvous/game.hpp"
#include "rendezvous/lp.hpp"
#include "rendezvous/relaxation.hpp"

using namespace rendezvous;

TEST_CASE("one-step spectrum matrix") {
  const auto u1 = uMatrix(1);
  REQUIRE(u1.size() == 3);
  const Rational h(-1, 2);
  CHECK(u1[0] == std::vector<Rational>{1, 1, 1});
  CHECK(u1[1] == std::vector<Rational>{1, h, h});
  CHECK(u1[2] == std::vector<Rational>{1, h, h});
  CHECK_THROWS_AS(uMatrix(5), std::invalid_argument);
}

TEST_CASE("primal relaxation optima") {
  const LpSolution s1 = solveLpExact(buildPrimalLp(1));
  REQUIRE(s1.status == LpStatus::Optimal);
  CHECK(s1.objective == Rational(5));

  const LpSolution s2 = solveLpExact(buildPrimalLp(2));
  REQUIRE(s2.status == LpStatus::Optimal);
  CHECK(s2.objective == Rational(18));
  CHECK(lpPointFeasible(buildPrimalLp(2), s2.x));
  // Strong duality on the returned multipliers.
  const LpProblem p2 = buildPrimalLp(2);
  Rational dualValue;
  for (std::size_t i = 0; i < p2.rows.size(); ++i) dualValue += s2.duals[i] * p2.rows[i].rhs;
  CHECK(dualValue == s2.objective);
}

TEST_CASE("certificate generators are optimal for the primal relaxation") {
  for (int k = 1; k <= 3; ++k) {
    const LpProblem prob = buildPrimalLp(k);
    CHECK(lpPointFeasible(prob, xVector(k).v));
    CHECK(xSum(k) == wValue(k) * pow3Rational(k));
  }
}

TEST_CASE("distribution-side optima") {
  const LpSolution s1 = solveLpExact(buildDualLp(1));
  REQUIRE(s1.status == LpStatus::Optimal);
  CHECK(s1.objective == Rational(5, 3));

  const LpSolution s2 = solveLpExact(buildDualLp(2));
  REQUIRE(s2.status == LpStatus::Optimal);
  CHECK(s2.objective == Rational(2));
  // The witness is a genuine swap-invariant distribution.
  Rational sum;
  for (std::int64_t i = 0; i < 9; ++i) {
    CHECK(s2.x[static_cast<std::size_t>(i)].sign() >= 0);
    CHECK(s2.x[static_cast<std::size_t>(i)] ==
          s2.x[static_cast<std::size_t>(digitSwap12(i, 2))]);
    sum += s2.x[static_cast<std::size_t>(i)];
  }
  CHECK(sum == Rational(1));
}

TEST_CASE("block strategy autocorrelation is dual feasible at level two") {
  // The 2-step block strategy sits on {00, 12, 21}; its difference
  // distribution puts weight 1/3 on each of the same three paths.
  std::vector<Rational> y(9);
  y[0] = Rational(1, 3);
  y[5] = Rational(1, 3);
  y[7] = Rational(1, 3);
  const LpProblem dual = buildDualLp(2);
  CHECK(lpPointFeasible(dual, y));
  Rational objective;
  const PathVector m = mVector(2);
  for (std::int64_t i = 0; i < 9; ++i) objective += y[static_cast<std::size_t>(i)] * m[i];
  CHECK(objective == Rational(2));
}

TEST_CASE("simplex handles a classic degenerate program") {
  // Beale's example: cycles under naive pivoting, solved exactly here.
  LpProblem beale;
  beale.sense = Sense::Maximize;
  beale.c = {Rational(3, 4), Rational(-150), Rational(1, 50), Rational(-6)};
  beale.bounds.assign(4, VarBound::NonNeg);
  beale.rows.push_back({{Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)},
                        Rel::Le,
                        Rational(0)});
  beale.rows.push_back({{Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)},
                        Rel::Le,
                        Rational(0)});
  beale.rows.push_back({{Rational(0), Rational(0), Rational(1), Rational(0)}, Rel::Le,
                        Rational(1)});
  const LpSolution sol = solveLpExact(beale);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Rational(1, 20));
  CHECK(lpPointFeasible(beale, sol.x));
}

TEST_CASE("infeasible programs come with a refutation") {
  LpProblem prob;
  prob.c = {Rational(1)};
  prob.bounds = {VarBound::NonNeg};
  prob.rows.push_back({{Rational(1)}, Rel::Le, Rational(0)});
  prob.rows.push_back({{Rational(1)}, Rel::Ge, Rational(1)});
  const LpSolution sol = solveLpExact(prob);
  REQUIRE(sol.status == LpStatus::Infeasible);
  CHECK(lpFarkasValid(prob, sol.farkas));
}

TEST_CASE("unbounded programs come with a ray") {
  LpProblem prob;
  prob.c = {Rational(1)};
  prob.bounds = {VarBound::NonNeg};
  prob.rows.push_back({{Rational(1)}, Rel::Ge, Rational(1)});
  const LpSolution sol = solveLpExact(prob);
  REQUIRE(sol.status == LpStatus::Unbounded);
  CHECK(lpPointFeasible(prob, sol.x));
  CHECK(lpRayValid(prob, sol.ray));
}

TEST_CASE("equalities, minimization and free variables") {
  LpProblem eq;
  eq.c = {Rational(2), Rational(3)};
  eq.bounds = {VarBound::NonNeg, VarBound::NonNeg};
  eq.rows.push_back({{Rational(1), Rational(1)}, Rel::Eq, Rational(1)});
  const LpSolution se = solveLpExact(eq);
  REQUIRE(se.status == LpStatus::Optimal);
  CHECK(se.objective == Rational(3));

  LpProblem fr;
  fr.sense = Sense::Minimize;
  fr.c = {Rational(1)};
  fr.bounds = {VarBound::Free};
  fr.rows.push_back({{Rational(1)}, Rel::Ge, Rational(-7, 2)});
  const LpSolution sf = solveLpExact(fr);
  REQUIRE(sf.status == LpStatus::Optimal);
  CHECK(sf.objective == Rational(-7, 2));
  CHECK(sf.x[0] == Rational(-7, 2));
}

TEST_CASE("malformed programs are rejected") {
  LpProblem empty;
  CHECK_THROWS_AS(solveLpExact(empty), std::invalid_argument);
  LpProblem ragged;
  ragged.c = {Rational(1)};
  ragged.bounds = {VarBound::NonNeg};
  ragged.rows.push_back({{Rational(1), Rational(2)}, Rel::Le, Rational(1)});
  CHECK_THROWS_AS(solveLpExact(ragged), std::invalid_argument);
}

TEST_CASE("streaming feasibility check certifies the generator") {
  CHECK(verifyFeasibleBound(8, xVector(8)) == Rational(67, 27));
  const FeasibilityReport rep = checkFeasibleBound(5, xVector(5));
  CHECK(rep.feasible);
  CHECK(rep.bound == Rational(65, 27));
  CHECK(rep.dominationViolation == -1);
  CHECK(rep.spectrumViolation == -1);
}

TEST_CASE("streaming feasibility check rejects the meeting-time generator") {
  const FeasibilityReport rep = checkFeasibleBound(2, mVector(2));
  CHECK_FALSE(rep.feasible);
  CHECK(rep.bound == Rational(19, 9));
  CHECK(rep.dominationViolation == -1);
  CHECK(rep.spectrumViolation >= 0);
  CHECK_THROWS_AS(verifyFeasibleBound(2, mVector(2)), std::domain_error);
}

TEST_CASE("streaming feasibility check pins the first domination breach") {
  PathVector x = xVector(3);
  x[5] = Rational(7, 2);  // above the meeting-time entry 3 at this path
  const FeasibilityReport rep = checkFeasibleBound(3, x);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.dominationViolation == 5);
  const PathVector zero(3);
  const FeasibilityReport zeroRep = checkFeasibleBound(3, zero);
  CHECK(zeroRep.feasible);
  CHECK(zeroRep.bound == Rational(0));
}

TEST_CASE("semidefinite export structure at level one") {
  const SdpaProblem sdpa = buildSdpa(1);
  CHECK(sdpa.nVars == 9);
  CHECK(sdpa.blockStruct == std::vector<int>{3, -9});
  REQUIRE(sdpa.c.size() == 9);
  for (const auto& c : sdpa.c) CHECK(c == Rational(-1, 3));
  CHECK(sdpa.entries.size() == 27);
  // Constant matrix carries the meeting-time bounds on the slack diagonal.
  const PathVector m = mVector(1);
  for (const auto& e : sdpa.entries)
    if (e.matrix == 0) {
      CHECK(e.block == 2);
      CHECK(e.row == e.col);
      const std::int64_t p = (e.row - 1) / 3, q = (e.row - 1) % 3;
      CHECK(e.value == -m[digitSub(q, p, 1)]);
    }
  CHECK_THROWS_AS(buildSdpa(4), std::invalid_argument);
}

TEST_CASE("sdpa files round-trip") {
  for (int k = 1; k <= 2; ++k) {
    const std::string path = "sdpa_roundtrip_k" + std::to_string(k) + ".dat-s";
    exportSdpa(k, path);
    const SdpaProblem parsed = parseSdpa(path);
    const SdpaProblem built = buildSdpa(k);
    CHECK(sdpaSameDecimal(parsed, built));

    // The sidecar is lossless.
    std::ifstream side(path + ".exact.json");
    REQUIRE(side.good());
    nlohmann::json j;
    side >> j;
    CHECK(j.at("n_vars").get<int>() == built.nVars);
    REQUIRE(j.at("c").size() == built.c.size());
    for (std::size_t i = 0; i < built.c.size(); ++i)
      CHECK(j.at("c")[i].get<std::string>() == built.c[i].str());
    REQUIRE(j.at("entries").size() == built.entries.size());
    for (std::size_t i = 0; i < built.entries.size(); ++i)
      CHECK(j.at("entries")[i][4].get<std::string>() == built.entries[i].value.str());

    std::remove(path.c_str());
    std::remove((path + ".exact.json").c_str());
  }
}

TEST_CASE("relaxation builders enforce their caps") {
  CHECK_THROWS_AS(buildPrimalLp(5), std::invalid_argument);
  CHECK_THROWS_AS(buildDualLp(5), std::invalid_argument);
  CHECK_THROWS_AS(parseSdpa("no_such_file.dat-s"), std::runtime_error);
}
