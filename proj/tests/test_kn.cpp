#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "rendezvous/kn.hpp"

using namespace rendezvous;

TEST_CASE("three locations at the balanced stay probability") {
  const auto value = knAwValueExact(3, Rational(1, 3));
  REQUIRE(value.has_value());
  CHECK(*value == Rational(5, 2));
}

TEST_CASE("optimizing three locations recovers the balanced block") {
  const KnAwResult best = knAwOptimize(3);
  CHECK(best.n == 3);
  CHECK(std::abs(best.stayProb - 1.0 / 3.0) < 1e-4);
  CHECK(std::abs(best.expectedTime - 2.5) < 1e-4);
  CHECK_FALSE(best.neverMeets);
}

TEST_CASE("staying forever never meets") {
  CHECK(knAwEvaluate(3, 1.0).neverMeets);
  CHECK(knAwEvaluate(5, 1.0).neverMeets);
  CHECK_FALSE(knAwValueExact(4, Rational(1)).has_value());
}

TEST_CASE("float evaluation tracks the exact value") {
  for (int n = 3; n <= 6; ++n) {
    const auto exact = knAwValueExact(n, Rational(1, 4));
    REQUIRE(exact.has_value());
    const KnAwResult approx = knAwEvaluate(n, 0.25);
    CHECK(std::abs(approx.expectedTime - exact->toDouble()) < 1e-9);
  }
}

TEST_CASE("block meeting weights form a sub-distribution") {
  for (int n = 3; n <= 6; ++n) {
    const KnBlockCoeffs coeffs = knBlockCoeffs(n);
    CHECK(static_cast<int>(coeffs.qt.size()) == n - 1);
    CHECK(static_cast<int>(coeffs.tt.size()) == n - 1);
    for (const Rational& q : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
      Rational total;
      for (int t = 0; t < n - 1; ++t) {
        const Rational stepProb = coeffs.qt[static_cast<std::size_t>(t)] * q * (Rational(1) - q) +
                                  coeffs.tt[static_cast<std::size_t>(t)] * (Rational(1) - q) *
                                      (Rational(1) - q);
        CHECK(stepProb.sign() >= 0);
        total += stepProb;
      }
      CHECK(total <= Rational(1));
    }
  }
}

TEST_CASE("per-block distribution is reported") {
  const KnAwResult r = knAwEvaluate(4, 0.25);
  CHECK(r.perBlockMeetDist.size() == 3);
  double total = 0;
  for (const double p : r.perBlockMeetDist) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(total <= 1.0 + 1e-12);
}

TEST_CASE("four locations optimum is sharper than the balanced block") {
  const KnAwResult best = knAwOptimize(4);
  const auto balanced = knAwValueExact(4, Rational(1, 3));
  REQUIRE(balanced.has_value());
  CHECK(best.expectedTime <= balanced->toDouble() + 1e-12);
  CHECK(best.stayProb > 0.0);
  CHECK(best.stayProb < 1.0);
}

TEST_CASE("location counts outside the cap are rejected") {
  CHECK_THROWS_AS(knBlockCoeffs(2), std::invalid_argument);
  CHECK_THROWS_AS(knBlockCoeffs(7), std::invalid_argument);
  CHECK_THROWS_AS(knAwOptimize(7), std::invalid_argument);
}
