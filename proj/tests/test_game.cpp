#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rendezvous/certificate.hpp"
#include "rendezvous/game.hpp"

using namespace rendezvous;

namespace {

PathVector randomStrategyVector(int k, std::mt19937& rng) {
  std::uniform_int_distribution<long> weight(0, 40);
  PathVector p(k);
  long total = 0;
  std::vector<long> w(static_cast<std::size_t>(p.size()));
  for (auto& e : w) {
    e = weight(rng);
    total += e;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (std::int64_t i = 0; i < p.size(); ++i)
    p[i] = Rational(w[static_cast<std::size_t>(i)], total);
  return p;
}

PathVector denseCirculantMul(int k, const PathVector& v, const MeetingModel& model,
                             bool transpose) {
  PathVector out(k);
  for (std::int64_t r = 0; r < v.size(); ++r) {
    Rational acc;
    for (std::int64_t c = 0; c < v.size(); ++c) {
      const std::int64_t diff = transpose ? digitSub(r, c, k) : digitSub(c, r, k);
      acc += mEntry(k, diff, model) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("one-step generators") {
  CHECK(bVector(1) == PathVector(1, {1, 1, 0}));
  CHECK(mVector(1) == PathVector(1, {2, 2, 1}));
  const MeetingModel eps{Rational(1, 4)};
  CHECK(bVector(1, eps) == PathVector(1, {Rational(1), Rational(1), Rational(1, 4)}));
}

TEST_CASE("two-step meeting-time generator matches the printed row") {
  CHECK(mVector(2) == PathVector(2, {3, 3, 2, 3, 3, 2, 1, 1, 1}));
  CHECK(bVector(2) == PathVector(2, {1, 1, 0, 1, 1, 0, 0, 0, 0}));
}

TEST_CASE("single entries agree with the dense generators") {
  const MeetingModel eps{Rational(1, 4)};
  for (const auto& model : {MeetingModel{}, eps}) {
    const PathVector m = mVector(3, model);
    const PathVector b = bVector(3, model);
    for (std::int64_t i = 0; i < 27; ++i) {
      CHECK(mEntry(3, i, model) == m[i]);
      CHECK(bEntry(3, i, model) == b[i]);
    }
  }
}

TEST_CASE("overlook weights discount the first coincidence") {
  const MeetingModel eps{Rational(1, 4)};
  // 7 = (2,1): the coincidence at step one survives with weight 1/4.
  CHECK(mEntry(2, 7, eps) == Rational(3, 2));
  // 5 = (1,2): full first step, discounted second.
  CHECK(mEntry(2, 5, eps) == Rational(9, 4));
  // With overlook weight 1 nobody ever meets: every truncated time is k+1.
  const MeetingModel blind{Rational(1)};
  for (std::int64_t i = 0; i < 9; ++i) CHECK(mEntry(2, i, blind) == Rational(3));
}

TEST_CASE("matvec agrees with the dense circulant") {
  std::mt19937 rng(31);
  const MeetingModel eps{Rational(1, 3)};
  for (const auto& model : {MeetingModel{}, eps})
    for (const bool transpose : {false, true})
      for (int trial = 0; trial < 5; ++trial) {
        PathVector v(2);
        std::uniform_int_distribution<long> entry(-6, 6);
        for (std::int64_t i = 0; i < 9; ++i) v[i] = Rational(entry(rng), 3);
        CHECK(matvecM(v, model, transpose) == denseCirculantMul(2, v, model, transpose));
      }
}

TEST_CASE("matvec of the transpose pairs under the dot product") {
  std::mt19937 rng(37);
  const PathVector u = randomStrategyVector(3, rng);
  const PathVector v = randomStrategyVector(3, rng);
  CHECK(dot(matvecM(u), v) == dot(u, matvecM(v, {}, true)));
}

TEST_CASE("uniform strategy values") {
  CHECK(quadFormM(uniformStrategy(2)) == Rational(19, 9));
  for (int k = 1; k <= 5; ++k) {
    Rational expected = 1;
    for (int j = 0; j < k; ++j) expected *= Rational(2, 3);
    CHECK(tailProb(uniformStrategy(k)) == expected);
  }
  CHECK(quadFormM(uniformStrategy(2), MeetingModel{Rational(1)}) == Rational(3));
}

TEST_CASE("point masses read off the diagonal") {
  SimplexStrategy point{unitFirstVector(3)};
  CHECK(quadFormM(point) == Rational(4));
  CHECK(tailProb(point) == Rational(1));
}

TEST_CASE("block strategy hits the certified values") {
  for (int k = 1; k <= 6; ++k) CHECK(quadFormM(awDistribution(k)) == wValue(k));
  CHECK(tailProb(awDistribution(4)) == Rational(1, 9));
}

TEST_CASE("block strategy support") {
  const SimplexStrategy aw = awDistribution(4);
  std::int64_t nonzero = 0;
  for (std::int64_t i = 0; i < aw.dist.size(); ++i)
    if (!aw.dist[i].isZero()) {
      ++nonzero;
      CHECK(aw.dist[i] == Rational(1, 9));
      // Each two-step block is 00, 12 or 21.
      for (int block = 0; block < 2; ++block) {
        const int d1 = digitAt(i, 2 * block + 1, 4);
        const int d2 = digitAt(i, 2 * block + 2, 4);
        CHECK(((d1 == 0 && d2 == 0) || (d1 == 1 && d2 == 2) || (d1 == 2 && d2 == 1)));
      }
    }
  CHECK(nonzero == 9);
}

TEST_CASE("odd horizons end with a uniform step") {
  const SimplexStrategy aw = awDistribution(3);
  std::int64_t nonzero = 0;
  for (std::int64_t i = 0; i < aw.dist.size(); ++i)
    if (!aw.dist[i].isZero()) {
      ++nonzero;
      CHECK(aw.dist[i] == Rational(1, 9));
    }
  CHECK(nonzero == 9);
  CHECK(quadFormM(aw) == Rational(20, 9));
}

TEST_CASE("marginals forget the trailing steps") {
  CHECK(marginalStrategy(awDistribution(3), 2).dist == awDistribution(2).dist);
  CHECK(marginalStrategy(uniformStrategy(3), 1).dist == uniformStrategy(1).dist);
  const SimplexStrategy whole = marginalStrategy(awDistribution(4), 4);
  CHECK(whole.dist == awDistribution(4).dist);
}

TEST_CASE("parametric family interpolates the block strategy") {
  for (int k = 1; k <= 4; ++k)
    CHECK(parametricAwDistribution(k, Rational(1, 3)).dist == awDistribution(k).dist);
  CHECK(parametricAwValue(2, Rational(1, 3)) == Rational(2));
  // All tours: support {12, 21} with weight 1/2 each.
  CHECK(parametricAwValue(2, Rational(0)) == Rational(9, 4));
  // All stays: the pair never meets.
  CHECK(parametricAwValue(2, Rational(1)) == Rational(3));
  CHECK(parametricAwValue(8, Rational(1, 3)) == wValue(8));
}

TEST_CASE("strategies are validated exactly") {
  CHECK_THROWS_AS(SimplexStrategy(PathVector(1, {Rational(1, 2), Rational(1, 2), Rational(1, 2)})),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      SimplexStrategy(PathVector(1, {Rational(3, 2), Rational(-1, 2), Rational(0)})),
      std::invalid_argument);
  CHECK_THROWS_AS(parametricAwDistribution(2, Rational(2)), std::invalid_argument);
}

TEST_CASE("random strategies never beat the certified bound") {
  std::mt19937 rng(41);
  for (int k = 1; k <= 5; ++k)
    for (int trial = 0; trial < 10; ++trial) {
      SimplexStrategy p{randomStrategyVector(k, rng)};
      CHECK(wValue(k) <= quadFormM(p));
    }
}
