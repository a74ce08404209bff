#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rendezvous/eisenstein.hpp"
#include "rendezvous/path_vector.hpp"
#include "rendezvous/rational.hpp"
#include "rendezvous/transform.hpp"

using namespace rendezvous;

namespace {

Rational randomRational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return {num(rng), den(rng)};
}

PathVector randomVector(int k, std::mt19937& rng) {
  PathVector out(k);
  for (std::int64_t i = 0; i < out.size(); ++i) out[i] = randomRational(rng);
  return out;
}

EisVector denseTransform(const PathVector& x) {
  const auto vk = denseCharacterMatrix(x.level);
  EisVector out(x.level);
  for (std::int64_t r = 0; r < x.size(); ++r) {
    Eisenstein acc;
    for (std::int64_t c = 0; c < x.size(); ++c)
      acc += scale(x[c], vk[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    out[r] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("rationals are always canonical") {
  CHECK(Rational(6, 4).str() == "3/2");
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational(0, 5).str() == "0/1");
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(4, 2).pretty() == "2");
  CHECK(Rational(1, 3).pretty() == "1/3");
}

TEST_CASE("rational parsing and errors") {
  CHECK(Rational::fromString("-5/27") == Rational(-5, 27));
  CHECK(Rational::fromString("7") == Rational(7));
  CHECK(Rational::fromString("21/14") == Rational(3, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational::fromString("1/2/3"), std::invalid_argument);
}

TEST_CASE("rational arithmetic and order") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(abs(Rational(-2, 3)) == Rational(2, 3));
  CHECK(Rational(5, 2).isInteger() == false);
  CHECK(Rational(-10, 5).isInteger());
  CHECK(Rational(0).isZero());
  CHECK(Rational(-1, 7).sign() == -1);
  CHECK(pow3(4) == 81);
  CHECK(pow3Rational(3) == Rational(27));
  CHECK(Rational(1, 3).toDouble() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("eisenstein units satisfy the cube-root relations") {
  const Eisenstein one = Eisenstein::one();
  const Eisenstein w = Eisenstein::omega();
  const Eisenstein w2 = Eisenstein::omegaSq();
  CHECK(w * w == w2);
  CHECK(w * w2 == one);
  CHECK(w2 * w2 == w);
  CHECK((one + w + w2).isZero());
  CHECK(w.conj() == w2);
  CHECK(w.realPart() == Rational(-1, 2));
  CHECK(w2.realPart() == Rational(-1, 2));
}

TEST_CASE("eisenstein norms and products") {
  const Eisenstein z{Rational(2), Rational(1)};
  CHECK(z.normSq() == Rational(3));
  CHECK(z * z.conj() == Eisenstein{Rational(3), Rational(0)});
  CHECK(Eisenstein{Rational(1), Rational(1)}.normSq() == Rational(1));
  CHECK(z.timesOmega() == z * Eisenstein::omega());
  CHECK(z.timesOmegaSq() == z * Eisenstein::omegaSq());
  CHECK(scale(Rational(1, 2), z) == Eisenstein{Rational(1), Rational(1, 2)});
  CHECK((z - z).isZero());
  CHECK(z.isReal() == false);
  CHECK(Eisenstein{Rational(5, 3), Rational(0)}.isReal());
}

TEST_CASE("digit indexing is most-significant-first") {
  // 5 = (1,2) and 7 = (2,1) at level 2.
  CHECK(digitAt(5, 1, 2) == 1);
  CHECK(digitAt(5, 2, 2) == 2);
  CHECK(digitAt(7, 1, 2) == 2);
  CHECK(digitAdd(5, 7, 2) == 0);
  CHECK(digitSub(0, 5, 2) == 7);
  CHECK(digitSwap12(5, 2) == 7);
  for (std::int64_t i = 0; i < 27; ++i) {
    CHECK(digitSwap12(digitSwap12(i, 3), 3) == i);
    CHECK(digitAdd(i, digitSub(0, i, 3), 3) == 0);
    CHECK(digitSub(digitAdd(i, 11, 3), 11, 3) == i);
  }
}

TEST_CASE("translation action follows the group law") {
  std::mt19937 rng(7);
  const PathVector v = randomVector(2, rng);
  CHECK(applyPermutation(0, v) == v);
  for (std::int64_t i = 0; i < 9; ++i)
    for (std::int64_t j = 0; j < 9; ++j)
      CHECK(applyPermutation(i, applyPermutation(j, v)) ==
            applyPermutation(digitAdd(i, j, 2), v));
}

TEST_CASE("translation transpose pairs with the negated shift") {
  std::mt19937 rng(11);
  const PathVector u = randomVector(2, rng);
  const PathVector v = randomVector(2, rng);
  for (std::int64_t i = 0; i < 9; ++i)
    CHECK(dot(applyPermutation(i, u), v) == dot(u, applyPermutation(digitSub(0, i, 2), v)));
}

TEST_CASE("digit swap conjugates translations") {
  std::mt19937 rng(13);
  const PathVector v = randomVector(2, rng);
  CHECK(applySymmetry(applySymmetry(v)) == v);
  for (std::int64_t i = 0; i < 9; ++i)
    CHECK(applySymmetry(applyPermutation(i, v)) ==
          applyPermutation(digitSwap12(i, 2), applySymmetry(v)));
}

TEST_CASE("kronecker layout puts the left factor on high digits") {
  PathVector e1(1), e2(1);
  e1[1] = 1;
  e2[2] = 1;
  const PathVector k2 = kronVec(e1, e2);
  for (std::int64_t i = 0; i < 9; ++i) CHECK(k2[i] == (i == 5 ? Rational(1) : Rational(0)));
  CHECK(sumEntries(onesVector(3)) == Rational(27));
  CHECK(unitFirstVector(2)[0] == Rational(1));
}

TEST_CASE("fast transform agrees with the dense character matrix") {
  std::mt19937 rng(17);
  for (int k = 1; k <= 3; ++k)
    for (int trial = 0; trial < 10; ++trial) {
      const PathVector x = randomVector(k, rng);
      CHECK(charTransform(x) == denseTransform(x));
    }
}

TEST_CASE("conjugate transform inverts up to the group order") {
  std::mt19937 rng(19);
  const PathVector x = randomVector(3, rng);
  const EisVector back = conjCharTransform(charTransform(x));
  for (std::int64_t i = 0; i < x.size(); ++i) {
    CHECK(back[i].isReal());
    CHECK(back[i].a == Rational(27) * x[i]);
  }
}

TEST_CASE("transform of the first unit vector is flat") {
  const EisVector t = charTransform(unitFirstVector(2));
  for (std::int64_t i = 0; i < 9; ++i) CHECK(t[i] == Eisenstein::one());
}

TEST_CASE("known one-step spectrum") {
  const PathVector m1(1, {Rational(2), Rational(2), Rational(1)});
  const PathVector spec = realSpectrum(m1);
  CHECK(spec[0] == Rational(5));
  CHECK(spec[1] == Rational(1, 2));
  CHECK(spec[2] == Rational(1, 2));
}

TEST_CASE("transform norm identity") {
  std::mt19937 rng(23);
  const PathVector x = randomVector(2, rng);
  const EisVector t = charTransform(x);
  Rational lhs, rhs;
  for (std::int64_t i = 0; i < x.size(); ++i) {
    lhs += t[i].normSq();
    rhs += x[i] * x[i];
  }
  CHECK(lhs == Rational(9) * rhs);
}

TEST_CASE("digit swap commutes with the real spectrum") {
  std::mt19937 rng(29);
  const PathVector x = randomVector(2, rng);
  CHECK(realSpectrum(applySymmetry(x)) == applySymmetry(realSpectrum(x)));
}

TEST_CASE("dense character matrix is capped") {
  CHECK_THROWS_AS(denseCharacterMatrix(4), std::invalid_argument);
  CHECK_THROWS_AS(PathVector(2, {Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(applyPermutation(9, onesVector(2)), std::out_of_range);
}
