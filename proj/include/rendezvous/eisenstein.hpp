#pragma once

#include <string>

#include "rendezvous/rational.hpp"

namespace rendezvous {

// Element of Q(omega), omega a primitive cube root of unity, stored in the
// basis {1, omega}: z = a + b*omega with rational a, b. All arithmetic stays
// in this basis via omega^2 = -1 - omega; no radicals ever appear.
struct Eisenstein {
  Rational a;  // coefficient of 1
  Rational b;  // coefficient of omega

  Eisenstein() = default;
  Eisenstein(Rational re1, Rational romega) : a(std::move(re1)), b(std::move(romega)) {}

  static Eisenstein one() { return {1, 0}; }
  static Eisenstein omega() { return {0, 1}; }
  static Eisenstein omegaSq() { return {-1, -1}; }  // omega^2 = -1 - omega

  bool isZero() const { return a.isZero() && b.isZero(); }
  bool isReal() const { return b.isZero(); }

  // Complex conjugate: conj(omega) = omega^2, so conj(a + b*omega) = (a-b) - b*omega.
  Eisenstein conj() const { return {a - b, -b}; }

  // Real part under the standard embedding omega = (-1 + i*sqrt(3))/2.
  Rational realPart() const { return a - b / 2; }

  // Squared modulus |a + b*omega|^2 = a^2 - a*b + b^2 (always rational).
  Rational normSq() const { return a * a - a * b + b * b; }

  Eisenstein& operator+=(const Eisenstein& o) { a += o.a; b += o.b; return *this; }
  Eisenstein& operator-=(const Eisenstein& o) { a -= o.a; b -= o.b; return *this; }

  friend Eisenstein operator+(Eisenstein x, const Eisenstein& y) { x += y; return x; }
  friend Eisenstein operator-(Eisenstein x, const Eisenstein& y) { x -= y; return x; }
  friend Eisenstein operator-(const Eisenstein& x) { return {-x.a, -x.b}; }

  // (a1 + b1 w)(a2 + b2 w) = a1 a2 - b1 b2 + (a1 b2 + a2 b1 - b1 b2) w.
  friend Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
    const Rational bb = x.b * y.b;
    return {x.a * y.a - bb, x.a * y.b + x.b * y.a - bb};
  }

  friend bool operator==(const Eisenstein& x, const Eisenstein& y) {
    return x.a == y.a && x.b == y.b;
  }

  // Multiplication by omega: (a, b) -> (-b, a - b).
  Eisenstein timesOmega() const { return {-b, a - b}; }
  // Multiplication by omega^2: (a, b) -> (b - a, -a).
  Eisenstein timesOmegaSq() const { return {b - a, -a}; }

  std::string pretty() const {
    if (b.isZero()) return a.pretty();
    return a.pretty() + (b.sign() < 0 ? " - " : " + ") + rendezvous::abs(b).pretty() + "w";
  }
};

inline Eisenstein scale(const Rational& c, const Eisenstein& z) { return {c * z.a, c * z.b}; }

}  // namespace rendezvous
