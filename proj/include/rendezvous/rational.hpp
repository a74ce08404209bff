#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rendezvous {

// Arbitrary-precision rational, always held in canonical form
// (reduced, positive denominator). Thin wrapper over GMP's mpq_class
// that forces canonicalization on every construction path.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit so integers mix into expressions
  Rational(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
  }
  explicit Rational(const mpz_class& n) : q_(n) {}
  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Parses "n" or "n/d" with optional sign, e.g. "-5/27".
  static Rational fromString(const std::string& s) {
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(mpz_class(s));
      return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
  }

  const mpq_class& raw() const { return q_; }
  // Mutable access for in-place GMP calls; callers must leave the value
  // canonical (every mpq_* arithmetic function does).
  mpq_class& raw() { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool isZero() const { return mpq_sgn(q_.get_mpq_t()) == 0; }
  bool isInteger() const { return q_.get_den() == 1; }
  int sign() const { return mpq_sgn(q_.get_mpq_t()); }

  // Nearest double, ties to even. GMP's own conversion truncates toward
  // zero, which breaks decimal round-trips through 17-digit renderings.
  double toDouble() const {
    const int s = sign();
    if (s == 0) return 0.0;
    mpz_class num(q_.get_num());
    mpz_abs(num.get_mpz_t(), num.get_mpz_t());
    mpz_class den(q_.get_den());
    // Scale so the integer quotient carries 53 mantissa bits plus rounding
    // slack, then round the dropped bits by hand (integer conversion would
    // truncate them).
    const long scale = 55 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
    if (scale >= 0)
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(scale));
    else
      mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-scale));
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const long drop = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 53;  // >= 1
    mpz_class low, top, half;
    mpz_tdiv_r_2exp(low.get_mpz_t(), q.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
    mpz_tdiv_q_2exp(top.get_mpz_t(), q.get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
    mpz_setbit(half.get_mpz_t(), static_cast<mp_bitcnt_t>(drop - 1));
    const int c = mpz_cmp(low.get_mpz_t(), half.get_mpz_t());
    if (c > 0 || (c == 0 && (r != 0 || mpz_odd_p(top.get_mpz_t()) != 0))) ++top;
    return std::ldexp(s * top.get_d(), static_cast<int>(drop - scale));
  }

  // Renders "n/d" always (so "3" prints as "3/1"), matching the wire format.
  std::string str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }
  // Human-friendly: integer values lose the "/1".
  std::string pretty() const {
    return isInteger() ? q_.get_num().get_str() : q_.get_str();
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.isZero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c <=> 0;
  }

  // Cheap comparison against a machine integer (no temporary mpq).
  int cmp(long v) const { return mpq_cmp_si(q_.get_mpq_t(), v, 1); }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

// 3^k as a machine integer; valid for k <= 39.
inline std::int64_t pow3(int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

// 3^k as an exact rational (no overflow concerns).
inline Rational pow3Rational(int k) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), 3, static_cast<unsigned long>(k));
  return Rational(z);
}

}  // namespace rendezvous
