#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rendezvous/eisenstein.hpp"
#include "rendezvous/rational.hpp"

namespace rendezvous {

// Vectors indexed by k-step paths on three locations. A path is a string of
// k base-3 digits; index i encodes digits (d1,...,dk) with d1 most
// significant: i = sum_j dj * 3^(k-j). Digit value conventions for moves are
// owned by the game layer; this layer only provides the indexing algebra.

struct PathVector {
  int level = 0;
  std::vector<Rational> v;

  PathVector() = default;
  explicit PathVector(int k) : level(k), v(static_cast<std::size_t>(pow3(k))) {}
  PathVector(int k, std::vector<Rational> entries) : level(k), v(std::move(entries)) {
    if (static_cast<std::int64_t>(v.size()) != pow3(k))
      throw std::invalid_argument("PathVector: size does not match level");
  }

  std::int64_t size() const { return static_cast<std::int64_t>(v.size()); }
  Rational& operator[](std::int64_t i) { return v[static_cast<std::size_t>(i)]; }
  const Rational& operator[](std::int64_t i) const { return v[static_cast<std::size_t>(i)]; }

  friend bool operator==(const PathVector& x, const PathVector& y) {
    return x.level == y.level && x.v == y.v;
  }
};

struct EisVector {
  int level = 0;
  std::vector<Eisenstein> v;

  EisVector() = default;
  explicit EisVector(int k) : level(k), v(static_cast<std::size_t>(pow3(k))) {}

  std::int64_t size() const { return static_cast<std::int64_t>(v.size()); }
  Eisenstein& operator[](std::int64_t i) { return v[static_cast<std::size_t>(i)]; }
  const Eisenstein& operator[](std::int64_t i) const { return v[static_cast<std::size_t>(i)]; }

  friend bool operator==(const EisVector& x, const EisVector& y) {
    return x.level == y.level && x.v == y.v;
  }
};

// Digit j of index i at level k, 1-based from the most significant digit.
inline int digitAt(std::int64_t i, int j, int k) {
  return static_cast<int>((i / pow3(k - j)) % 3);
}

// Digitwise sums/differences mod 3 (the group law on paths).
inline std::int64_t digitAdd(std::int64_t x, std::int64_t y, int k) {
  std::int64_t out = 0, place = 1;
  for (int j = 0; j < k; ++j) {
    out += ((x + y) % 3) * place;
    x /= 3;
    y /= 3;
    place *= 3;
  }
  return out;
}

inline std::int64_t digitSub(std::int64_t x, std::int64_t y, int k) {
  std::int64_t out = 0, place = 1;
  for (int j = 0; j < k; ++j) {
    out += ((x % 3 - y % 3 + 3) % 3) * place;
    x /= 3;
    y /= 3;
    place *= 3;
  }
  return out;
}

// Swaps digit values 1 and 2 in every position (relabeling the two moves).
inline std::int64_t digitSwap12(std::int64_t x, int k) {
  std::int64_t out = 0, place = 1;
  for (int j = 0; j < k; ++j) {
    const std::int64_t d = x % 3;
    out += (d == 0 ? 0 : 3 - d) * place;
    x /= 3;
    place *= 3;
  }
  return out;
}

inline PathVector onesVector(int k) {
  PathVector out(k);
  for (auto& e : out.v) e = 1;
  return out;
}

// Indicator of the all-zeros path (the first basis vector).
inline PathVector unitFirstVector(int k) {
  PathVector out(k);
  out[0] = 1;
  return out;
}

// Kronecker product: high digits from u, low digits from v.
inline PathVector kronVec(const PathVector& u, const PathVector& w) {
  PathVector out(u.level + w.level);
  std::int64_t idx = 0;
  for (std::int64_t i = 0; i < u.size(); ++i)
    for (std::int64_t j = 0; j < w.size(); ++j) out[idx++] = u[i] * w[j];
  return out;
}

// Entry permutation induced by translating every path by i: out(j) = v(j (+) i).
inline PathVector applyPermutation(std::int64_t i, const PathVector& in) {
  if (i < 0 || i >= in.size())
    throw std::out_of_range("applyPermutation: path index out of range");
  PathVector out(in.level);
  for (std::int64_t j = 0; j < in.size(); ++j) out[j] = in[digitAdd(j, i, in.level)];
  return out;
}

// Entry permutation induced by swapping the two nonzero digit values.
inline PathVector applySymmetry(const PathVector& in) {
  PathVector out(in.level);
  for (std::int64_t j = 0; j < in.size(); ++j) out[j] = in[digitSwap12(j, in.level)];
  return out;
}

inline EisVector applySymmetry(const EisVector& in) {
  EisVector out(in.level);
  for (std::int64_t j = 0; j < in.size(); ++j) out[j] = in[digitSwap12(j, in.level)];
  return out;
}

inline Rational sumEntries(const PathVector& x) {
  Rational s = 0;
  for (const auto& e : x.v) s += e;
  return s;
}

inline Rational dot(const PathVector& x, const PathVector& y) {
  if (x.level != y.level) throw std::invalid_argument("dot: level mismatch");
  Rational s = 0;
  for (std::int64_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace rendezvous
